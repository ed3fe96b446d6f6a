#include "predt/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "predt/errors.hpp"

namespace predt {
namespace {

constexpr double kZ95 = 1.959963984540054;

void validate(const RunConfig& cfg) {
  if (cfg.n_runs < 1) throw domain_error("estimate_settling: need n_runs >= 1");
  if (!(cfg.bound > 0.0)) throw domain_error("estimate_settling: need bound > 0");
  if (!cfg.controller_for_bound)
    throw domain_error("estimate_settling: missing controller factory");
  if (cfg.x0_set.empty()) throw domain_error("estimate_settling: empty x0 set");
  for (const auto& x0 : cfg.x0_set)
    if ((int)x0.size() != cfg.sys.dim)
      throw domain_error("estimate_settling: x0 dimension mismatch");
}

}  // namespace

SettlingStats estimate_settling(const RunConfig& cfg,
                                std::vector<RunSample>* samples) {
  validate(cfg);
  SimConfig sim = cfg.sim;
  if (sim.t_max <= 0.0) sim.t_max = 3.0 * cfg.bound;
  const Controller u = cfg.controller_for_bound(cfg.bound);

  const int n = cfg.n_runs;
  std::vector<SettleResult> results(n);
  auto worker_range = [&](int lo, int hi) {
    SimConfig local = sim;
    for (int i = lo; i < hi; ++i) {
      local.seed = cfg.base_seed ^ std::uint64_t(i);
      results[i] = settle_time(cfg.sys, u, cfg.x0_set[i % cfg.x0_set.size()], local);
    }
  };

  int threads = cfg.threads;
  if (threads <= 0) threads = (int)std::thread::hardware_concurrency();
  threads = std::clamp(threads, 1, n);
  if (threads == 1) {
    worker_range(0, n);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int lo = t * chunk;
      const int hi = std::min(n, lo + chunk);
      if (lo < hi) pool.emplace_back(worker_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  SettlingStats st;
  st.n_runs = n;
  st.bound = cfg.bound;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const SettleResult& r = results[i];
    switch (r.status) {
      case SimStatus::settled: ++st.n_settled; break;
      case SimStatus::unsettled: ++st.n_unsettled; break;
      case SimStatus::diverged: ++st.n_diverged; break;
    }
    sum += r.time;
    sum2 += r.time * r.time;
    st.max = std::max(st.max, r.time);
  }
  if (st.n_diverged == n) {
    std::ostringstream msg;
    msg << "estimate_settling: all " << n << " runs diverged (bound " << cfg.bound
        << ", dt " << sim.dt << ", first seed " << (cfg.base_seed ^ 0ULL) << ")";
    throw estimation_error(msg.str());
  }
  if (samples) {
    for (int i = 0; i < n; ++i) {
      samples->push_back(
          {i, cfg.base_seed ^ std::uint64_t(i), results[i].status, results[i].time});
    }
  }

  st.mean = sum / n;
  const double var = n > 1 ? std::max(0.0, (sum2 - n * st.mean * st.mean) / (n - 1)) : 0.0;
  st.std_err = std::sqrt(var / n);
  st.ci_lo = st.mean - kZ95 * st.std_err;
  st.ci_hi = st.mean + kZ95 * st.std_err;
  st.censored = st.n_unsettled > 0;
  st.bound_satisfied = st.mean <= cfg.bound && st.n_diverged == 0 && !st.censored;
  return st;
}

std::vector<SweepRow> sweep_bound(const RunConfig& cfg,
                                  std::span<const double> bounds) {
  for (double b : bounds)
    if (!(b > 0.0)) throw domain_error("sweep_bound: bounds must be positive");
  std::vector<SweepRow> rows;
  rows.reserve(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    RunConfig row_cfg = cfg;
    row_cfg.bound = bounds[i];
    row_cfg.base_seed = cfg.base_seed + i * 0x9E3779B97F4A7C15ULL;
    SweepRow row;
    row.bound = bounds[i];
    try {
      row.stats = estimate_settling(row_cfg);
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace predt
