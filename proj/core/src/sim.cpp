#include "predt/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "predt/errors.hpp"

namespace predt {
namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Standard-normal stream: xoshiro256++ seeded through splitmix64, fully
/// specified so identical seeds give identical bytes on any platform.
/// Box-Muller on 53-bit uniforms.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : s_(seed) {
    // scramble so nearby seeds (base ^ index) decorrelate
    for (int i = 0; i < 4; ++i) state_[i] = splitmix64(s_);
  }

  double next() {
    if (have_) {
      have_ = false;
      return cached_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi_v<double> * u2;
    cached_ = r * std::sin(a);
    have_ = true;
    return r * std::cos(a);
  }

 private:
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  std::uint64_t next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_ = 0;
  std::uint64_t state_[4] = {};
  double cached_ = 0.0;
  bool have_ = false;
};

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

bool all_finite(std::span<const double> x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

void validate(const SimConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw domain_error("sim: need dt > 0");
  if (!(cfg.t_max > cfg.dt)) throw domain_error("sim: need t_max > dt");
  if (cfg.eps_absorb < 0.0) throw domain_error("sim: need eps_absorb >= 0");
  if (!(cfg.x_guard > 0.0)) throw domain_error("sim: need x_guard > 0");
}

/// Shared stepping loop. `record(t, x, u)` sees every kept grid point;
/// states after absorption are exact zeros and are recorded without touching
/// the system or the controller. With FillTail = false the loop stops at
/// absorption instead of emitting the zero tail.
template <bool FillTail, class Record>
SettleResult run_path(const ItoSystem& sys, const Controller& u,
                      std::span<const double> x0, const SimConfig& cfg,
                      Record&& record) {
  validate(cfg);
  const int n = sys.dim;
  if ((int)x0.size() != n) throw domain_error("sim: x0 has wrong dimension");
  if (!all_finite(x0)) throw domain_error("sim: x0 must be finite");

  const double cap = [&u] {
    auto it = u.params.find("u_max");
    return it == u.params.end() ? std::numeric_limits<double>::infinity()
                                : it->second;
  }();

  NormalStream rng(cfg.seed);
  const double sqrt_dt = std::sqrt(cfg.dt);
  const long steps = (long)std::floor(cfg.t_max / cfg.dt + 1e-9);

  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> f(n), g(n);
  const std::vector<double> zero(n, 0.0);

  SettleResult res;
  bool absorbed = norm2(x) <= cfg.eps_absorb;
  if (absorbed) res.time = 0.0;

  for (long k = 0; k <= steps; ++k) {
    const double t = double(k) * cfg.dt;
    if (absorbed) {
      if (!FillTail) break;
      record(t, zero, 0.0);
      continue;
    }
    const double uk = u.eval(x);
    if (std::fabs(uk) >= cap) res.saturated = true;
    record(t, x, uk);
    if (k == steps) break;

    sys.drift(x, uk, f);
    sys.diffusion(x, uk, g);
    const double dw = rng.next() * sqrt_dt;
    for (int i = 0; i < n; ++i) x[i] += f[i] * cfg.dt + g[i] * dw;

    if (!all_finite(x) || norm2(x) > cfg.x_guard) {
      res.status = SimStatus::diverged;
      res.time = cfg.t_max;
      return res;
    }
    if (norm2(x) <= cfg.eps_absorb) {
      absorbed = true;
      res.time = double(k + 1) * cfg.dt;
      std::fill(x.begin(), x.end(), 0.0);
    }
  }
  res.status = absorbed ? SimStatus::settled : SimStatus::unsettled;
  if (!absorbed) res.time = cfg.t_max;
  return res;
}

}  // namespace

const char* to_string(SimStatus s) {
  switch (s) {
    case SimStatus::settled: return "settled";
    case SimStatus::unsettled: return "unsettled";
    case SimStatus::diverged: return "diverged";
  }
  return "unknown";
}

std::vector<double> wiener_increments(std::uint64_t seed, std::size_t n, double dt) {
  if (!(dt > 0.0)) throw domain_error("wiener_increments: need dt > 0");
  NormalStream rng(seed);
  const double sqrt_dt = std::sqrt(dt);
  std::vector<double> out(n);
  for (auto& v : out) v = rng.next() * sqrt_dt;
  return out;
}

Trajectory simulate(const ItoSystem& sys, const Controller& u,
                    std::span<const double> x0, const SimConfig& cfg) {
  validate(cfg);
  Trajectory traj;
  const long steps = (long)std::floor(cfg.t_max / cfg.dt + 1e-9);
  const long reserve = std::min(steps + 1, (long)1 << 22);
  traj.times.reserve(reserve);
  traj.states.reserve(reserve);
  traj.controls.reserve(reserve);
  const SettleResult res = run_path<true>(
      sys, u, x0, cfg, [&traj](double t, const std::vector<double>& x, double uk) {
        traj.times.push_back(t);
        traj.states.push_back(x);
        traj.controls.push_back(uk);
      });
  traj.status = res.status;
  traj.saturated = res.saturated;
  if (res.status == SimStatus::settled) traj.settling_time = res.time;
  return traj;
}

SettleResult settle_time(const ItoSystem& sys, const Controller& u,
                         std::span<const double> x0, const SimConfig& cfg) {
  return run_path<false>(sys, u, x0, cfg,
                         [](double, const std::vector<double>&, double) {});
}

}  // namespace predt
