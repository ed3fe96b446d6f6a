#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "predt/controllers.hpp"
#include "predt/presets.hpp"
#include "predt/quadrature.hpp"
#include "predt/sigpow.hpp"
#include "predt/sim.hpp"

namespace {

void BM_sigpow(benchmark::State& state) {
  // dependent chain so the latency is measured; the map escapes to infinity
  // from any |x| > 1, hence the reset
  double x = 0.37;
  for (auto _ : state) {
    x = 1.1 * predt::sigpow(x, 5.0 / 3.0) - 0.4;
    if (std::fabs(x) > 1.0) x = 0.37;
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_sigpow);

void BM_em_step_example41(benchmark::State& state) {
  const auto p = predt::make_preset("example41");
  const auto u = p.controller_for_bound(2.0);
  std::vector<double> x = {1.0};
  std::vector<double> fx(1), gx(1);
  const double dt = 1e-4, dw = 3e-3;
  for (auto _ : state) {
    const double uu = u.eval(x);
    p.closed.drift(x, uu, fx);
    p.closed.diffusion(x, uu, gx);
    x[0] += fx[0] * dt + gx[0] * dw;
    if (!std::isfinite(x[0]) || std::fabs(x[0]) > 10.0) x[0] = 1.0;
    benchmark::DoNotOptimize(x[0]);
  }
}
BENCHMARK(BM_em_step_example41);

void BM_settle_example41(benchmark::State& state) {
  const auto p = predt::make_preset("example41");
  const auto u = p.controller_for_bound(2.0);
  predt::SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_max = 2.0;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.seed = seed++;
    const auto res = predt::settle_time(p.closed, u, std::vector<double>{1.0}, cfg);
    benchmark::DoNotOptimize(res.time);
  }
}
BENCHMARK(BM_settle_example41);

void BM_halfline_quadrature(benchmark::State& state) {
  const auto f = [](double s) { return 1.0 / (std::sqrt(M_PI) * std::sqrt(s) * std::exp(s)); };
  for (auto _ : state) {
    const auto r = predt::integrate_positive_halfline(f, 1e-9);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_halfline_quadrature);

}  // namespace

BENCHMARK_MAIN();
