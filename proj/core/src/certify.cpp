#include "predt/certify.hpp"

#include <cmath>
#include <limits>

#include "predt/errors.hpp"
#include "predt/sigpow.hpp"

namespace predt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::vector<std::vector<double>> grid_1d(double lo, double hi, int n,
                                         double exclude_radius) {
  if (n < 2 || !(hi > lo)) throw domain_error("grid_1d: need n >= 2 and hi > lo");
  std::vector<std::vector<double>> g;
  g.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * double(i) / double(n - 1);
    if (std::fabs(x) < exclude_radius) continue;
    g.push_back({x});
  }
  return g;
}

IntegralResult beta_integral(const std::function<double(double)>& beta,
                             double quad_tol) {
  return integrate_positive_halfline([&beta](double s) { return 1.0 / beta(s); },
                                     quad_tol);
}

CertReport check_drift_condition(const ItoSystem& sys, const Controller& u,
                                 const LyapunovSpec& spec,
                                 std::span<const std::vector<double>> grid,
                                 double tol, bool use_fd, double quad_tol) {
  if (!(spec.alpha > 0.0)) throw domain_error("check_drift_condition: need alpha > 0");
  CertReport rep;
  rep.grid_size = grid.size();
  double worst = -kInf;
  for (const auto& x : grid) {
    double rel;
    try {
      const double lv = use_fd ? generator_value_fd(sys, spec.V, u, x)
                               : generator_value(sys, spec.V, u, x);
      const double resid = lv + spec.beta(spec.V.value(x)) / spec.alpha;
      rel = resid / (1.0 + std::fabs(lv));
    } catch (const evaluation_error&) {
      ++rep.n_flagged;
      continue;
    }
    if (!std::isfinite(rel)) {
      ++rep.n_flagged;
      continue;
    }
    if (rel > worst) {
      worst = rel;
      rep.argmax_state.assign(x.begin(), x.end());
    }
  }
  rep.max_residual = grid.empty() ? 0.0 : worst;
  rep.drift_ok = rep.n_flagged == 0 && rep.max_residual <= tol;

  const IntegralResult ir = beta_integral(spec.beta, quad_tol);
  rep.integral = ir.value;
  rep.integral_err = ir.error;
  rep.integral_unbounded = ir.unbounded;
  rep.integral_ok = !ir.unbounded && ir.value <= 1.0 + quad_tol;
  rep.verdict = rep.drift_ok && rep.integral_ok;
  return rep;
}

std::function<double(double)> rate_from_cdf(std::function<double(double)> F,
                                            std::function<double(double)> dF,
                                            double p) {
  if (!F || !dF) throw domain_error("rate_from_cdf: need F and dF");
  if (!(p >= 0.0 && p < 1.0)) throw domain_error("rate_from_cdf: need p in [0,1)");
  if (std::fabs(F(0.0)) > 1e-12) throw domain_error("rate_from_cdf: F(0) must be 0");
  for (int i = -40; i <= 10; ++i) {
    const double s = std::pow(10.0, 0.2 * i);  // 1e-8 .. 1e2: exp tails keep dF normal here
    if (!(dF(s) > 0.0))
      throw domain_error("rate_from_cdf: derivative not positive at sampled point");
    const double v = F(s);
    if (!(v >= 0.0) || v > 1.0 + 1e-9)
      throw domain_error("rate_from_cdf: F leaves [0,1] at sampled point");
  }
  return [F = std::move(F), dF = std::move(dF), p](double s) {
    const double num = p == 0.0 ? 1.0 : std::pow(std::max(F(s), 0.0), p);
    return num / ((1.0 - p) * dF(s));
  };
}

CertReport bounded_drift_check(const ItoSystem& sys, const Controller& u,
                               const ScalarField& W, double alpha,
                               std::span<const std::vector<double>> grid,
                               double tol) {
  if (!(alpha > 0.0)) throw domain_error("bounded_drift_check: need alpha > 0");
  ScalarField V;
  V.value = [Wv = W.value](std::span<const double> x) {
    return -std::log1p(-Wv(x));
  };

  CertReport rep;
  rep.grid_size = grid.size();
  double worst = -kInf;
  for (const auto& x : grid) {
    const double w = W.value(x);
    if (!(w >= 0.0 && w < 1.0))
      throw domain_error("bounded_drift_check: W outside [0,1) on grid");
    double rel;
    try {
      const double lw = generator_value_fd(sys, W, u, x);
      const double r1 = lw + 1.0 / alpha;
      const double lv = generator_value_fd(sys, V, u, x);
      const double r2 = (lv + std::exp(V.value(x)) / alpha) / (1.0 + std::fabs(lv));
      rel = std::max(r1, r2);
    } catch (const evaluation_error&) {
      ++rep.n_flagged;
      continue;
    }
    if (!std::isfinite(rel)) {
      ++rep.n_flagged;
      continue;
    }
    if (rel > worst) {
      worst = rel;
      rep.argmax_state.assign(x.begin(), x.end());
    }
  }
  rep.max_residual = grid.empty() ? 0.0 : worst;
  rep.drift_ok = rep.n_flagged == 0 && rep.max_residual <= tol;
  rep.integral_ok = true;  // no rate function in this form
  rep.verdict = rep.drift_ok;
  return rep;
}

double step_energy(const BacksteppingCascade& cascade, int j,
                   std::span<const double> x) {
  if (j < 0 || j >= cascade.dim()) throw domain_error("step_energy: bad step index");
  const GainSet& gs = cascade.gains();
  const double rb = gs.r_bar;
  const double rj = gs.r[j];
  const double e = (4.0 * rb - gs.kappa - rj) / rb;
  const CascadeState cs = cascade.evaluate(x);
  const double xp = sigpow(cs.x_star[j], rb / rj);
  const IntegralResult ir = integrate_interval(
      [rb, rj, e, xp](double s) { return sigpow(sigpow(s, rb / rj) - xp, e); },
      cs.x_star[j], x[j]);
  return ir.value;
}

PartialCheck energy_partials_check(const BacksteppingCascade& cascade, int j,
                                   std::span<const double> x, double h,
                                   double tol) {
  if (j < 0 || j >= cascade.dim())
    throw domain_error("energy_partials_check: bad step index");
  if (!(h > 0.0)) throw domain_error("energy_partials_check: need h > 0");
  const int n = cascade.dim();
  const GainSet& gs = cascade.gains();
  const double rb = gs.r_bar;
  const double rj = gs.r[j];
  const double e = (4.0 * rb - gs.kappa - rj) / rb;
  const CascadeState cs = cascade.evaluate(x);
  const double xp = sigpow(cs.x_star[j], rb / rj);

  PartialCheck pc;
  pc.j = j;
  pc.analytic.assign(n, 0.0);
  pc.fd.assign(n, 0.0);
  pc.fd_half.assign(n, 0.0);

  for (int i = 0; i < n; ++i) {
    if (i == j) {
      pc.analytic[i] = sigpow(cs.xi[j], e);
    } else if (i < j) {
      const IntegralResult ir = integrate_interval(
          [rb, rj, e, xp](double s) {
            return std::pow(std::fabs(sigpow(s, rb / rj) - xp), e - 1.0);
          },
          cs.x_star[j], x[j]);
      pc.analytic[i] = -e * cascade.dxstar_pow(j, i, x) * ir.value;
    }
  }

  std::vector<double> xp_state(x.begin(), x.end());
  auto central = [&](int i, double step) {
    xp_state[i] = x[i] + step;
    const double up = step_energy(cascade, j, xp_state);
    xp_state[i] = x[i] - step;
    const double dn = step_energy(cascade, j, xp_state);
    xp_state[i] = x[i];
    return (up - dn) / (2.0 * step);
  };
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double hi = h * (1.0 + std::fabs(x[i]));
    pc.fd[i] = central(i, hi);
    pc.fd_half[i] = central(i, 0.5 * hi);
    const double rel =
        std::fabs(pc.analytic[i] - pc.fd_half[i]) / (1.0 + std::fabs(pc.analytic[i]));
    worst = std::max(worst, rel);
  }
  pc.max_rel_err = worst;
  pc.ok = worst <= tol;
  return pc;
}

}  // namespace predt
