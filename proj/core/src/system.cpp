#include "predt/system.hpp"

#include <cmath>
#include <string>

#include "predt/errors.hpp"
#include "predt/sigpow.hpp"

namespace predt {

namespace {

std::string state_str(std::span<const double> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + std::to_string(x[i]);
  return s + ")";
}

}  // namespace

ItoSystem validated(ItoSystem sys, double tol) {
  if (sys.dim <= 0 || !sys.drift || !sys.diffusion) throw domain_error("ItoSystem: incomplete definition");
  std::vector<double> zero(static_cast<std::size_t>(sys.dim), 0.0);
  std::vector<double> out(zero.size());
  sys.drift(zero, 0.0, out);
  for (double v : out)
    if (!(std::fabs(v) <= tol)) throw domain_error("ItoSystem: drift(0, 0) != 0");
  sys.diffusion(zero, 0.0, out);
  for (double v : out)
    if (!(std::fabs(v) <= tol)) throw domain_error("ItoSystem: diffusion(0, 0) != 0");
  return sys;
}

double generator_value(const ItoSystem& sys, const ScalarField& V, const Controller& u,
                       std::span<const double> x) {
  if (!V.gradient || !V.hessian)
    throw domain_error("generator_value: analytic gradient/hessian required (use generator_value_fd)");
  const std::size_t n = static_cast<std::size_t>(sys.dim);
  const double uc = u.eval(x);
  std::vector<double> f(n), g(n);
  sys.drift(x, uc, f);
  sys.diffusion(x, uc, g);
  const std::vector<double> grad = V.gradient(x);
  const std::vector<double> hess = V.hessian(x);
  if (grad.size() != n || hess.size() != n * n)
    throw domain_error("generator_value: gradient/hessian dimension mismatch");

  double lv = 0.0;
  for (std::size_t i = 0; i < n; ++i) lv += grad[i] * f[i];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lv += 0.5 * g[i] * hess[i * n + j] * g[j];
  if (!std::isfinite(lv))
    throw evaluation_error("generator_value: non-finite at x = " + state_str(x), {x.begin(), x.end()});
  return lv;
}

double generator_value_fd(const ItoSystem& sys, const ScalarField& V, const Controller& u,
                          std::span<const double> x, double h) {
  if (!V.value) throw domain_error("generator_value_fd: V.value required");
  if (!(h > 0.0)) throw domain_error("generator_value_fd: need h > 0");
  const std::size_t n = static_cast<std::size_t>(sys.dim);
  const double uc = u.eval(x);
  std::vector<double> f(n), g(n);
  sys.drift(x, uc, f);
  sys.diffusion(x, uc, g);

  std::vector<double> xp(x.begin(), x.end());
  auto V_at = [&](const std::vector<double>& p) { return V.value(p); };
  const double v0 = V_at(xp);

  double lv = 0.0;
  std::vector<double> hi(n);
  for (std::size_t i = 0; i < n; ++i) hi[i] = h * (1.0 + std::fabs(x[i]));

  for (std::size_t i = 0; i < n; ++i) {
    xp[i] = x[i] + hi[i];
    const double vp = V_at(xp);
    xp[i] = x[i] - hi[i];
    const double vm = V_at(xp);
    xp[i] = x[i];
    lv += f[i] * (vp - vm) / (2.0 * hi[i]);
    lv += 0.5 * g[i] * g[i] * (vp - 2.0 * v0 + vm) / (hi[i] * hi[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      xp[i] = x[i] + hi[i]; xp[j] = x[j] + hi[j];
      const double vpp = V_at(xp);
      xp[j] = x[j] - hi[j];
      const double vpm = V_at(xp);
      xp[i] = x[i] - hi[i]; xp[j] = x[j] + hi[j];
      const double vmp = V_at(xp);
      xp[j] = x[j] - hi[j];
      const double vmm = V_at(xp);
      xp[i] = x[i]; xp[j] = x[j];
      const double mixed = (vpp - vpm - vmp + vmm) / (4.0 * hi[i] * hi[j]);
      lv += g[i] * g[j] * mixed;  // symmetric pair (i,j) + (j,i) collapses the 1/2
    }
  }
  if (!std::isfinite(lv))
    throw evaluation_error("generator_value_fd: non-finite at x = " + state_str(x), {x.begin(), x.end()});
  return lv;
}

ItoSystem close_loop(const StrictFeedbackSystem& sys) {
  const std::size_t n = static_cast<std::size_t>(sys.dim);
  if (n == 0 || sys.q.size() != n || sys.f.size() != n || sys.g.size() != n)
    throw domain_error("close_loop: inconsistent strict-feedback definition");
  if (sys.h_sim.size() != n) throw domain_error("close_loop: h_sim must fix all channel gains");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(sys.h_lo[i] > 0.0) || !(sys.h_lo[i] <= sys.h_hi[i]))
      throw domain_error("close_loop: need 0 < h_lo <= h_hi");
    if (!(sys.h_sim[i] >= sys.h_lo[i]) || !(sys.h_sim[i] <= sys.h_hi[i]))
      throw domain_error("close_loop: h_sim outside [h_lo, h_hi]");
  }

  ItoSystem out;
  out.dim = sys.dim;
  out.drift = [sys](std::span<const double> x, double u, std::span<double> dst) {
    const std::size_t m = x.size();
    for (std::size_t i = 0; i < m; ++i) {
      const double next = (i + 1 < m) ? x[i + 1] : u;
      dst[i] = sys.h_sim[i] * sigpow(next, sys.q[i]) + sys.f[i](x.first(i + 1));
    }
  };
  out.diffusion = [sys](std::span<const double> x, double /*u*/, std::span<double> dst) {
    for (std::size_t i = 0; i < x.size(); ++i) dst[i] = sys.g[i](x.first(i + 1));
  };
  return out;
}

std::vector<double> homogeneity_weights(std::span<const double> q, double kappa) {
  if (q.empty()) throw domain_error("homogeneity_weights: empty power list");
  std::vector<double> r;
  r.reserve(q.size() + 1);
  r.push_back(1.0);
  for (double qi : q) {
    if (!(qi >= 1.0)) throw domain_error("homogeneity_weights: powers must be >= 1");
    const double next = (r.back() + kappa) / qi;
    if (!(next > 0.0))
      throw domain_error("homogeneity_weights: kappa = " + std::to_string(kappa) +
                         " is inadmissible (weight became nonpositive)");
    r.push_back(next);
  }
  return r;
}

std::vector<Rational> homogeneity_weights(std::span<const Rational> q, const Rational& kappa) {
  if (q.empty()) throw domain_error("homogeneity_weights: empty power list");
  std::vector<Rational> r;
  r.reserve(q.size() + 1);
  r.emplace_back(1);
  for (const Rational& qi : q) {
    if (!(Rational(1) <= qi)) throw domain_error("homogeneity_weights: powers must be >= 1");
    const Rational next = (r.back() + kappa) / qi;
    if (!(Rational(0) < next))
      throw domain_error("homogeneity_weights: kappa is inadmissible (weight became nonpositive)");
    r.push_back(next);
  }
  return r;
}

std::pair<double, double> admissible_kappa_interval(std::span<const double> q) {
  if (q.empty()) throw domain_error("admissible_kappa_interval: empty power list");
  for (double qi : q)
    if (!(qi >= 1.0)) throw domain_error("admissible_kappa_interval: powers must be >= 1");
  double denom = 1.0, prod = 1.0;
  for (std::size_t s = 0; s + 1 < q.size(); ++s) {
    prod /= q[s];
    denom += prod;
  }
  return {-1.0 / denom, 0.0};
}

}  // namespace predt
