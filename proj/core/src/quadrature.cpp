#include "predt/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <vector>

#include "predt/errors.hpp"

namespace predt {

namespace {

constexpr double kLogRange = 645.0;  // |ln s| beyond which doubles under/overflow

double eval_log_domain(const std::function<double(double)>& f, double t) {
  const double s = std::exp(t);
  const double v = f(s) * s;
  return std::isfinite(v) ? v : 0.0;
}

/// One-sided trapezoid scan from t=0 outwards at spacing h; returns the sum of
/// g(dir * k * h) for k >= 1 up to the truncation range, which is discovered
/// on the first (coarsest) pass and reused afterwards.
double side_sum(const std::function<double(double)>& f, double h, int dir, double* t_range) {
  double sum = 0.0;
  if (*t_range < 0.0) {  // discover truncation point
    int quiet = 0;
    long k = 1;
    for (; k * h <= kLogRange; ++k) {
      const double term = eval_log_domain(f, dir * k * h);
      sum += term;
      if (std::fabs(term) <= 1e-18 * (1.0 + std::fabs(sum))) {
        // Integrands with mass far from s = 1 (e.g. slowly decaying tails)
        // can look flat near t = 0, so never truncate before |t| = 30.
        if (++quiet >= 4 && k * h >= 30.0) break;
      } else {
        quiet = 0;
      }
    }
    *t_range = std::min(k * h, kLogRange);
    return sum;
  }
  for (long k = 1; k * h <= *t_range; ++k) sum += eval_log_domain(f, dir * k * h);
  return sum;
}

struct TailFit {
  double mass = 0.0;
  double error = 0.0;
  bool unbounded = false;
};

/// Power-law continuation of the integrand beyond e^{dir * kLogRange}. In the
/// log domain a power tail of f is a pure exponential g(t) = g0 e^{-m |dt|},
/// so the remaining mass is g0 / m exactly; log-curvature across three probes
/// measures how far the tail is from that model.
TailFit fit_tail(const std::function<double(double)>& f, int dir) {
  const double t0 = dir * kLogRange;
  const double g0 = eval_log_domain(f, t0);
  const double g1 = eval_log_domain(f, t0 - dir * 1.0);
  const double g2 = eval_log_domain(f, t0 - dir * 2.0);
  TailFit out;
  if (g0 <= 0.0) return out;  // tail already underflowed: no mass left
  if (g1 <= 0.0 || g2 <= 0.0) return out;
  const double m = 0.5 * std::log(g2 / g0);
  const double curv = std::fabs(std::log(g2 * g0 / (g1 * g1)));
  if (m > 1e-12 && curv < 0.5 * m) {
    out.mass = g0 / m;
    out.error = out.mass * (curv / m);
  } else if (g0 > 1e-12) {
    out.unbounded = true;  // integrand not decaying at the edge of double range
  }
  return out;
}

}  // namespace

IntegralResult integrate_positive_halfline(const std::function<double(double)>& f, double tol,
                                           int max_levels) {
  if (!(tol > 0.0)) throw domain_error("integrate_positive_halfline: need tol > 0");
  IntegralResult res;
  double range_neg = -1.0, range_pos = -1.0;  // discovered on the first pass

  double h = 0.5;
  const double g0 = eval_log_domain(f, 0.0);
  double sum = g0 + side_sum(f, h, -1, &range_neg) + side_sum(f, h, +1, &range_pos);
  double prev = sum * h;
  res.value = prev;
  res.error = HUGE_VAL;
  for (int level = 1; level <= max_levels; ++level) {
    h *= 0.5;
    // previous nodes are the even multiples of the new h; add the odd ones
    double odd = 0.0;
    for (long k = 1; k * h <= range_neg; k += 2) odd += eval_log_domain(f, -k * h);
    for (long k = 1; k * h <= range_pos; k += 2) odd += eval_log_domain(f, k * h);
    sum += odd;
    res.value = sum * h;
    res.error = std::fabs(res.value - prev);
    prev = res.value;
    if (!std::isfinite(res.value) || res.value > 1e3) {
      res.unbounded = true;
      return res;
    }
    if (level >= 3 && res.error <= tol * (1.0 + std::fabs(res.value))) break;
  }

  for (int dir : {-1, +1}) {
    const TailFit tail = fit_tail(f, dir);
    if (tail.unbounded) res.unbounded = true;
    res.value += tail.mass;
    res.error += tail.error;
  }
  if (!std::isfinite(res.value) || res.value > 1e3) res.unbounded = true;
  return res;
}

IntegralResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                  double tol) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw domain_error("integrate_interval: bounds must be finite");
  if (a == b) return {0.0, 0.0, false};
  const double sign = a < b ? 1.0 : -1.0;
  const double lo = std::min(a, b), hi = std::max(a, b);

  boost::math::quadrature::tanh_sinh<double> ts(15);
  double err = 0.0;
  try {
    const double v = ts.integrate([&f](double x, double) { return f(x); }, lo, hi, tol, &err);
    if (!std::isfinite(v)) return {v, err, true};
    return {sign * v, err, false};
  } catch (const std::exception& e) {
    throw evaluation_error(std::string("integrate_interval: quadrature failed: ") + e.what());
  }
}

}  // namespace predt
