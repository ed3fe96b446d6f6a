#include "predt/sigpow.hpp"

#include <cmath>
#include <string>

#include "predt/errors.hpp"

namespace predt {

namespace {

void require_finite(double a) {
  if (!std::isfinite(a)) throw domain_error("sigpow: argument must be finite, got " + std::to_string(a));
}

}  // namespace

double sigpow(double a, double b) {
  require_finite(a);
  if (!(b >= 0.0)) throw domain_error("sigpow: exponent must be >= 0, got " + std::to_string(b));
  if (a == 0.0) return 0.0;
  const double m = std::pow(std::fabs(a), b);
  return std::signbit(a) ? -m : m;
}

double sigpow_d1(double a, double b) {
  require_finite(a);
  if (!(b >= 2.0)) throw domain_error("sigpow_d1: exponent must be >= 2, got " + std::to_string(b));
  if (a == 0.0) return 0.0;
  return b * std::pow(std::fabs(a), b - 1.0);
}

double sigpow_d2(double a, double b) {
  require_finite(a);
  if (!(b >= 2.0)) throw domain_error("sigpow_d2: exponent must be >= 2, got " + std::to_string(b));
  return b * (b - 1.0) * sigpow(a, b - 2.0);
}

InequalityResiduals inequality_residuals(double x, double y, double p, double q, double a, double f) {
  require_finite(x);
  require_finite(y);
  if (!(p > 0.0 && p < 1.0)) throw domain_error("inequality_residuals: need p in (0,1)");
  if (!(q > 1.0)) throw domain_error("inequality_residuals: need q > 1");
  if (!(a >= 1.0)) throw domain_error("inequality_residuals: need a >= 1");
  if (!(f > 0.0)) throw domain_error("inequality_residuals: need f > 0");

  InequalityResiduals r{};

  const double lhs_pd = std::fabs(sigpow(x, p * q) - sigpow(y, p * q));
  const double rhs_pd = std::pow(2.0, 1.0 - p) * std::pow(std::fabs(sigpow(x, q) - sigpow(y, q)), p);
  r.power_difference = rhs_pd - lhs_pd;

  const double ax = std::fabs(x), ay = std::fabs(y);
  const double lhs_y = std::pow(ax, p) * std::pow(ay, q);
  const double rhs_y = p / (p + q) * f * std::pow(ax, p + q) +
                       q / (p + q) * std::pow(f, -p / q) * std::pow(ay, p + q);
  r.young_product = rhs_y - lhs_y;

  const double s = ax + ay;
  const double roots = std::pow(ax, 1.0 / a) + std::pow(ay, 1.0 / a);
  r.root_subadd_lo = roots - std::pow(s, 1.0 / a);
  r.root_subadd_hi = std::pow(2.0, (a - 1.0) / a) * std::pow(s, 1.0 / a) - roots;

  return r;
}

double power_sum_residual(std::span<const double> terms, double b) {
  if (!(b > 0.0)) throw domain_error("power_sum_residual: need b > 0");
  if (terms.empty()) return 0.0;
  double sum = 0.0, powsum = 0.0;
  for (double t : terms) {
    if (!(t >= 0.0)) throw domain_error("power_sum_residual: terms must be nonnegative");
    sum += t;
    powsum += std::pow(t, b);
  }
  const double j = static_cast<double>(terms.size());
  const double factor = std::max(std::pow(j, b - 1.0), 1.0);
  return factor * powsum - std::pow(sum, b);
}

}  // namespace predt
