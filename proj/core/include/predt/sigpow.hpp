#pragma once

#include <span>

namespace predt {

/// Signed power: sigpow(a, b) = sign(a) * |a|^b.
///
/// Keeps odd symmetry for fractional exponents, so sigpow(-8, 1/3) = -2 where
/// std::pow would return NaN. The origin is absorbing by convention:
/// sigpow(0, b) = 0 for every b >= 0, including b = 0 (0^0 := 0 here; the
/// closed-loop vector fields built from these kernels must vanish at 0).
///
/// Requires a finite and b >= 0; throws domain_error otherwise.
[[nodiscard]] double sigpow(double a, double b);

/// First derivative of a -> sigpow(a, b) for b >= 2:  d/da = b * |a|^(b-1).
[[nodiscard]] double sigpow_d1(double a, double b);

/// Second derivative for b >= 2:  d^2/da^2 = b * (b-1) * sigpow(a, b-2).
/// C^1 at a = 0 requires b >= 2, which is why the precondition is b >= 2.
[[nodiscard]] double sigpow_d2(double a, double b);

/// Slack of the four power inequalities used throughout the stability proofs,
/// each reported as RHS - LHS (nonnegative when the inequality holds).
struct InequalityResiduals {
  /// |sigpow(x,pq) - sigpow(y,pq)| <= 2^(1-p) |sigpow(x,q) - sigpow(y,q)|^p,
  /// for p in (0,1), q > 1.
  double power_difference;
  /// Weighted Young inequality with free factor f > 0:
  /// |x|^p |y|^q <= p/(p+q) f |x|^(p+q) + q/(p+q) f^(-p/q) |y|^(p+q).
  double young_product;
  /// Lower half of root subadditivity, a >= 1:
  /// (|x|+|y|)^(1/a) <= |x|^(1/a) + |y|^(1/a).
  double root_subadd_lo;
  /// Upper half: |x|^(1/a) + |y|^(1/a) <= 2^((a-1)/a) (|x|+|y|)^(1/a).
  double root_subadd_hi;
};

/// Evaluates all four residuals at (x, y) with exponents p in (0,1), q > 1,
/// a >= 1 and Young factor f > 0. Throws domain_error on parameter violations.
[[nodiscard]] InequalityResiduals inequality_residuals(double x, double y, double p, double q,
                                                       double a, double f);

/// Residual of the sum-power bound (sum a_i)^b <= max(j^(b-1), 1) * sum a_i^b
/// for nonnegative terms and b > 0, reported as RHS - LHS.
[[nodiscard]] double power_sum_residual(std::span<const double> terms, double b);

}  // namespace predt
