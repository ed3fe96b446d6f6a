#pragma once

#include <functional>

namespace predt {

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;    // estimated absolute error
  bool unbounded = false;
};

/// Integral of f over (0, inf) for positive integrands with power-law or
/// faster-decaying tails. Works in the log domain t = ln s, where a trapezoid
/// rule superconverges for smooth integrands, and adds extrapolated power-law
/// tail mass beyond |t| = 645 (the edge of double range). The extrapolation is
/// exact for pure power tails; its curvature mismatch feeds the error
/// estimate. Integrals whose running value exceeds 1e3, or whose tails do not
/// decay, are reported with unbounded = true.
///
/// Non-finite integrand values are treated as 0 (they can only occur past the
/// representable range for integrable singularities).
[[nodiscard]] IntegralResult integrate_positive_halfline(const std::function<double(double)>& f,
                                                         double tol = 1e-9, int max_levels = 8);

/// Oriented integral of f over [a, b] (finite), tanh-sinh based, robust to
/// integrable endpoint singularities.
[[nodiscard]] IntegralResult integrate_interval(const std::function<double(double)>& f, double a,
                                                double b, double tol = 1e-12);

}  // namespace predt
