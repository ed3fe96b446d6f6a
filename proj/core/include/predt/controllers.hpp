#pragma once

#include "predt/system.hpp"

namespace predt {

/// u(x) = -x/2 - sigpow(x, a) - sigpow(x, b) with a in (0,1), b > 1.
/// Drives the scalar noise-free double integrator cell to zero within
/// tmax_fixed_time(a, b) regardless of the initial state.
Controller fixed_time_controller(double a, double b);

/// Settling-time bound 1/(1-a) + 1/(b-1) for fixed_time_controller.
double tmax_fixed_time(double a, double b);

/// Scalar predefined-time law u(x) = -(sqrt(pi)/(2 alpha)) sign(x) e^{x^2}
/// - x/2 for dx = u dt + x dw. The exponential overflows fast, so for
/// |x| > x_guard the magnitude is capped at u_max; simulators treat a
/// control at the cap as a saturation event.
Controller predefined_controller_scalar(double alpha, double x_guard = 6.0,
                                        double u_max = 1e12);

/// Companion gain k1 / (3 (k1/4 - 1) (k3 - 1) / 2) for example41_controller.
/// Requires k1 > 4 and k3 > 1 (the denominator vanishes at k1 = 4).
double example41_gain_k2(double k1, double k3);

/// Scalar preset law u(x) = -sigpow(x,5/3) - sigpow(x,3)/2
/// - (k1/(2 k4)) sigpow(x,1/3) - (k2/(2 k4)) sigpow(x,k3).
Controller example41_controller(double k1, double k2, double k3, double k4);

/// Two-state preset law, printed form:
///   u = -(10.9 + 3.5 beta1 + 82.4 |xi2|^0.75) sigpow(xi2, 1/8)
///   beta1 = (47.1 + 165 |xi1|^3.1)^0.6
/// with xi1 = sigpow(x1, 2), x2* = -beta1 sigpow(xi1, 0.225) and
/// xi2 = sigpow(x2, 2/0.45) - sigpow(x2*, 2/0.45).
Controller example42_controller();

}  // namespace predt
