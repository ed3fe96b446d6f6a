#include "predt/controllers.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "predt/errors.hpp"
#include "predt/sigpow.hpp"

namespace predt {
namespace {

void need_state(std::span<const double> x, size_t dim, const char* who) {
  if (x.size() != dim) throw domain_error(std::string(who) + ": wrong state dimension");
}

}  // namespace

Controller fixed_time_controller(double a, double b) {
  if (!(a > 0.0 && a < 1.0)) throw domain_error("fixed_time_controller: need a in (0,1)");
  if (!(b > 1.0)) throw domain_error("fixed_time_controller: need b > 1");
  Controller c;
  std::ostringstream d;
  d << "u = -x/2 - sigpow(x, " << a << ") - sigpow(x, " << b << ")";
  c.description = d.str();
  c.params = {{"a", a}, {"b", b}};
  c.eval = [a, b](std::span<const double> x) {
    need_state(x, 1, "fixed_time_controller");
    return -0.5 * x[0] - sigpow(x[0], a) - sigpow(x[0], b);
  };
  return c;
}

double tmax_fixed_time(double a, double b) {
  if (!(a > 0.0 && a < 1.0)) throw domain_error("tmax_fixed_time: need a in (0,1)");
  if (!(b > 1.0)) throw domain_error("tmax_fixed_time: need b > 1");
  return 1.0 / (1.0 - a) + 1.0 / (b - 1.0);
}

Controller predefined_controller_scalar(double alpha, double x_guard, double u_max) {
  if (!(alpha > 0.0)) throw domain_error("predefined_controller_scalar: need alpha > 0");
  if (!(x_guard > 0.0) || !(u_max > 0.0))
    throw domain_error("predefined_controller_scalar: guards must be positive");
  Controller c;
  std::ostringstream d;
  d << "u = -(sqrt(pi)/(2*" << alpha << ")) sign(x) exp(x^2) - x/2"
    << " (|u| capped at " << u_max << ")";
  c.description = d.str();
  c.params = {{"alpha", alpha}, {"x_guard", x_guard}, {"u_max", u_max}};
  const double root_pi = std::sqrt(std::numbers::pi_v<double>);
  c.eval = [alpha, u_max, root_pi](std::span<const double> x) {
    need_state(x, 1, "predefined_controller_scalar");
    const double xv = x[0];
    if (xv == 0.0) return 0.0;
    // both terms point toward the origin, so the magnitude is their sum;
    // clamp the exponent argument so the cap is reached before overflow
    double mag = root_pi / (2.0 * alpha) * std::exp(std::min(xv * xv, 700.0)) +
                 0.5 * std::fabs(xv);
    if (mag > u_max) mag = u_max;
    return xv > 0.0 ? -mag : mag;
  };
  return c;
}

double example41_gain_k2(double k1, double k3) {
  if (!(k1 > 4.0)) throw domain_error("example41_gain_k2: need k1 > 4");
  if (!(k3 > 1.0)) throw domain_error("example41_gain_k2: need k3 > 1");
  return k1 / (3.0 * (k1 / 4.0 - 1.0) * (k3 - 1.0) / 2.0);
}

Controller example41_controller(double k1, double k2, double k3, double k4) {
  if (!(k1 > 4.0)) throw domain_error("example41_controller: need k1 > 4");
  if (!(k3 > 1.0)) throw domain_error("example41_controller: need k3 > 1");
  if (!(k4 > 0.0)) throw domain_error("example41_controller: need k4 > 0");
  if (!(k2 > 0.0)) throw domain_error("example41_controller: need k2 > 0");
  Controller c;
  std::ostringstream d;
  d << "u = -sigpow(x,5/3) - sigpow(x,3)/2 - " << k1 / (2.0 * k4)
    << " sigpow(x,1/3) - " << k2 / (2.0 * k4) << " sigpow(x," << k3 << ")";
  c.description = d.str();
  c.params = {{"k1", k1}, {"k2", k2}, {"k3", k3}, {"k4", k4}};
  c.eval = [k1, k2, k3, k4](std::span<const double> x) {
    need_state(x, 1, "example41_controller");
    const double xv = x[0];
    return -sigpow(xv, 5.0 / 3.0) - 0.5 * sigpow(xv, 3.0) -
           k1 / (2.0 * k4) * sigpow(xv, 1.0 / 3.0) -
           k2 / (2.0 * k4) * sigpow(xv, k3);
  };
  return c;
}

Controller example42_controller() {
  Controller c;
  c.description =
      "u = -(10.9 + 3.5 beta1 + 82.4 |xi2|^0.75) sigpow(xi2, 1/8), "
      "beta1 = (47.1 + 165 |xi1|^3.1)^0.6";
  c.params = {{"c0", 10.9}, {"c1", 3.5},   {"c2", 82.4}, {"b10", 47.1},
              {"b11", 165.0}, {"r_bar", 2.0}, {"r2", 0.45}, {"r3", 0.15}};
  c.eval = [](std::span<const double> x) {
    need_state(x, 2, "example42_controller");
    const double xi1 = sigpow(x[0], 2.0);
    const double beta1 = std::pow(47.1 + 165.0 * std::pow(std::fabs(xi1), 3.1), 0.6);
    const double xstar2 = -beta1 * sigpow(xi1, 0.45 / 2.0);
    const double xi2 = sigpow(x[1], 2.0 / 0.45) - sigpow(xstar2, 2.0 / 0.45);
    const double a2 = std::fabs(xi2);
    return -(10.9 + 3.5 * beta1 + 82.4 * std::pow(a2, 0.75)) * sigpow(xi2, 0.125);
  };
  return c;
}

}  // namespace predt
