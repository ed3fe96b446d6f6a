#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "predt/rational.hpp"

namespace predt {

/// Controlled Ito diffusion  dx = f(x, u) dt + g(x, u) dw  with scalar control
/// and a scalar Wiener process. drift/diffusion write the n components into
/// `out` (callers keep the buffers hot in simulation loops).
struct ItoSystem {
  int dim = 0;
  std::function<void(std::span<const double> x, double u, std::span<double> out)> drift;
  std::function<void(std::span<const double> x, double u, std::span<double> out)> diffusion;
};

/// Validates that the closed pair (f, g) vanishes at the origin with zero
/// control (the origin must be an equilibrium of the uncontrolled closed loop)
/// and returns the system unchanged. Throws domain_error otherwise.
ItoSystem validated(ItoSystem sys, double tol = 0.0);

/// Scalar field V(x) with optional analytic gradient and Hessian callables.
/// The Hessian is row-major dim x dim.
struct ScalarField {
  std::function<double(std::span<const double>)> value;
  std::function<std::vector<double>(std::span<const double>)> gradient;  // optional
  std::function<std::vector<double>(std::span<const double>)> hessian;   // optional
};

/// State-feedback control law u(x). Admissible laws vanish at the origin.
struct Controller {
  std::function<double(std::span<const double>)> eval;
  std::string description;
  std::map<std::string, double> params;
};

/// Ito generator of V along the controlled diffusion at state x:
///   L V(x) = grad V . f(x, u(x)) + 1/2 g^T Hess V g.
/// Requires analytic gradient and Hessian callables; throws domain_error if
/// they are missing and evaluation_error (carrying x) on non-finite results.
[[nodiscard]] double generator_value(const ItoSystem& sys, const ScalarField& V, const Controller& u,
                                     std::span<const double> x);

/// Same generator with central finite differences of V.value only; step h is
/// scaled per coordinate as h * (1 + |x_i|). Default h = 1e-5 balances the
/// O(h^2) truncation against roundoff in the second differences.
[[nodiscard]] double generator_value_fd(const ItoSystem& sys, const ScalarField& V, const Controller& u,
                                        std::span<const double> x, double h = 1e-5);

/// Strict-feedback stochastic cascade with powered virtual inputs:
///   dx_i = (h_i(x) sigpow(x_{i+1}, q_i) + f_i(x_1..x_i)) dt + g_i(x_1..x_i) dw
/// where x_{n+1} is the control. Only the envelope h_lo <= h_i <= h_hi is
/// known to the designer; `h_sim` fixes concrete values for simulation.
struct StrictFeedbackSystem {
  int dim = 0;
  std::vector<double> q;      // powers q_i >= 1, size dim
  std::vector<double> h_lo;   // 0 < h_lo_i <= h_hi_i
  std::vector<double> h_hi;
  std::vector<double> h_sim;  // concrete gains used when closing the loop
  double kappa = 0.0;         // homogeneity offset, admissible range depends on q
  /// f_i(x_1..x_i); index i in [0, dim)
  std::vector<std::function<double(std::span<const double>)>> f;
  /// g_i(x_1..x_i)
  std::vector<std::function<double(std::span<const double>)>> g;
};

/// Closes the loop: strict-feedback dynamics with the concrete h_sim gains and
/// the supplied control channel become a plain ItoSystem.
[[nodiscard]] ItoSystem close_loop(const StrictFeedbackSystem& sys);

/// Homogeneity weights r_1..r_{n+1} from the power recursion
///   r_1 = 1,  r_{i+1} = (r_i + kappa) / q_i.
/// All weights must stay positive; otherwise kappa is inadmissible.
[[nodiscard]] std::vector<double> homogeneity_weights(std::span<const double> q, double kappa);

/// Exact-rational overload of the same recursion.
[[nodiscard]] std::vector<Rational> homogeneity_weights(std::span<const Rational> q, const Rational& kappa);

/// Design interval for kappa:  ( -1 / (1 + sum_{s=1}^{n-1} prod_{t<=s} 1/q_t), 0 ).
/// This is the growth-hypothesis bound, not an exact positivity
/// characterization: near the lower end the weight recursion can still drive
/// some r_i to <= 0, which homogeneity_weights reports by throwing.
[[nodiscard]] std::pair<double, double> admissible_kappa_interval(std::span<const double> q);

}  // namespace predt
