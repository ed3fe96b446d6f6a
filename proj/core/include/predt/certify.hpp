#pragma once

#include <functional>
#include <string>
#include <vector>

#include "predt/backstep.hpp"
#include "predt/quadrature.hpp"
#include "predt/system.hpp"

namespace predt {

/// Lyapunov certificate data: V with optional analytic derivatives, the
/// settling-rate function beta on [0, inf) and the target bound alpha.
struct LyapunovSpec {
  ScalarField V;
  std::function<double(double)> beta;
  double alpha = 1.0;
};

/// Grid-based certificate verdict. Grid checks are falsifiers, not proofs:
/// verdict = true means no violation was found on the supplied grid and the
/// rate integral stayed within its budget.
struct CertReport {
  std::size_t grid_size = 0;
  double max_residual = 0.0;  // worst relative residual over the grid
  std::vector<double> argmax_state;
  std::size_t n_flagged = 0;  // grid points with a non-finite residual
  double integral = 0.0;
  double integral_err = 0.0;
  bool integral_unbounded = false;
  bool drift_ok = false;
  bool integral_ok = false;
  bool verdict = false;
};

/// Uniform 1-d grid over [lo, hi] with points inside the exclusion radius
/// around the origin dropped (fractional powers are non-smooth at 0).
std::vector<std::vector<double>> grid_1d(double lo, double hi, int n,
                                         double exclude_radius = 1e-3);

/// Integral of 1/beta over (0, inf) with an error estimate. Values climbing
/// past 10^3 before convergence are reported as unbounded.
IntegralResult beta_integral(const std::function<double(double)>& beta,
                             double quad_tol = 1e-6);

/// Checks the drift condition L V(x) <= -beta(V(x))/alpha on the grid
/// (residual = LV + beta(V)/alpha, relative to 1 + |LV|) and the rate
/// integral budget. use_fd switches the generator to finite differences of
/// V.value; default tolerances are 1e-9 analytic, 1e-4 with differences.
/// Ties in the worst residual go to the lowest grid index.
CertReport check_drift_condition(const ItoSystem& sys, const Controller& u,
                                 const LyapunovSpec& spec,
                                 std::span<const std::vector<double>> grid,
                                 double tol, bool use_fd = false,
                                 double quad_tol = 1e-6);

/// Builds the rate function beta(s) = F(s)^p / ((1-p) F'(s)) from a strictly
/// increasing cdf-like F (F(0) = 0, F -> 1). Its reciprocal integrates to 1
/// exactly. Throws domain_error when a sampled derivative is <= 0 or p is
/// outside [0, 1).
std::function<double(double)> rate_from_cdf(std::function<double(double)> F,
                                            std::function<double(double)> dF,
                                            double p);

/// Checks L W(x) <= -1/alpha + tol for a bounded certificate W in [0, 1) and
/// cross-checks the transformed field V = -ln(1 - W) against
/// L V <= -e^{V}/alpha at the same points. Throws domain_error when W leaves
/// [0, 1) on the grid. Generators use finite differences of the fields.
CertReport bounded_drift_check(const ItoSystem& sys, const Controller& u,
                               const ScalarField& W, double alpha,
                               std::span<const std::vector<double>> grid,
                               double tol = 1e-4);

/// Step energy W_j(x) = integral from x*_j to x_j of
/// sigpow(sigpow(s, rb/r_j) - sigpow(x*_j, rb/r_j), (4 rb - kappa - r_j)/rb) ds
/// evaluated by quadrature.
double step_energy(const BacksteppingCascade& cascade, int j,
                   std::span<const double> x);

/// Analytic-vs-finite-difference comparison of the step-energy partials.
struct PartialCheck {
  int j = 0;
  std::vector<double> analytic;  // dW_j/dx_i per coordinate
  std::vector<double> fd;
  std::vector<double> fd_half;   // at h/2, for the O(h^2) decay check
  double max_rel_err = 0.0;
  bool ok = false;
};

/// Compares the closed-form partials of W_j (boundary term in x_j, virtual
/// control chain rule in x_i, i < j) against central differences of the
/// quadrature-evaluated energy at steps h and h/2.
PartialCheck energy_partials_check(const BacksteppingCascade& cascade, int j,
                                   std::span<const double> x, double h = 1e-4,
                                   double tol = 1e-5);

}  // namespace predt
