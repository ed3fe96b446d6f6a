#pragma once

#include <functional>
#include <vector>

#include "predt/gains.hpp"
#include "predt/system.hpp"

namespace predt {

/// Smooth nonnegative bound suppliers for one cascade step. Step 0 needs the
/// growth envelopes `phi_hat` (drift) and `psi_bar` (diffusion); later steps
/// need the cross-term absorbers `alpha2`..`alpha4`. `alpha1` has an explicit
/// closed form (default_alpha1) and is only set to override it.
struct StepSuppliers {
  std::function<double(std::span<const double>)> phi_hat;
  std::function<double(std::span<const double>)> psi_bar;
  std::function<double(std::span<const double>)> alpha1;
  std::function<double(std::span<const double>)> alpha2;
  std::function<double(std::span<const double>)> alpha3;
  std::function<double(std::span<const double>)> alpha4;
};

/// Snapshot of the cascade at one state: tracking errors, virtual controls
/// and gain-function values per step.
struct CascadeState {
  std::vector<double> xi;
  std::vector<double> x_star;  // x_star[0] = 0 always
  std::vector<double> beta;
};

/// Explicit cross-term absorber for step j >= 1 (constant in the state):
/// the Young-inequality budget that leaves exactly k1/(4 k4) of the previous
/// step's error term. Returns 0 for j = 0.
double default_alpha1(const StrictFeedbackSystem& sys, const GainSet& gains, int j);

/// Powered-integrator backstepping cascade. Immutable after construction;
/// evaluation is side-effect free and safe to run concurrently.
class BacksteppingCascade {
 public:
  BacksteppingCascade(StrictFeedbackSystem sys, GainSet gains,
                      std::vector<StepSuppliers> steps);

  int dim() const { return sys_.dim; }
  const GainSet& gains() const { return gains_; }
  const StrictFeedbackSystem& system() const { return sys_; }

  /// Tracking errors xi_j, virtual controls x*_j and gains beta_j at x.
  CascadeState evaluate(std::span<const double> x) const;

  /// u(x) = -beta_{n-1} sigpow(xi_{n-1}, r_n / r_bar).
  double control(std::span<const double> x) const;

  /// Wraps control() as a Controller with an audit description.
  Controller controller() const;

  /// sigpow(x*_j, r_bar / r_j) for step j in [0, dim).
  double xstar_pow(int j, std::span<const double> x) const;

  /// d/dx_i of xstar_pow(j, .) by Richardson-extrapolated central
  /// differences with per-coordinate step h (1 + |x_i|).
  double dxstar_pow(int j, int i, std::span<const double> x, double h = 1e-6) const;

 private:
  StrictFeedbackSystem sys_;
  GainSet gains_;
  std::vector<StepSuppliers> steps_;
};

/// Builds the cascade controller for a strict-feedback system from a valid
/// gain set and per-step bound suppliers. Throws domain_error on invalid
/// gains, inconsistent dimensions or a missing supplier.
BacksteppingCascade backstep_synthesize(StrictFeedbackSystem sys, GainSet gains,
                                        std::vector<StepSuppliers> steps);

}  // namespace predt
