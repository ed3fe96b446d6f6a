#include "predt/backstep.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "predt/errors.hpp"
#include "predt/sigpow.hpp"

namespace predt {

double default_alpha1(const StrictFeedbackSystem& sys, const GainSet& gains, int j) {
  if (j <= 0) return 0.0;  // no previous error to absorb
  if (j >= sys.dim) throw domain_error("default_alpha1: step index out of range");
  const double rb = gains.r_bar;
  const double rp = gains.r[j - 1];  // weight of the previous step
  const double kap = gains.kappa;
  const double h_hi = sys.h_hi[j - 1];
  const double lever = h_hi * std::pow(2.0, 1.0 - (rp + kap) / rb);
  const double phi = rb * gains.k1 / (gains.k4 * (4.0 * rb - kap - rp) * lever);
  return lever * (rp + kap) / (4.0 * rb) *
         std::pow(phi, -(4.0 * rb - kap - rp) / (rp + kap));
}

BacksteppingCascade::BacksteppingCascade(StrictFeedbackSystem sys, GainSet gains,
                                         std::vector<StepSuppliers> steps)
    : sys_(std::move(sys)), gains_(std::move(gains)), steps_(std::move(steps)) {
  const int n = sys_.dim;
  if (n < 1) throw domain_error("backstep: system dimension must be >= 1");
  if (!gains_.valid) {
    const GainConstraint* f = gains_.failing();
    throw domain_error("backstep: invalid gain set (" +
                       (f ? f->name : std::string("unknown")) + ")");
  }
  if (gains_.n != n) throw domain_error("backstep: gain set sized for a different system");
  if ((int)gains_.r.size() != n + 1)
    throw domain_error("backstep: need n+1 homogeneity weights");
  if ((int)sys_.q.size() != n || (int)sys_.h_lo.size() != n || (int)sys_.h_hi.size() != n)
    throw domain_error("backstep: q/h envelopes must have one entry per state");
  for (int i = 0; i < n; ++i) {
    if (!(sys_.h_lo[i] > 0.0) || !(sys_.h_lo[i] <= sys_.h_hi[i]))
      throw domain_error("backstep: need 0 < h_lo <= h_hi");
    if (!(sys_.q[i] >= 1.0)) throw domain_error("backstep: need q_i >= 1");
  }
  if ((int)steps_.size() != n)
    throw domain_error("backstep: need one supplier set per step");
  if (!steps_[0].phi_hat || !steps_[0].psi_bar)
    throw domain_error("backstep: step 0 missing phi_hat/psi_bar supplier");
  for (int j = 1; j < n; ++j) {
    if (!steps_[j].alpha2 || !steps_[j].alpha3 || !steps_[j].alpha4) {
      std::ostringstream msg;
      msg << "backstep: step " << j << " missing alpha supplier";
      throw domain_error(msg.str());
    }
  }
}

CascadeState BacksteppingCascade::evaluate(std::span<const double> x) const {
  const int n = sys_.dim;
  if ((int)x.size() != n) throw domain_error("backstep: wrong state dimension");
  const double rb = gains_.r_bar;
  const double k1 = gains_.k1, k2 = gains_.k2, k3 = gains_.k3, k4 = gains_.k4;

  CascadeState cs;
  cs.xi.resize(n);
  cs.x_star.assign(n, 0.0);
  cs.beta.resize(n);
  for (int j = 0; j < n; ++j) {
    if (j > 0) cs.x_star[j] = -cs.beta[j - 1] * sigpow(cs.xi[j - 1], gains_.r[j] / rb);
    cs.xi[j] = sigpow(x[j], rb / gains_.r[j]) - sigpow(cs.x_star[j], rb / gains_.r[j]);

    const double h_lo = sys_.h_lo[j];
    double base = (n - j) * k1 / (h_lo * k4) +
                  k2 / (k4 * h_lo) * std::pow(std::fabs(cs.xi[j]), k3);
    if (j == 0) {
      const double psi = steps_[0].psi_bar(x);
      base += (4.0 * rb - gains_.kappa - gains_.r[0]) / (2.0 * gains_.r[0] * h_lo) *
                  psi * psi +
              steps_[0].phi_hat(x) / h_lo;
    } else {
      const double a1 = steps_[j].alpha1 ? steps_[j].alpha1(x)
                                         : default_alpha1(sys_, gains_, j);
      base += (a1 + steps_[j].alpha2(x) + steps_[j].alpha3(x) + steps_[j].alpha4(x)) / h_lo;
    }
    cs.beta[j] = std::pow(base, 1.0 / sys_.q[j]);
  }
  return cs;
}

double BacksteppingCascade::control(std::span<const double> x) const {
  const int n = sys_.dim;
  const CascadeState cs = evaluate(x);
  return -cs.beta[n - 1] * sigpow(cs.xi[n - 1], gains_.r[n] / gains_.r_bar);
}

Controller BacksteppingCascade::controller() const {
  Controller c;
  std::ostringstream d;
  d << "backstepping cascade, n=" << sys_.dim << ", u = -beta_n sigpow(xi_n, "
    << gains_.r[sys_.dim] / gains_.r_bar << ")";
  c.description = d.str();
  c.params = {{"k1", gains_.k1}, {"k2", gains_.k2}, {"k3", gains_.k3},
              {"k4", gains_.k4}, {"r_bar", gains_.r_bar}, {"kappa", gains_.kappa}};
  c.eval = [cascade = *this](std::span<const double> x) { return cascade.control(x); };
  return c;
}

double BacksteppingCascade::xstar_pow(int j, std::span<const double> x) const {
  if (j < 0 || j >= sys_.dim) throw domain_error("xstar_pow: step index out of range");
  if (j == 0) return 0.0;
  const CascadeState cs = evaluate(x);
  return sigpow(cs.x_star[j], gains_.r_bar / gains_.r[j]);
}

double BacksteppingCascade::dxstar_pow(int j, int i, std::span<const double> x,
                                       double h) const {
  if (i < 0 || i >= sys_.dim) throw domain_error("dxstar_pow: coordinate out of range");
  if (j == 0) return 0.0;
  if (!(h > 0.0)) throw domain_error("dxstar_pow: need h > 0");
  std::vector<double> xp(x.begin(), x.end());
  const double hi = h * (1.0 + std::fabs(x[i]));
  auto central = [&](double step) {
    xp[i] = x[i] + step;
    const double up = xstar_pow(j, xp);
    xp[i] = x[i] - step;
    const double dn = xstar_pow(j, xp);
    xp[i] = x[i];
    return (up - dn) / (2.0 * step);
  };
  const double d1 = central(hi);
  const double d2 = central(0.5 * hi);
  return (4.0 * d2 - d1) / 3.0;
}

BacksteppingCascade backstep_synthesize(StrictFeedbackSystem sys, GainSet gains,
                                        std::vector<StepSuppliers> steps) {
  return BacksteppingCascade(std::move(sys), std::move(gains), std::move(steps));
}

}  // namespace predt
