#include "predt/gains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "predt/errors.hpp"

namespace predt {

const GainConstraint* GainSet::failing() const {
  for (const auto& g : constraints)
    if (!g.ok) return &g;
  return nullptr;
}

double default_r_bar(std::span<const double> r) {
  if (r.empty()) throw domain_error("default_r_bar: empty weight list");
  double m = 0.0;
  for (double ri : r) m = std::max(m, ri);
  if (!(m > 0.0)) throw domain_error("default_r_bar: weights must be positive");
  return 2.0 * m;
}

GainSet derive_gain_set(std::span<const double> r, double kappa, double r_bar,
                        double k1, double k3, int n, double k4) {
  GainSet gs;
  gs.r.assign(r.begin(), r.end());
  gs.r_bar = r_bar;
  gs.kappa = kappa;
  gs.n = n;
  gs.k1 = k1;
  gs.k3 = k3;
  gs.k4 = k4;

  const double rb = r_bar;
  gs.b1 = 4.0 * rb / (4.0 * rb - kappa);
  gs.b2 = (4.0 * rb + rb * k3) / (4.0 * rb - kappa);
  gs.a = std::pow(2.0, -gs.b1) * k1;
  gs.k1_threshold = 1.0 - gs.b1 > 0.0
                        ? std::pow(2.0, gs.b1) / (1.0 - gs.b1)
                        : std::numeric_limits<double>::infinity();
  const double am = gs.a - gs.a * gs.b1 - 1.0;
  gs.c = (gs.a - gs.a * gs.b1) / (am * (gs.b2 - 1.0));
  gs.k2 = gs.c * std::pow(double(n), (rb * k3 + kappa) / (4.0 * rb - kappa)) *
          std::pow(2.0, gs.b2);

  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (double ri : gs.r) {
    rmin = std::min(rmin, ri);
    rmax = std::max(rmax, ri);
  }

  auto flag = [&gs](std::string name, bool ok, double margin) {
    gs.constraints.push_back({std::move(name), ok, margin});
  };
  flag("weights_positive", rmin > 0.0 && !gs.r.empty(), rmin);
  flag("kappa_negative", kappa < 0.0, -kappa);
  flag("r_bar_dominates", rb >= 2.0 * rmax, rb - 2.0 * rmax);
  flag("k4_positive", k4 > 0.0, k4);
  flag("k3_exceeds_kappa_ratio", k3 > -kappa / rb, k3 + kappa / rb);
  flag("k1_above_threshold", k1 > gs.k1_threshold, k1 - gs.k1_threshold);
  flag("a_margin", am > 0.0, am);

  gs.valid = std::all_of(gs.constraints.begin(), gs.constraints.end(),
                         [](const GainConstraint& g) { return g.ok; });
  return gs;
}

std::function<double(double)> rate_function(const GainSet& gains) {
  if (!gains.valid) {
    const GainConstraint* f = gains.failing();
    throw domain_error("rate_function: invalid gain set (" +
                       (f ? f->name : std::string("unknown")) + ")");
  }
  const double a = gains.a, b1 = gains.b1, c = gains.c, b2 = gains.b2;
  return [a, b1, c, b2](double s) {
    if (s < 0.0) throw domain_error("rate_function: s must be >= 0");
    if (s == 0.0) return 0.0;
    return a * std::pow(s, b1) + c * std::pow(s, b2);
  };
}

double rate_split_bound(const GainSet& gains) {
  const double ab = gains.a - gains.a * gains.b1;
  return 1.0 / ((1.0 - gains.b1) * gains.a) + (ab - 1.0) / ab;
}

double rate_envelope(const GainSet& gains, double s) {
  if (s < 0.0) throw domain_error("rate_envelope: s must be >= 0");
  if (s == 0.0) return 0.0;
  return s <= 1.0 ? gains.a * std::pow(s, gains.b1)
                  : gains.c * std::pow(s, gains.b2);
}

}  // namespace predt
