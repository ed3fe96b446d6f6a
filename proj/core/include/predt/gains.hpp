#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace predt {

/// Outcome of one named derivation constraint. margin > 0 means satisfied
/// strictly, margin = 0 sits on the boundary (allowed only where the
/// constraint is non-strict, see derive_gain_set).
struct GainConstraint {
  std::string name;
  bool ok = false;
  double margin = 0.0;
};

/// Gains of the settling-rate function beta(s) = a s^b1 + c s^b2 together
/// with the homogeneity data they were derived from. k4 is the predefined
/// settling-time bound and passes through the derivation untouched.
struct GainSet {
  std::vector<double> r;  // homogeneity weights r_1..r_{n+1}
  double r_bar = 0.0;
  double kappa = 0.0;
  int n = 0;
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double k4 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double a = 0.0;
  double c = 0.0;             // (a - a b1) / ((a - a b1 - 1)(b2 - 1))
  double k1_threshold = 0.0;  // 2^b1 / (1 - b1)
  std::vector<GainConstraint> constraints;
  bool valid = false;

  /// First violated constraint, or nullptr when valid.
  const GainConstraint* failing() const;
};

/// Smallest admissible degree-normalization weight, 2 * max_i r[i].
double default_r_bar(std::span<const double> r);

/// Derives b1, b2, a, c, k2 and the k1 admissibility threshold from the
/// homogeneity weights and the free gains (k1, k3, k4):
///
///   b1 = 4 rb / (4 rb - kappa)          in (0,1) for kappa < 0
///   b2 = (4 rb + rb k3) / (4 rb - kappa) > 1 when k3 > -kappa/rb
///   a  = 2^{-b1} k1
///   k2 = c * n^{(rb k3 + kappa)/(4 rb - kappa)} * 2^{b2}
///
/// Hard-constraint violations are reported through `constraints` and
/// `valid`, never thrown; the numeric fields are still filled in so callers
/// can inspect how far off they are.
GainSet derive_gain_set(std::span<const double> r, double kappa, double r_bar,
                        double k1, double k3, int n, double k4);

/// The settling-rate function s -> a s^b1 + c s^b2 (strictly positive and
/// nondecreasing on (0, inf)). Throws domain_error on an invalid gain set.
std::function<double(double)> rate_function(const GainSet& gains);

/// Closed-form upper bound for the integral of 1/beta over (0, inf):
/// 1/((1-b1) a) + (a - a b1 - 1)/(a - a b1). Equals 1 by construction of c.
double rate_split_bound(const GainSet& gains);

/// Piecewise monomial minorant of the rate function: a s^b1 on (0,1] and
/// c s^b2 on [1, inf). Its reciprocal integrates exactly to the split bound,
/// which the certificate checks exploit.
double rate_envelope(const GainSet& gains, double s);

}  // namespace predt
