#include "predt/presets.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "predt/controllers.hpp"
#include "predt/errors.hpp"
#include "predt/sigpow.hpp"

namespace predt {
namespace {

double knob(const std::map<std::string, double>& knobs, const std::string& key,
            double fallback) {
  auto it = knobs.find(key);
  return it == knobs.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, double>& knobs,
                    std::initializer_list<const char*> allowed,
                    const std::string& preset) {
  for (const auto& [key, _] : knobs) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known)
      throw domain_error("preset " + preset + ": unknown knob '" + key + "'");
  }
}

ScalarField quadratic_field() {
  ScalarField V;
  V.value = [](std::span<const double> x) { return x[0] * x[0]; };
  V.gradient = [](std::span<const double> x) {
    return std::vector<double>{2.0 * x[0]};
  };
  V.hessian = [](std::span<const double>) { return std::vector<double>{2.0}; };
  return V;
}

Preset make_example21(const std::map<std::string, double>& knobs) {
  reject_unknown(knobs, {"x_guard", "u_max"}, "example21");
  const double x_guard = knob(knobs, "x_guard", 6.0);
  const double u_max = knob(knobs, "u_max", 1e12);

  Preset p;
  p.name = "example21";
  p.sfs.dim = 1;
  p.sfs.q = {1.0};
  p.sfs.h_lo = {1.0};
  p.sfs.h_hi = {1.0};
  p.sfs.h_sim = {1.0};
  p.sfs.f = {[](std::span<const double>) { return 0.0; }};
  p.sfs.g = {[](std::span<const double> x) { return x[0]; }};
  p.closed = close_loop(p.sfs);
  p.controller_for_bound = [x_guard, u_max](double bound) {
    return predefined_controller_scalar(bound, x_guard, u_max);
  };
  p.certificate = [](double bound) {
    LyapunovSpec spec;
    spec.V = quadratic_field();
    spec.beta = [](double s) {
      return std::sqrt(std::numbers::pi_v<double>) * std::sqrt(s) * std::exp(s);
    };
    spec.alpha = bound;
    return spec;
  };
  p.default_x0 = {{1.0}};
  p.default_bound = 1.0;
  return p;
}

Preset make_example41(const std::map<std::string, double>& knobs) {
  reject_unknown(knobs, {"k1", "k2", "k3"}, "example41");
  const double k1 = knob(knobs, "k1", 4.1);
  const double k3 = knob(knobs, "k3", 3.0);
  const double k2 = knob(knobs, "k2", example41_gain_k2(k1, k3));

  Preset p;
  p.name = "example41";
  p.sfs.dim = 1;
  p.sfs.q = {1.0};
  p.sfs.h_lo = {1.0};
  p.sfs.h_hi = {1.0};
  p.sfs.h_sim = {1.0};
  p.sfs.f = {[](std::span<const double> x) { return sigpow(x[0], 5.0 / 3.0); }};
  p.sfs.g = {[](std::span<const double> x) { return x[0] * x[0]; }};
  p.closed = close_loop(p.sfs);
  p.controller_for_bound = [k1, k2, k3](double bound) {
    return example41_controller(k1, k2, k3, bound);
  };
  p.certificate = [k1, k2, k3](double bound) {
    LyapunovSpec spec;
    spec.V = quadratic_field();
    spec.beta = [k1, k2, k3](double s) {
      if (s == 0.0) return 0.0;
      return k1 * std::pow(s, 2.0 / 3.0) + k2 * std::pow(s, (k3 + 1.0) / 2.0);
    };
    spec.alpha = bound;
    return spec;
  };
  p.default_x0 = {{1.0}};
  p.default_bound = 2.0;
  return p;
}

Preset make_example42(const std::map<std::string, double>& knobs) {
  reject_unknown(knobs, {"h1", "h2"}, "example42");
  const double h1 = knob(knobs, "h1", 1.0);
  const double h2 = knob(knobs, "h2", 1.0);

  Preset p;
  p.name = "example42";
  p.sfs.dim = 2;
  p.sfs.q = {5.0 / 3.0, 4.0 / 3.0};
  p.sfs.h_lo = {1.0, 1.0};
  p.sfs.h_hi = {1.0, 2.0};
  p.sfs.h_sim = {h1, h2};
  p.sfs.kappa = -0.25;
  p.sfs.f = {[](std::span<const double> x) { return -sigpow(x[0], 0.75); },
             [](std::span<const double>) { return 0.0; }};
  p.sfs.g = {[](std::span<const double> x) {
               return std::sin(x[0]) * std::fabs(x[0]);
             },
             [](std::span<const double>) { return 0.0; }};
  if (!(h1 >= p.sfs.h_lo[0] && h1 <= p.sfs.h_hi[0]) ||
      !(h2 >= p.sfs.h_lo[1] && h2 <= p.sfs.h_hi[1]))
    throw domain_error("preset example42: h knobs outside the design envelope");
  p.closed = close_loop(p.sfs);

  // The controller ships with k2 pinned at 494.6; p.gains keeps the formula
  // value so the derivation stays auditable.
  const std::array<double, 3> r = {1.0, 0.45, 0.15};
  GainSet derived = derive_gain_set(r, -0.25, 2.0, 65.6, 3.1, 2, 3.0);
  p.gains = derived;
  GainSet deployed = derived;
  deployed.k2 = 494.6;

  // step-1 envelope suppliers pinned so the synthesized gain-function
  // constant lands on 47.1: coef * psi^2 + n k1/(h1_lo k4) + phi/h1_lo = 47.1
  const double coef = (4.0 * deployed.r_bar - deployed.kappa - deployed.r[0]) /
                      (2.0 * deployed.r[0] * p.sfs.h_lo[0]);
  const double base = double(deployed.n) * deployed.k1 / (p.sfs.h_lo[0] * deployed.k4);
  const double psi = std::sqrt((47.1 - base - 1.0) / coef);

  std::vector<StepSuppliers> steps(2);
  steps[0].phi_hat = [](std::span<const double>) { return 1.0; };
  steps[0].psi_bar = [psi](std::span<const double>) { return psi; };
  auto unit = [](std::span<const double>) { return 1.0; };
  steps[1].alpha2 = unit;
  steps[1].alpha3 = unit;
  steps[1].alpha4 = unit;
  p.cascade = backstep_synthesize(p.sfs, deployed, std::move(steps));

  p.controller_for_bound = [](double) { return example42_controller(); };
  p.default_x0 = {{0.0, 1.5}, {0.02, 0.5}, {0.0, -1.5}};
  p.default_bound = 3.0;
  return p;
}

}  // namespace

Preset make_preset(const std::string& name,
                   const std::map<std::string, double>& knobs) {
  if (name == "example21") return make_example21(knobs);
  if (name == "example41") return make_example41(knobs);
  if (name == "example42") return make_example42(knobs);
  throw domain_error("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"example21", "example41", "example42"};
}

}  // namespace predt
