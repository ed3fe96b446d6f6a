#pragma once

#include <map>
#include <optional>
#include <string>

#include "predt/backstep.hpp"
#include "predt/certify.hpp"
#include "predt/system.hpp"

namespace predt {

/// A ready-to-run study: the plant, a controller factory parameterized by the
/// settling-time bound, the Lyapunov certificate when a closed form exists,
/// and simulation defaults. The cascade is populated where the controller is
/// synthesized by backstepping (example42), alongside its gain derivation.
struct Preset {
  std::string name;
  StrictFeedbackSystem sfs;
  ItoSystem closed;
  std::function<Controller(double bound)> controller_for_bound;
  std::function<LyapunovSpec(double bound)> certificate;  // null when none exists
  std::optional<BacksteppingCascade> cascade;
  std::optional<GainSet> gains;
  std::vector<std::vector<double>> default_x0;
  double default_bound = 1.0;
};

/// Preset registry:
///   example21  scalar plant dx = u dt + x dw with the exponential
///              predefined-time law; bound = alpha. Knobs: x_guard, u_max.
///   example41  scalar plant dx = (sigpow(x,5/3) + u) dt + x^2 dw;
///              bound = k4. Knobs: k1, k3, k2 (derived when omitted).
///   example42  two-state strict-feedback plant with the printed backstepping
///              law; bound fixed at k4 = 3 by the printed gains.
///              Knobs: h1, h2 (simulation gains inside the design envelope).
Preset make_preset(const std::string& name,
                   const std::map<std::string, double>& knobs = {});

std::vector<std::string> preset_names();

}  // namespace predt
