#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "predt/system.hpp"

namespace predt {

/// Euler-Maruyama configuration. eps_absorb = 0 disables the absorbing ball
/// (exact-hit detection only, which a grid essentially never triggers).
struct SimConfig {
  double dt = 1e-4;
  double t_max = 0.0;
  double eps_absorb = 1e-3;
  std::uint64_t seed = 0;
  double x_guard = 1e6;
};

enum class SimStatus { settled, unsettled, diverged };

const char* to_string(SimStatus s);

/// One simulated path on the uniform grid t_k = k dt. After the state enters
/// the absorbing ball it is clamped to exactly 0 and no further drift,
/// diffusion or control evaluations happen.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<double> controls;
  std::optional<double> settling_time;
  SimStatus status = SimStatus::unsettled;
  bool saturated = false;  // some control hit the controller's u_max cap
};

/// n Normal(0, dt) increments, deterministic in seed. The stream is its own
/// generator per call; unrelated seeds give unrelated streams.
std::vector<double> wiener_increments(std::uint64_t seed, std::size_t n, double dt);

/// Integrates x_{k+1} = x_k + f dt + g dW until absorption, the horizon, or
/// divergence (non-finite state or norm beyond x_guard, trajectory truncated
/// at the last good state).
Trajectory simulate(const ItoSystem& sys, const Controller& u,
                    std::span<const double> x0, const SimConfig& cfg);

/// Result of a path when only the settling outcome matters.
struct SettleResult {
  SimStatus status = SimStatus::unsettled;
  double time = 0.0;  // settling time, or the horizon when not settled
  bool saturated = false;
};

/// Same dynamics and RNG stream as simulate, without storing the path. A
/// settled path returns its absorption time; unsettled and diverged paths
/// return t_max.
SettleResult settle_time(const ItoSystem& sys, const Controller& u,
                         std::span<const double> x0, const SimConfig& cfg);

}  // namespace predt
