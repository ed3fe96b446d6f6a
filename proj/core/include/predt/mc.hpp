#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "predt/sim.hpp"

namespace predt {

/// Aggregate settling statistics over a batch of runs. Runs that do not
/// settle contribute T = t_max to every moment, so mean and CI are biased
/// upward and a positive verdict is conservative.
struct SettlingStats {
  int n_runs = 0;
  int n_settled = 0;
  int n_unsettled = 0;
  int n_diverged = 0;
  double mean = 0.0;
  double std_err = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double max = 0.0;
  double bound = 0.0;
  bool bound_satisfied = false;
  bool censored = false;
};

/// One row of the samples table.
struct RunSample {
  int run = 0;
  std::uint64_t seed = 0;
  SimStatus status = SimStatus::unsettled;
  double settling_time = 0.0;
};

/// Batch description. The controller is materialized per bound so sweeps
/// re-derive it (the bound enters the gains). Runs draw their initial state
/// from x0_set round-robin and their RNG stream from base_seed xor index.
struct RunConfig {
  ItoSystem sys;
  std::function<Controller(double bound)> controller_for_bound;
  std::vector<std::vector<double>> x0_set;
  SimConfig sim;  // sim.seed is ignored; t_max <= 0 means 3 * bound
  double bound = 1.0;
  int n_runs = 200;
  std::uint64_t base_seed = 0;
  int threads = 1;  // 0 = hardware concurrency
};

/// Runs the batch and aggregates. Per-run samples land in `samples` when
/// given (index order, independent of the parallelism degree). Throws
/// estimation_error when every run diverged.
SettlingStats estimate_settling(const RunConfig& cfg,
                                std::vector<RunSample>* samples = nullptr);

/// Sweep row: estimation failures are carried as flags, not exceptions.
struct SweepRow {
  double bound = 0.0;
  bool failed = false;
  std::string error;
  SettlingStats stats;
};

/// One estimate per bound, input order preserved. Row seeds are decorrelated
/// so repeated bounds give independent (compatible, not identical) samples.
std::vector<SweepRow> sweep_bound(const RunConfig& cfg,
                                  std::span<const double> bounds);

}  // namespace predt
