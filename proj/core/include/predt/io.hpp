#pragma once

#include <iosfwd>
#include <string>

#include "predt/certify.hpp"
#include "predt/mc.hpp"

namespace predt {

/// Shortest decimal string that round-trips the double.
std::string format_double(double v);

/// Header `t,x1,...,xn,u`, one row per grid point.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// Header `run,seed,status,settling_time`.
void write_samples_csv(std::ostream& os, std::span<const RunSample> samples);

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);

std::string summary_json(const SettlingStats& st, const SimConfig& sim);
std::string sweep_json(std::span<const SweepRow> rows, const SimConfig& sim);
std::string cert_report_json(const CertReport& rep);
std::string gain_set_json(const GainSet& gs);

}  // namespace predt
