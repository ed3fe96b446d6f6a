#include "predt/io.hpp"

#include <charconv>
#include <ostream>

#include <json.hpp>

namespace predt {

std::string format_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
  os << "t";
  for (std::size_t i = 1; i <= n; ++i) os << ",x" << i;
  os << ",u\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    os << format_double(traj.times[k]);
    for (double xi : traj.states[k]) os << ',' << format_double(xi);
    os << ',' << format_double(traj.controls[k]) << '\n';
  }
}

void write_samples_csv(std::ostream& os, std::span<const RunSample> samples) {
  os << "run,seed,status,settling_time\n";
  for (const RunSample& s : samples) {
    os << s.run << ',' << s.seed << ',' << to_string(s.status) << ','
       << format_double(s.settling_time) << '\n';
  }
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << "bound,n_runs,n_settled,n_unsettled,n_diverged,mean,std_err,ci_lo,ci_hi,"
        "max,bound_satisfied,censored,failed\n";
  for (const SweepRow& r : rows) {
    const SettlingStats& s = r.stats;
    os << format_double(r.bound) << ',' << s.n_runs << ',' << s.n_settled << ','
       << s.n_unsettled << ',' << s.n_diverged << ',' << format_double(s.mean)
       << ',' << format_double(s.std_err) << ',' << format_double(s.ci_lo) << ','
       << format_double(s.ci_hi) << ',' << format_double(s.max) << ','
       << (s.bound_satisfied ? "true" : "false") << ','
       << (s.censored ? "true" : "false") << ',' << (r.failed ? "true" : "false")
       << '\n';
  }
}

namespace {

nlohmann::json stats_json(const SettlingStats& st, const SimConfig& sim) {
  return nlohmann::json{{"n_runs", st.n_runs},
                        {"n_settled", st.n_settled},
                        {"n_unsettled", st.n_unsettled},
                        {"n_diverged", st.n_diverged},
                        {"mean", st.mean},
                        {"std_err", st.std_err},
                        {"ci_lo", st.ci_lo},
                        {"ci_hi", st.ci_hi},
                        {"max", st.max},
                        {"bound", st.bound},
                        {"bound_satisfied", st.bound_satisfied},
                        {"censored", st.censored},
                        {"dt", sim.dt},
                        {"eps_absorb", sim.eps_absorb}};
}

}  // namespace

std::string summary_json(const SettlingStats& st, const SimConfig& sim) {
  return stats_json(st, sim).dump(2) + "\n";
}

std::string sweep_json(std::span<const SweepRow> rows, const SimConfig& sim) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SweepRow& r : rows) {
    nlohmann::json row;
    row["bound"] = r.bound;
    row["failed"] = r.failed;
    if (r.failed) {
      row["error"] = r.error;
    } else {
      row["stats"] = stats_json(r.stats, sim);
    }
    arr.push_back(std::move(row));
  }
  return arr.dump(2) + "\n";
}

std::string cert_report_json(const CertReport& rep) {
  nlohmann::json j{{"grid_size", rep.grid_size},
                   {"max_residual", rep.max_residual},
                   {"argmax_state", rep.argmax_state},
                   {"n_flagged", rep.n_flagged},
                   {"integral", rep.integral},
                   {"integral_err", rep.integral_err},
                   {"integral_unbounded", rep.integral_unbounded},
                   {"drift_ok", rep.drift_ok},
                   {"integral_ok", rep.integral_ok},
                   {"verdict", rep.verdict}};
  return j.dump(2) + "\n";
}

std::string gain_set_json(const GainSet& gs) {
  nlohmann::json flags = nlohmann::json::array();
  for (const GainConstraint& g : gs.constraints) {
    flags.push_back({{"name", g.name}, {"ok", g.ok}, {"margin", g.margin}});
  }
  nlohmann::json j{{"r", gs.r},
                   {"r_bar", gs.r_bar},
                   {"kappa", gs.kappa},
                   {"n", gs.n},
                   {"k1", gs.k1},
                   {"k2", gs.k2},
                   {"k3", gs.k3},
                   {"k4", gs.k4},
                   {"b1", gs.b1},
                   {"b2", gs.b2},
                   {"a", gs.a},
                   {"c", gs.c},
                   {"k1_threshold", gs.k1_threshold},
                   {"constraints", std::move(flags)},
                   {"valid", gs.valid}};
  return j.dump(2) + "\n";
}

}  // namespace predt
