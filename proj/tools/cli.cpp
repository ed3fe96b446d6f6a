#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "predt/config.hpp"
#include "predt/errors.hpp"
#include "predt/gains.hpp"
#include "predt/io.hpp"
#include "predt/mc.hpp"
#include "predt/presets.hpp"
#include "predt/sim.hpp"
#include "predt/system.hpp"

namespace predt {
namespace {

double parse_real(const std::string& tok) {
  const auto slash = tok.find('/');
  try {
    if (slash != std::string::npos) {
      const double num = std::stod(tok.substr(0, slash));
      const double den = std::stod(tok.substr(slash + 1));
      if (den == 0.0) throw config_error("division by zero in '" + tok + "'");
      return num / den;
    }
    return std::stod(tok);
  } catch (const std::invalid_argument&) {
    throw config_error("bad number '" + tok + "'");
  } catch (const std::out_of_range&) {
    throw config_error("number out of range '" + tok + "'");
  }
}

std::vector<double> parse_reals(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(parse_real(tok));
  }
  if (out.empty()) throw config_error("empty number list '" + csv + "'");
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw config_error("write failed for '" + path + "'");
}

/// Everything the subcommands share. Flag values override config values,
/// config values override preset defaults.
struct Context {
  Config cfg;
  std::string preset_name;
  std::string out_path;

  std::optional<std::uint64_t> seed_flag;
  std::optional<int> runs_flag;
  std::optional<double> dt_flag, eps_flag, bound_flag, tmax_flag;
  std::optional<int> threads_flag;
  std::vector<std::string> x0_flag;

  std::map<std::string, double> knobs() const {
    std::map<std::string, double> k;
    for (const auto& key : cfg.keys("system")) {
      if (key == "preset") continue;
      k[key] = cfg.number("system", key, 0.0);
    }
    for (const auto& key : cfg.keys("controller")) {
      k[key] = cfg.number("controller", key, 0.0);
    }
    return k;
  }

  Preset preset() const {
    std::string name = preset_name;
    if (name.empty()) name = cfg.string("system", "preset", "");
    if (name.empty())
      throw config_error("no preset selected (use --preset or [system] preset)");
    return make_preset(name, knobs());
  }

  double bound(const Preset& p) const {
    if (bound_flag) return *bound_flag;
    return cfg.number("mc", "bound", p.default_bound);
  }

  SimConfig sim(double bound_value) const {
    SimConfig s;
    s.dt = dt_flag ? *dt_flag : cfg.number("sim", "dt", 1e-4);
    s.eps_absorb = eps_flag ? *eps_flag : cfg.number("sim", "eps_absorb", 1e-3);
    s.t_max = tmax_flag ? *tmax_flag : cfg.number("sim", "t_max", 0.0);
    if (s.t_max <= 0.0) s.t_max = 3.0 * bound_value;
    s.x_guard = cfg.number("sim", "x_guard", 1e6);
    s.seed = base_seed();
    return s;
  }

  std::uint64_t base_seed() const {
    if (seed_flag) return *seed_flag;
    return cfg.uinteger("mc", "seed", 0);
  }

  int runs() const {
    if (runs_flag) return *runs_flag;
    return int(cfg.integer("mc", "runs", 200));
  }

  int threads() const {
    if (threads_flag) return *threads_flag;
    return int(cfg.integer("mc", "threads", 1));
  }

  std::vector<std::vector<double>> x0_set(const Preset& p) const {
    if (!x0_flag.empty()) {
      std::vector<std::vector<double>> pts;
      pts.reserve(x0_flag.size());
      for (const auto& raw : x0_flag) pts.push_back(parse_reals(raw));
      return pts;
    }
    auto pts = cfg.points("mc", "x0", p.sfs.dim);
    if (!pts.empty()) return pts;
    return p.default_x0;
  }

  RunConfig run_config(const Preset& p) const {
    RunConfig rc;
    rc.sys = p.closed;
    rc.controller_for_bound = p.controller_for_bound;
    rc.bound = bound(p);
    rc.sim = sim(rc.bound);
    rc.x0_set = x0_set(p);
    rc.n_runs = runs();
    rc.base_seed = base_seed();
    rc.threads = threads();
    for (const auto& pt : rc.x0_set)
      if ((int)pt.size() != p.sfs.dim)
        throw config_error("x0 has wrong dimension for preset " + p.name);
    return rc;
  }

  void emit(const std::string& path, const std::string& content) const {
    if (path.empty()) {
      std::cout << content;
    } else {
      write_file(path, content);
    }
  }
};

int cmd_simulate(const Context& ctx) {
  const Preset p = ctx.preset();
  const double bound = ctx.bound(p);
  const SimConfig sim_cfg = ctx.sim(bound);
  const auto x0s = ctx.x0_set(p);
  const Controller u = p.controller_for_bound(bound);
  const Trajectory traj = simulate(p.closed, u, x0s.front(), sim_cfg);
  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  ctx.emit(ctx.out_path, csv.str());
  if (traj.saturated)
    std::cerr << "warning: control saturated at the u_max cap\n";
  std::cerr << "status: " << to_string(traj.status);
  if (traj.settling_time)
    std::cerr << ", settling_time: " << format_double(*traj.settling_time);
  std::cerr << "\n";
  return 0;
}

int cmd_mc(const Context& ctx) {
  const Preset p = ctx.preset();
  const RunConfig rc = ctx.run_config(p);
  std::vector<RunSample> samples;
  const SettlingStats st = estimate_settling(rc, &samples);
  std::ostringstream csv;
  write_samples_csv(csv, samples);
  const std::string summary = summary_json(st, rc.sim);
  if (ctx.out_path.empty()) {
    std::cout << summary;
  } else {
    write_file(ctx.out_path + ".samples.csv", csv.str());
    write_file(ctx.out_path + ".summary.json", summary);
    std::cout << summary;
  }
  return st.bound_satisfied ? 0 : 1;
}

int cmd_sweep(const Context& ctx, const std::string& bounds_raw) {
  const Preset p = ctx.preset();
  std::vector<double> bounds;
  if (!bounds_raw.empty()) {
    bounds = parse_reals(bounds_raw);
  } else if (const ConfigValue* v = ctx.cfg.find("mc", "bounds")) {
    if (v->kind != ConfigValue::Kind::array)
      throw config_error("[mc] bounds must be an array");
    for (const auto& e : v->items) bounds.push_back(e.as_number());
  }
  if (bounds.empty())
    throw config_error("sweep needs --bounds or [mc] bounds");
  RunConfig rc = ctx.run_config(p);
  const auto rows = sweep_bound(rc, bounds);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  const std::string json = sweep_json(rows, rc.sim);
  if (ctx.out_path.empty()) {
    std::cout << json;
  } else {
    write_file(ctx.out_path + ".sweep.csv", csv.str());
    write_file(ctx.out_path + ".sweep.json", json);
    std::cout << json;
  }
  for (const auto& r : rows)
    if (r.failed || !r.stats.bound_satisfied) return 1;
  return 0;
}

int cmd_certify(const Context& ctx, bool use_fd, double tol_flag, double grid_lo,
                double grid_hi, int grid_n) {
  const Preset p = ctx.preset();
  if (!p.certificate)
    throw config_error("preset " + p.name + " has no closed-form certificate");
  const double bound = ctx.bound(p);
  const LyapunovSpec spec = p.certificate(bound);
  const Controller u = p.controller_for_bound(bound);
  const auto grid = grid_1d(grid_lo, grid_hi, grid_n);
  const double tol = tol_flag > 0.0 ? tol_flag : (use_fd ? 1e-4 : 1e-9);
  const CertReport rep = check_drift_condition(p.closed, u, spec, grid, tol, use_fd);
  ctx.emit(ctx.out_path, cert_report_json(rep));
  return rep.verdict ? 0 : 1;
}

int cmd_gains(const Context& ctx, const std::string& q_raw, double kappa,
              double r_bar, double k1, double k3, double k4, bool have_kappa) {
  std::vector<double> q;
  std::vector<double> r;
  int n = 0;

  std::string preset_name = ctx.preset_name;
  if (preset_name.empty()) preset_name = ctx.cfg.string("system", "preset", "");

  if (!q_raw.empty()) {
    q = parse_reals(q_raw);
  } else if (const ConfigValue* v = ctx.cfg.find("controller", "q")) {
    if (v->kind != ConfigValue::Kind::array)
      throw config_error("[controller] q must be an array");
    for (const auto& e : v->items) q.push_back(e.as_number());
  }

  if (!preset_name.empty() && q.empty()) {
    const Preset p = make_preset(preset_name);
    if (!p.gains)
      throw config_error("preset " + preset_name +
                         " has no gain derivation; pass q and kappa explicitly");
    const GainSet& d = *p.gains;
    r = d.r;
    n = d.n;
    if (!have_kappa) kappa = d.kappa;
    if (r_bar <= 0.0) r_bar = d.r_bar;
    if (k1 <= 0.0) k1 = d.k1;
    if (k3 <= 0.0) k3 = d.k3;
    if (k4 <= 0.0) k4 = d.k4;
  } else {
    if (q.empty()) throw config_error("gains needs --q (or a preset with gains)");
    if (!have_kappa) {
      const ConfigValue* v = ctx.cfg.find("controller", "kappa");
      if (!v) throw config_error("gains needs --kappa");
      kappa = v->as_number();
    }
    k1 = k1 > 0.0 ? k1 : ctx.cfg.number("controller", "k1", 0.0);
    k3 = k3 > 0.0 ? k3 : ctx.cfg.number("controller", "k3", 0.0);
    k4 = k4 > 0.0 ? k4 : ctx.cfg.number("controller", "k4", 0.0);
    if (!(k1 > 0.0) || !(k3 > 0.0) || !(k4 > 0.0))
      throw config_error("gains needs positive k1, k3, k4");
    r = homogeneity_weights(q, kappa);
    n = int(q.size());
    if (r_bar <= 0.0) r_bar = ctx.cfg.number("controller", "r_bar", 0.0);
    if (r_bar <= 0.0) r_bar = default_r_bar(r);
  }

  const GainSet gs = derive_gain_set(r, kappa, r_bar, k1, k3, n, k4);
  ctx.emit(ctx.out_path, gain_set_json(gs));
  return gs.valid ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"predefined-time stochastic stabilization toolkit"};
  app.require_subcommand(1);

  Context ctx;
  std::string config_path;
  std::string bounds_raw, q_raw;
  bool use_fd = false;
  double tol_flag = 0.0, grid_lo = -3.0, grid_hi = 3.0;
  int grid_n = 601;
  double kappa = 0.0, r_bar = 0.0, k1 = 0.0, k3 = 0.0, k4 = 0.0;

  std::uint64_t seed_val = 0;
  int runs_val = 0, threads_val = 0;
  double dt_val = 0.0, eps_val = 0.0, bound_val = 0.0, tmax_val = 0.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "config file (TOML-style)");
    sub->add_option("--out", ctx.out_path, "output path");
    sub->add_option("--preset", ctx.preset_name, "preset name");
    sub->add_option("--seed", seed_val, "base RNG seed");
    sub->add_option("--bound", bound_val, "settling-time bound (alpha / k4)");
    sub->add_option("--dt", dt_val, "integration step");
    sub->add_option("--eps", eps_val, "absorbing radius");
  };

  CLI::App* sim_cmd = app.add_subcommand("simulate", "integrate one trajectory to CSV");
  add_common(sim_cmd);
  sim_cmd->add_option("--x0", ctx.x0_flag, "initial state 'v1,v2,...'");
  sim_cmd->add_option("--tmax", tmax_val, "horizon");

  CLI::App* mc_cmd = app.add_subcommand("mc", "Monte Carlo settling-time estimate");
  add_common(mc_cmd);
  mc_cmd->add_option("--x0", ctx.x0_flag, "initial state 'v1,v2,...' (repeatable)");
  mc_cmd->add_option("--runs", runs_val, "number of runs");
  mc_cmd->add_option("--threads", threads_val, "worker threads (0 = all cores)");
  mc_cmd->add_option("--tmax", tmax_val, "horizon");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "estimate across several bounds");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--x0", ctx.x0_flag, "initial state (repeatable)");
  sweep_cmd->add_option("--runs", runs_val, "runs per bound");
  sweep_cmd->add_option("--threads", threads_val, "worker threads");
  sweep_cmd->add_option("--bounds", bounds_raw, "comma list of bounds");

  CLI::App* cert_cmd = app.add_subcommand("certify", "drift-condition certificate check");
  add_common(cert_cmd);
  cert_cmd->add_flag("--fd", use_fd, "finite-difference generator");
  cert_cmd->add_option("--tol", tol_flag, "residual tolerance");
  cert_cmd->add_option("--grid-lo", grid_lo, "grid lower end");
  cert_cmd->add_option("--grid-hi", grid_hi, "grid upper end");
  cert_cmd->add_option("--grid-n", grid_n, "grid points");

  CLI::App* gains_cmd = app.add_subcommand("gains", "derive rate-function gains");
  add_common(gains_cmd);
  gains_cmd->add_option("--q", q_raw, "powers, e.g. '5/3,4/3'");
  gains_cmd->add_option("--kappa", kappa, "homogeneity offset (negative)");
  gains_cmd->add_option("--rbar", r_bar, "degree normalization (0 = auto)");
  gains_cmd->add_option("--k1", k1, "gain k1");
  gains_cmd->add_option("--k3", k3, "gain k3");
  gains_cmd->add_option("--k4", k4, "target bound k4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  // each() in CLI11 runs as a validator, before the bound variable is
  // written, so flag presence is read back off the parsed subcommand.
  bool have_kappa = false;
  for (CLI::App* sub : {sim_cmd, mc_cmd, sweep_cmd, cert_cmd, gains_cmd}) {
    if (!sub->parsed()) continue;
    auto given = [sub](const char* name) {
      const CLI::Option* o = sub->get_option_no_throw(name);
      return o != nullptr && o->count() > 0;
    };
    if (given("--seed")) ctx.seed_flag = seed_val;
    if (given("--bound")) ctx.bound_flag = bound_val;
    if (given("--dt")) ctx.dt_flag = dt_val;
    if (given("--eps")) ctx.eps_flag = eps_val;
    if (given("--tmax")) ctx.tmax_flag = tmax_val;
    if (given("--runs")) ctx.runs_flag = runs_val;
    if (given("--threads")) ctx.threads_flag = threads_val;
    if (given("--kappa")) have_kappa = true;
  }

  try {
    if (!config_path.empty()) ctx.cfg = Config::parse_file(config_path);
    if (sim_cmd->parsed()) return cmd_simulate(ctx);
    if (mc_cmd->parsed()) return cmd_mc(ctx);
    if (sweep_cmd->parsed()) return cmd_sweep(ctx, bounds_raw);
    if (cert_cmd->parsed())
      return cmd_certify(ctx, use_fd, tol_flag, grid_lo, grid_hi, grid_n);
    if (gains_cmd->parsed())
      return cmd_gains(ctx, q_raw, kappa, r_bar, k1, k3, k4, have_kappa);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const estimation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const evaluation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace predt
