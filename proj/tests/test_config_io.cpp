#include <doctest.h>

#include <json.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "predt/config.hpp"
#include "predt/errors.hpp"
#include "predt/io.hpp"

using namespace predt;

namespace {

const char* kSample = R"(# top comment
title = "two-state study"   # inline comment
threads = 4

[system]
preset = "example42"
h1 = 1.0
h2 = 1.5
note = "tab\there \"quoted\" back\\slash"

[sim]
dt = 1e-4
eps_absorb = 0.001
record = true
dt = 2e-4          # duplicate: last one wins

[mc]
seed = 42
bounds = [4, 2, 0.5]
x0 = [
  [0.0, 1.5],
  [0.02, 0.5],
  [0.0, -1.5],   # trailing comma next
]
)";

}  // namespace

TEST_CASE("config parses sections, scalars, strings and arrays") {
  const Config cfg = Config::parse(kSample);

  CHECK(cfg.string("", "title", "") == "two-state study");
  CHECK(cfg.integer("", "threads", 0) == 4);
  CHECK(cfg.string("system", "preset", "") == "example42");
  CHECK(cfg.number("system", "h2", 0.0) == 1.5);
  CHECK(cfg.string("system", "note", "") == "tab\there \"quoted\" back\\slash");
  CHECK(cfg.number("sim", "dt", 0.0) == 2e-4);
  CHECK(cfg.boolean("sim", "record", false));
  CHECK(cfg.uinteger("mc", "seed", 0) == 42);

  CHECK(cfg.has("sim", "eps_absorb"));
  CHECK(!cfg.has("sim", "t_max"));
  CHECK(cfg.number("sim", "t_max", 6.0) == 6.0);  // fallback
  CHECK(cfg.find("nope", "dt") == nullptr);

  const auto keys = cfg.keys("sim");
  CHECK(keys == std::vector<std::string>{"dt", "eps_absorb", "record"});
  CHECK(cfg.keys("missing").empty());
}

TEST_CASE("config getters enforce value kinds") {
  const Config cfg = Config::parse(kSample);
  CHECK_THROWS_AS((void)cfg.integer("sim", "dt", 0), config_error);      // float key
  CHECK_THROWS_AS((void)cfg.boolean("mc", "seed", false), config_error);
  CHECK_THROWS_AS((void)cfg.string("mc", "seed", ""), config_error);
  CHECK_THROWS_AS((void)cfg.number("", "title", 0.0), config_error);    // string key
  // integers promote to double
  CHECK(cfg.number("mc", "seed", 0.0) == 42.0);
}

TEST_CASE("config points reader") {
  const Config cfg = Config::parse(kSample);
  const auto pts = cfg.points("mc", "x0", 2);
  REQUIRE(pts.size() == 3);
  CHECK(pts[1] == std::vector<double>{0.02, 0.5});

  CHECK(cfg.points("mc", "absent", 2).empty());
  CHECK_THROWS_AS((void)cfg.points("mc", "x0", 3), config_error);   // row dim
  CHECK_THROWS_AS((void)cfg.points("mc", "seed", 2), config_error); // not an array

  const Config flat = Config::parse("a = [1, 2, 3]\nmixed = [1, [2, 3]]\n");
  CHECK(flat.points("", "a", 1) ==
        std::vector<std::vector<double>>{{1.0}, {2.0}, {3.0}});
  CHECK(flat.points("", "a", 3) == std::vector<std::vector<double>>{{1.0, 2.0, 3.0}});
  CHECK_THROWS_AS((void)flat.points("", "a", 2), config_error);
  CHECK_THROWS_AS((void)flat.points("", "mixed", 2), config_error);
}

TEST_CASE("config parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS((void)Config::parse("a = 1\nb = 1.2.3\n"),
                       "config line 2: bad number '1.2.3'", config_error);
  CHECK_THROWS_AS((void)Config::parse("[sec\nx = 1\n"), config_error);
  CHECK_THROWS_AS((void)Config::parse("key\n"), config_error);
  CHECK_THROWS_AS((void)Config::parse("s = \"open\n"), config_error);
  CHECK_THROWS_AS((void)Config::parse("s = \"bad \\q escape\"\n"), config_error);
  CHECK_THROWS_AS((void)Config::parse("a = [1, 2\n"), config_error);
  CHECK_THROWS_AS((void)Config::parse("a = 1 junk\n"), config_error);
  CHECK_THROWS_WITH_AS((void)Config::parse_file("/nonexistent/predt.toml"),
                       "cannot open config file '/nonexistent/predt.toml'",
                       config_error);
}

TEST_CASE("format_double round-trips") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.5) == "1.5");
  CHECK(format_double(-2.0) == "-2");
  CHECK(format_double(0.1) == "0.1");
  for (double v : {1.0 / 3.0, 6.907755278982137, -4.818029094698722, 1e-30,
                   1e20, 3.0e-4}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("trajectory csv layout") {
  Trajectory tr;
  tr.times = {0.0, 0.1};
  tr.states = {{1.0, 2.0}, {3.0, 4.0}};
  tr.controls = {5.0, 6.0};
  std::ostringstream os;
  write_trajectory_csv(os, tr);
  CHECK(os.str() == "t,x1,x2,u\n0,1,2,5\n0.1,3,4,6\n");

  std::ostringstream empty;
  write_trajectory_csv(empty, Trajectory{});
  CHECK(empty.str() == "t,u\n");
}

TEST_CASE("samples csv layout") {
  const std::vector<RunSample> samples = {
      {3, 7, SimStatus::settled, 0.25},
      {4, 8, SimStatus::diverged, 1.5},
  };
  std::ostringstream os;
  write_samples_csv(os, samples);
  CHECK(os.str() ==
        "run,seed,status,settling_time\n3,7,settled,0.25\n4,8,diverged,1.5\n");
}

TEST_CASE("sweep csv layout") {
  SweepRow row;
  row.bound = 2.0;
  row.stats.n_runs = 4;
  row.stats.n_settled = 4;
  row.stats.mean = 0.5;
  row.stats.bound = 2.0;
  row.stats.bound_satisfied = true;
  std::ostringstream os;
  write_sweep_csv(os, std::vector<SweepRow>{row});
  const std::string text = os.str();
  CHECK(text.find("bound,n_runs,n_settled,n_unsettled,n_diverged,mean,std_err,"
                  "ci_lo,ci_hi,max,bound_satisfied,censored,failed\n") == 0);
  CHECK(text.find("\n2,4,4,0,0,0.5,0,0,0,0,true,false,false\n") != std::string::npos);
}

TEST_CASE("summary json fields") {
  SettlingStats st;
  st.n_runs = 200;
  st.n_settled = 199;
  st.n_unsettled = 1;
  st.mean = 0.75;
  st.bound = 2.0;
  st.censored = true;
  SimConfig sim;
  sim.dt = 1e-4;
  const auto j = nlohmann::json::parse(summary_json(st, sim));
  CHECK(j["n_runs"] == 200);
  CHECK(j["n_settled"] == 199);
  CHECK(j["mean"] == 0.75);
  CHECK(j["bound"] == 2.0);
  CHECK(j["bound_satisfied"] == false);
  CHECK(j["censored"] == true);
  CHECK(j["dt"] == 1e-4);
  CHECK(j.contains("ci_lo"));
  CHECK(j.contains("ci_hi"));
  CHECK(j.contains("eps_absorb"));
}

TEST_CASE("sweep json keeps errors and stats apart") {
  SweepRow good;
  good.bound = 1.0;
  good.stats.n_runs = 2;
  SweepRow bad;
  bad.bound = 2.0;
  bad.failed = true;
  bad.error = "all runs diverged";
  const auto j = nlohmann::json::parse(
      sweep_json(std::vector<SweepRow>{good, bad}, SimConfig{}));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["failed"] == false);
  CHECK(j[0]["stats"]["n_runs"] == 2);
  CHECK(!j[0].contains("error"));
  CHECK(j[1]["failed"] == true);
  CHECK(j[1]["error"] == "all runs diverged");
  CHECK(!j[1].contains("stats"));
}

TEST_CASE("certificate report json fields") {
  CertReport rep;
  rep.grid_size = 600;
  rep.max_residual = 1e-12;
  rep.argmax_state = {0.25};
  rep.drift_ok = true;
  rep.integral_ok = true;
  rep.verdict = true;
  const auto j = nlohmann::json::parse(cert_report_json(rep));
  CHECK(j["grid_size"] == 600);
  CHECK(j["argmax_state"] == nlohmann::json::array({0.25}));
  CHECK(j["verdict"] == true);
  CHECK(j.contains("integral"));
  CHECK(j.contains("integral_unbounded"));
  CHECK(j.contains("n_flagged"));
}

TEST_CASE("gain set json carries the constraint table") {
  GainSet gs;
  gs.r = {1.0, 0.45, 0.15};
  gs.r_bar = 2.0;
  gs.k1 = 65.6;
  gs.valid = true;
  gs.constraints.push_back({"kappa_negative", true, 0.25});
  const auto j = nlohmann::json::parse(gain_set_json(gs));
  CHECK(j["r"] == nlohmann::json::array({1.0, 0.45, 0.15}));
  CHECK(j["k1"] == 65.6);
  CHECK(j["valid"] == true);
  REQUIRE(j["constraints"].size() == 1);
  CHECK(j["constraints"][0]["name"] == "kappa_negative");
  CHECK(j["constraints"][0]["ok"] == true);
  CHECK(j["constraints"][0]["margin"] == 0.25);
}
