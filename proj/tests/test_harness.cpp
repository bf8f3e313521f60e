#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "support.h"
#include "wigqdd/config.h"
#include "wigqdd/csv.h"
#include "wigqdd/errors.h"
#include "wigqdd/selftest.h"
#include "wigqdd/sweep.h"

using namespace wigqdd;
using namespace wigqdd::testing;
namespace fs = std::filesystem;

namespace {

const char* kSmall = R"({
  "params": {"nu": 1.0, "beta": 1.0},
  "grid": {"n_x": 32, "n_v": 64, "v_max": 10.0},
  "potential": {"kind": "cosine", "amplitude": 0.2, "k0": 1.0},
  "initial": {"density": {"kind": "cosine", "mean": 1.0, "amplitude": 0.5, "mode": 1},
              "fluctuation": {"kind": "odd", "amplitude": 0.1, "mode": 1}},
  "time": {"t_final": 0.1, "outputs": 2, "dt": 0.002, "qdd_refine": 2},
  "eps_list": [0.2, 0.1, 0.05, 0.025]
})";

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "wigqdd_tests";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

int run(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(WIGQDD_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string with(const std::string& base, const std::string& from, const std::string& to) {
  std::string s = base;
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  s.replace(pos, from.size(), to);
  return s;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("config parsing rejects bad input") {
  CHECK_NOTHROW(parse_config(kSmall));
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"n_x": 30}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"params": {"nu": -1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"params": {"eps": 1.5}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"eps_list": [0.1, 0.2]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"potential": {"kind": "square"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"norm_k": 0})"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  const ExperimentConfig cfg = parse_config(kSmall);
  CHECK(cfg.output_times() == std::vector<double>{0.0, 0.05, 0.1});
  CHECK(cfg.hash() == parse_config(kSmall).hash());
  CHECK(cfg.hash() != parse_config(with(kSmall, "\"dt\": 0.002", "\"dt\": 0.004")).hash());
}

TEST_CASE("fit_order recovers an exact power law and refuses degenerate data") {
  const std::vector<double> eps{0.2, 0.1, 0.05, 0.025, 0.0125};
  std::vector<double> err;
  for (double e : eps) err.push_back(3.0 * e * e);
  const OrderFit fit = fit_order(eps, err, std::vector<double>(eps.size(), 0.0));
  CHECK(fit.order == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.ci_low == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(fit.ci_high == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::exp(fit.log_constant) == doctest::Approx(3.0).epsilon(1e-10));

  std::vector<double> noisy = err;
  noisy[1] *= 1.1;
  noisy[3] *= 0.9;
  const OrderFit nf = fit_order(eps, noisy, std::vector<double>(eps.size(), 0.0));
  CHECK(nf.ci_low < nf.order);
  CHECK(nf.order < nf.ci_high);

  std::vector<double> floor(eps.size(), 0.0);
  floor[0] = err[0];
  const OrderFit partial = fit_order(eps, err, floor);
  CHECK_FALSE(partial.used[0]);
  CHECK(partial.used[1]);
  floor[1] = err[1];
  CHECK_THROWS_AS(fit_order(eps, err, floor), FitDegenerate);
  CHECK_THROWS_AS(fit_order({0.1}, {0.01}, {0.0}), FitDegenerate);
}

TEST_CASE("sweeps refuse to fit without enough usable points") {
  ExperimentConfig one = parse_config(with(kSmall, "[0.2, 0.1, 0.05, 0.025]", "[0.1]"));
  CHECK_THROWS_AS(run_sweep(one, 1), FitDegenerate);

  const ExperimentConfig exact = parse_config(R"({
    "grid": {"n_x": 16, "n_v": 64},
    "initial": {"density": {"kind": "constant", "mean": 1.0}},
    "time": {"t_final": 0.05, "outputs": 1, "dt": 0.01, "qdd_refine": 1},
    "eps_list": [0.2, 0.1, 0.05, 0.025]
  })");
  CHECK_THROWS_AS(run_sweep(exact, 1), FitDegenerate);
}

TEST_CASE("sweeps are deterministic and independent of the thread count") {
  const ExperimentConfig cfg = parse_config(kSmall);
  std::vector<SweepRow> first;
  for (double e : cfg.eps_list) {
    const CaseResult c = run_case(cfg, e, false);
    first.insert(first.end(), c.rows.begin(), c.rows.end());
  }
  const CaseResult again = run_case(cfg, cfg.eps_list[1], false);
  for (std::size_t k = 0; k < again.rows.size(); ++k) {
    CHECK(again.rows[k].composite_error == first[again.rows.size() + k].composite_error);
  }

  const SweepResult s1 = run_sweep(cfg, 1);
  const SweepResult s3 = run_sweep(cfg, 3);
  REQUIRE(s1.cases.size() == 4);
  for (std::size_t c = 0; c < 4; ++c) {
    CHECK(s1.cases[c].eps == cfg.eps_list[c]);
    CHECK(s1.cases[c].error == s3.cases[c].error);
    CHECK(s1.cases[c].floor == s3.cases[c].floor);
    for (std::size_t k = 0; k < s1.cases[c].rows.size(); ++k) {
      CHECK(s1.cases[c].rows[k].composite_error == s3.cases[c].rows[k].composite_error);
      CHECK(s1.cases[c].rows[k].composite_error == first[c * s1.cases[c].rows.size() + k].composite_error);
    }
  }
  CHECK(s1.fit.order == s3.fit.order);
}

TEST_CASE("selftest passes") {
  for (const SelftestCheck& c : run_selftest(2024)) {
    INFO(c.name << " " << c.value << " tol " << c.tolerance);
    CHECK(c.pass());
  }
  CHECK(run("selftest --seed 3", scratch("selftest.log")) == 0);
}

TEST_CASE("CLI exit codes") {
  CHECK(run("", scratch("none.log")) == 1);
  CHECK(run("coeffs", scratch("noconfig.log")) == 1);
  CHECK(run("coeffs --config /nonexistent/cfg.json", scratch("missing.log")) == 2);
  CHECK(slurp(scratch("missing.log")).find("/nonexistent/cfg.json") != std::string::npos);
  const fs::path bad = write("bad.json", R"({"params": {"nu": 0}})");
  CHECK(run("coeffs --config " + bad.string(), scratch("bad.log")) == 2);
  const fs::path aperiodic = write("aperiodic.json", R"({"potential": {"kind": "linear", "e0": 1.0},
    "grid": {"n_x": 16, "n_v": 64}, "time": {"t_final": 0.01, "outputs": 1, "dt": 0.01}})");
  CHECK(run("kinetic-run --config " + aperiodic.string(), scratch("aperiodic.log")) == 2);
  const fs::path elliptic = write("elliptic.json", R"({"params": {"hbar": 3.0, "beta": 1.0},
    "grid": {"n_x": 16, "n_v": 64}, "potential": {"kind": "cosine", "amplitude": 4.0, "k0": 1.0}})");
  CHECK(run("coeffs --config " + elliptic.string(), scratch("elliptic.log")) == 3);
}

TEST_CASE("coeffs without a potential is the constant diffusivity") {
  const fs::path cfg = write("flat.json", R"({"params": {"nu": 2.0, "beta": 0.5, "m": 1.5},
    "grid": {"n_x": 16, "n_v": 64}})");
  const fs::path out = scratch("flat.csv");
  REQUIRE(run("coeffs --config " + cfg.string() + " --out " + out.string(), scratch("flat.log")) == 0);
  const CsvTable t = read_csv(out.string());
  REQUIRE(t.rows.size() == 16);
  for (const auto& r : t.rows) {
    CHECK(r[t.column("D")] == doctest::Approx(1.0 / (2.0 * 0.5 * 1.5)).epsilon(1e-14));
    CHECK(r[t.column("W")] == 0.0);
    CHECK(r[t.column("E")] == 0.0);
  }
}

TEST_CASE("CSV files carry the config hash and boundary note") {
  const fs::path cfg = write("small.json", kSmall);
  const fs::path out = scratch("moments.csv");
  REQUIRE(run("moments-check --config " + cfg.string() + " --out " + out.string(), scratch("m.log")) == 0);
  std::ifstream in(out);
  std::string l1, l2;
  std::getline(in, l1);
  std::getline(in, l2);
  CHECK(l1 == "# config_hash: " + hex_hash(parse_config(kSmall).hash()));
  CHECK(hex_hash(0x1234).size() == 16);
  CHECK(l2 == "# boundary: periodic truncation");
  const CsvTable t = read_csv(out.string());
  CHECK(std::stod(t.meta("max_moment_rel_error")) <= 1e-6);
  CHECK(t.rows.size() == 32);
}

TEST_CASE("density-only kinetic output") {
  const fs::path cfg = write("dens.json", with(kSmall, "\"eps_list\"", "\"kinetic\": {\"density_only\": true}, \"eps_list\""));
  const fs::path out = scratch("dens.csv");
  REQUIRE(run("kinetic-run --config " + cfg.string() + " --out " + out.string(), scratch("dens.log")) == 0);
  const CsvTable t = read_csv(out.string());
  CHECK(t.columns == std::vector<std::string>{"t", "x", "n"});
  CHECK(t.rows.size() == 3 * 32);
  std::map<double, double> mass;
  for (const auto& r : t.rows) mass[r[0]] += r[2];
  REQUIRE(mass.size() == 3);
  for (const auto& [time, m] : mass) CHECK(std::abs(m - mass.begin()->second) <= 1e-10 * m);
}

TEST_CASE("per-run sweep files reproduce the sweep table") {
  const fs::path cfg = write("sweep.json", kSmall);
  const fs::path out = scratch("sweep.csv");
  REQUIRE(run("converge-sweep --threads 2 --config " + cfg.string() + " --out " + out.string(),
              scratch("sweep.log")) == 0);
  const CsvTable all = read_csv(out.string());
  CHECK(!all.meta("fitted_order").empty());
  CHECK(!all.meta("ci95_low").empty());
  CHECK(!all.meta("ci95_high").empty());
  CHECK(all.rows.size() == 4 * 3);
  const ExperimentConfig parsed = parse_config(kSmall);
  for (std::size_t k = 0; k < 4; ++k) {
    const CsvTable one = read_csv(scratch("sweep_eps" + std::to_string(k) + ".csv").string());
    const CsvTable dens = read_csv(scratch("sweep_eps" + std::to_string(k) + "_density.csv").string());
    REQUIRE(one.rows.size() == 3);
    CHECK(dens.rows.size() == 3 * 32);
    CHECK(dens.columns == std::vector<std::string>{"t", "x", "n_kinetic", "n_qdd"});
    for (std::size_t r = 0; r < 3; ++r) {
      const auto& a = all.rows[k * 3 + r];
      CHECK(a[all.column("eps")] == parsed.eps_list[k]);
      for (const char* col : {"t", "composite_error", "layer_error", "bulk_error"}) {
        CHECK(a[all.column(col)] == one.rows[r][one.column(col)]);
      }
    }
    const CaseResult direct = run_case(parsed, parsed.eps_list[k], false);
    CHECK(direct.rows.back().composite_error == one.rows.back()[one.column("composite_error")]);
  }
  CHECK(run("converge-sweep --config " + cfg.string(), scratch("noout.log")) == 2);
}

}
