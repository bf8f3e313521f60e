#include "wigqdd/cli.h"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include "wigqdd/assembler.h"
#include "wigqdd/config.h"
#include "wigqdd/csv.h"
#include "wigqdd/errors.h"
#include "wigqdd/kinetic.h"
#include "wigqdd/selftest.h"
#include "wigqdd/sweep.h"
#include "wigqdd/transport.h"

namespace wigqdd {

namespace {

struct Options {
  std::string config;
  std::string out;
  unsigned threads = 0;
  std::uint64_t seed = 12345;
};

std::string number(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

// Writes to the --out path, or stdout when none was given.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int cmd_coeffs(const Options& o) {
  const ExperimentConfig cfg = load_config(o.config);
  const SpaceGrid grid = cfg.space_grid();
  const TransportCoeffs c = transport_coeffs(cfg.potential, cfg.params, grid);
  Sink sink(o.out);
  CsvWriter csv(sink.stream(), cfg.hash(),
                {{"potential", cfg.potential.name()},
                 {"ellipticity_floor", number(c.ellipticity_floor)}},
                {"x", "D", "W", "E"});
  for (std::size_t i = 0; i < grid.size(); ++i) csv.row({grid.point(i), c.D[i], c.W[i], c.E[i]});
  return 0;
}

int cmd_moments(const Options& o) {
  const ExperimentConfig cfg = load_config(o.config);
  const PhaseGrid grid = cfg.phase_grid();
  const KernelM M = kernel_m(cfg.potential, cfg.params, grid);
  const D2D1Report rep = verify_d2_d1(M, cfg.potential, cfg.params);
  double err = 0.0;
  std::vector<KernelMoments> closed;
  for (std::size_t i = 0; i < grid.n_x(); ++i) {
    closed.push_back(kernel_moments_closed_form(cfg.potential, cfg.params, grid.space().point(i)));
    const KernelMoments& c = closed.back();
    err = std::max({err, std::abs(M.mass[i] - c.m0),
                    std::abs(M.first_moment[i] - c.m1) / std::max(1.0, std::abs(c.m1)),
                    std::abs(M.second_moment[i] - c.m2) / std::max(1.0, std::abs(c.m2))});
  }
  Sink sink(o.out);
  CsvWriter csv(sink.stream(), cfg.hash(),
                {{"max_moment_rel_error", number(err)},
                 {"max_D_abs_error", number(rep.max_err_D)},
                 {"max_W_abs_error", number(rep.max_err_W)}},
                {"x", "m0", "m1", "m2", "m0_closed", "m1_closed", "m2_closed", "vD2", "vD1"});
  for (std::size_t i = 0; i < grid.n_x(); ++i) {
    csv.row({grid.space().point(i), M.mass[i], M.first_moment[i], M.second_moment[i],
             closed[i].m0, closed[i].m1, closed[i].m2, rep.vD2[i], rep.vD1[i]});
  }
  std::cerr << "moments: max rel error " << err << ", D " << rep.max_err_D << ", W "
            << rep.max_err_W << '\n';
  return 0;
}

int cmd_qdd(const Options& o) {
  const ExperimentConfig cfg = load_config(o.config);
  const PhaseGrid grid = cfg.phase_grid();
  const KernelM M = kernel_m(cfg.potential, cfg.params, grid);
  const WignerField w0 = initial_datum(cfg, M);
  const DensityField n_init = qdd_initial_density(cfg, w0, M, cfg.params);
  const DensityTrajectory traj = qdd_solve_refined(cfg.potential, cfg.params, n_init,
                                                   cfg.output_times(), cfg.qdd_step(), cfg.qdd_refine);
  Sink sink(o.out);
  CsvWriter csv(sink.stream(), cfg.hash(), {{"eps", number(cfg.params.eps)}}, {"t", "x", "n"});
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    for (std::size_t i = 0; i < grid.n_x(); ++i) {
      csv.row({traj.times[k], grid.space().point(i), traj.states[k][i]});
    }
  }
  return 0;
}

int cmd_kinetic(const Options& o) {
  const ExperimentConfig cfg = load_config(o.config);
  const PhaseGrid grid = cfg.phase_grid();
  const KernelM M = kernel_m(cfg.potential, cfg.params, grid);
  const FieldTrajectory traj =
      kinetic_solve({cfg.potential, cfg.params, initial_datum(cfg, M), cfg.output_times(), cfg.dt});
  Sink sink(o.out);
  const std::vector<std::pair<std::string, std::string>> meta{{"eps", number(cfg.params.eps)}};
  if (cfg.density_only) {
    CsvWriter csv(sink.stream(), cfg.hash(), meta, {"t", "x", "n"});
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      const DensityField n = density(traj.states[k]);
      for (std::size_t i = 0; i < grid.n_x(); ++i) csv.row({traj.times[k], grid.space().point(i), n[i]});
    }
    return 0;
  }
  CsvWriter csv(sink.stream(), cfg.hash(), meta, {"t", "x", "v", "w"});
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    for (std::size_t i = 0; i < grid.n_x(); ++i) {
      for (std::size_t j = 0; j < grid.n_v(); ++j) {
        csv.row({traj.times[k], grid.space().point(i), grid.v_points()[j], traj.states[k](i, j)});
      }
    }
  }
  return 0;
}

std::string run_file(const std::string& out, std::size_t k, const char* suffix) {
  std::filesystem::path p(out);
  const std::string stem = p.stem().string() + "_eps" + std::to_string(k) + suffix + ".csv";
  return (p.parent_path() / stem).string();
}

int cmd_sweep(const Options& o) {
  if (o.out.empty()) throw ConfigError("converge-sweep requires --out");
  const ExperimentConfig cfg = load_config(o.config);
  const unsigned threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  const SweepResult res = run_sweep(cfg, threads);
  const SpaceGrid grid = cfg.space_grid();

  for (std::size_t k = 0; k < res.cases.size(); ++k) {
    const CaseResult& c = res.cases[k];
    {
      Sink sink(run_file(o.out, k, ""));
      CsvWriter csv(sink.stream(), cfg.hash(),
                    {{"eps", number(c.eps)}, {"floor", number(c.floor)}},
                    {"t", "composite_error", "layer_error", "bulk_error"});
      for (const SweepRow& r : c.rows) csv.row({r.t, r.composite_error, r.layer_error, r.bulk_error});
    }
    Sink sink(run_file(o.out, k, "_density"));
    CsvWriter csv(sink.stream(), cfg.hash(), {{"eps", number(c.eps)}},
                  {"t", "x", "n_kinetic", "n_qdd"});
    for (std::size_t s = 0; s < c.n_kinetic.times.size(); ++s) {
      for (std::size_t i = 0; i < grid.size(); ++i) {
        csv.row({c.n_kinetic.times[s], grid.point(i), c.n_kinetic.states[s][i], c.n_qdd.states[s][i]});
      }
    }
  }

  std::vector<std::pair<std::string, std::string>> meta{
      {"fitted_order", number(res.fit.order)},
      {"ci95_low", number(res.fit.ci_low)},
      {"ci95_high", number(res.fit.ci_high)},
      {"monotone", res.monotone ? "true" : "false"}};
  for (std::size_t k = 0; k < res.cases.size(); ++k) {
    meta.emplace_back("case" + std::to_string(k),
                      "eps=" + number(res.cases[k].eps) + " error=" + number(res.cases[k].error) +
                          " floor=" + number(res.cases[k].floor) +
                          (res.fit.used[k] ? " fitted" : " excluded"));
  }
  Sink sink(o.out);
  CsvWriter csv(sink.stream(), cfg.hash(), meta,
                {"eps", "t", "composite_error", "layer_error", "bulk_error"});
  for (const CaseResult& c : res.cases) {
    for (const SweepRow& r : c.rows) csv.row({r.eps, r.t, r.composite_error, r.layer_error, r.bulk_error});
  }
  std::cerr << "fitted order " << res.fit.order << " (95% CI " << res.fit.ci_low << ", "
            << res.fit.ci_high << ")\n";
  return 0;
}

int cmd_selftest(const Options& o) {
  bool ok = true;
  for (const SelftestCheck& c : run_selftest(o.seed)) {
    std::cout << (c.pass() ? "PASS " : "FAIL ") << c.name << ": " << c.value << " (tol "
              << c.tolerance << ")\n";
    ok = ok && c.pass();
  }
  return ok ? 0 : 3;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Wigner-BGK kinetic and quantum drift-diffusion toolkit"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "worker threads for sweeps (0: all cores)");
  app.add_option("--seed", o.seed, "seed for randomized self tests");

  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(const Options&);
    bool needs_config;
  };
  const Entry entries[] = {
      {"coeffs", "tabulate D, W, E on the space grid", cmd_coeffs, true},
      {"moments-check", "compare kernel moments with their closed forms", cmd_moments, true},
      {"qdd-run", "solve the drift-diffusion equation", cmd_qdd, true},
      {"kinetic-run", "solve the kinetic equation", cmd_kinetic, true},
      {"converge-sweep", "run the eps sweep and fit the convergence order", cmd_sweep, true},
      {"selftest", "run the invariant suite", cmd_selftest, false},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    auto* cfg = sub->add_option("--config", o.config, "JSON experiment configuration");
    if (e.needs_config) cfg->required();
    sub->add_option("--out", o.out, "output CSV (stdout if omitted)");
    sub->add_option("--threads", o.threads, "worker threads for sweeps (0: all cores)");
    sub->add_option("--seed", o.seed, "seed for randomized self tests");
    subs.emplace_back(sub, &e);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    for (const auto& [sub, entry] : subs) {
      if (sub->parsed()) return entry->fn(o);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}

}  // namespace wigqdd
