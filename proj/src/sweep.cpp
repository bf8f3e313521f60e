#include "wigqdd/sweep.h"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>

#include "wigqdd/assembler.h"
#include "wigqdd/errors.h"
#include "wigqdd/layer.h"

namespace wigqdd {

OrderFit fit_order(const std::vector<double>& eps, const std::vector<double>& error,
                   const std::vector<double>& floor) {
  if (eps.size() != error.size() || eps.size() != floor.size()) {
    throw std::invalid_argument("fit_order: size mismatch");
  }
  OrderFit fit;
  fit.used.assign(eps.size(), false);
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (!(error[k] >= 1e-12) || error[k] <= 10.0 * floor[k]) continue;
    fit.used[k] = true;
    lx.push_back(std::log(eps[k]));
    ly.push_back(std::log(error[k]));
  }
  const std::size_t n = lx.size();
  if (n < 4) {
    throw FitDegenerate("order fit needs at least 4 points above the discretization floor, have " +
                        std::to_string(n) + " of " + std::to_string(eps.size()));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  if (!(sxx > 0.0)) throw FitDegenerate("order fit: all eps values coincide");
  fit.order = sxy / sxx;
  fit.log_constant = my - fit.order * mx;
  double sse = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = ly[k] - fit.log_constant - fit.order * lx[k];
    sse += r * r;
  }
  const double dof = static_cast<double>(n - 2);
  const double se = std::sqrt(sse / dof / sxx);
  const boost::math::students_t dist(dof);
  const double tq = boost::math::quantile(boost::math::complement(dist, 0.025));
  fit.ci_low = fit.order - tq * se;
  fit.ci_high = fit.order + tq * se;
  return fit;
}

DensityField qdd_initial_density(const ExperimentConfig& cfg, const WignerField& w0,
                                 const KernelM& M, const PhysicalParams& params) {
  DensityField n = density(w0);
  const WignerField psi0 = project_q(w0, M);
  if (psi0.max_abs() > 0.0) {
    const DensityField n1 = initial_correction_n1(psi0, cfg.potential, params);
    for (std::size_t i = 0; i < n.size(); ++i) n[i] += params.eps * n1[i];
  }
  return n;
}

namespace {

struct Solved {
  FieldTrajectory kinetic;
  std::unique_ptr<AsymptoticSolution> asym;
};

Solved solve_pair(const ExperimentConfig& cfg, const PhysicalParams& params, const KernelM& M,
                  const WignerField& w0, std::shared_ptr<const LayerTerms> layer, double dt,
                  std::size_t refine) {
  const std::vector<double> times = cfg.output_times();
  Solved s;
  s.kinetic = kinetic_solve({cfg.potential, params, w0, times, dt});
  const DensityField n_init = qdd_initial_density(cfg, w0, M, params);
  DensityTrajectory n = qdd_solve_refined(cfg.potential, params, n_init, times, cfg.qdd_step(), refine);
  s.asym = std::make_unique<AsymptoticSolution>(std::move(n), std::move(layer), cfg.potential, params);
  return s;
}

DensityTrajectory densities(const FieldTrajectory& traj) {
  DensityTrajectory out;
  out.times = traj.times;
  for (const auto& w : traj.states) out.states.push_back(density(w));
  return out;
}

}  // namespace

CaseResult run_case(const ExperimentConfig& cfg, double eps, bool with_control) {
  const PhysicalParams params = cfg.params.with_eps(eps);
  params.validate();
  const PhaseGrid grid = cfg.phase_grid();
  cfg.potential.require_periodic(grid.space());
  check_ellipticity(transport_coeffs(cfg.potential, params, grid.space()));

  KernelM M = kernel_m(cfg.potential, params, grid);
  const WignerField w0 = initial_datum(cfg, M);
  auto layer = std::make_shared<const LayerTerms>(w0, M, cfg.potential, params);
  const NormSpec spec{cfg.norm_k};

  Solved main = solve_pair(cfg, params, M, w0, layer, cfg.dt, cfg.qdd_refine);
  CaseResult r;
  r.eps = eps;
  for (double t : cfg.output_times()) {
    const ErrorSplit e = composite_error(main.kinetic, *main.asym, spec, t);
    r.rows.push_back({eps, t, e.composite, e.layer, e.bulk});
    r.error = std::max(r.error, e.composite);
  }
  r.n_kinetic = densities(main.kinetic);
  r.n_qdd = main.asym->density();

  if (with_control) {
    Solved ctl = solve_pair(cfg, params, M, w0, layer, 0.5 * cfg.dt, 2 * cfg.qdd_refine);
    for (double t : cfg.output_times()) {
      const double dk = norm_xk(main.kinetic.at(t) - ctl.kinetic.at(t), spec);
      const double da = norm_xk(main.asym->bulk(t) - ctl.asym->bulk(t), spec);
      r.floor = std::max(r.floor, dk + da);
    }
  }
  return r;
}

SweepResult run_sweep(const ExperimentConfig& cfg, unsigned threads) {
  const std::size_t n = cfg.eps_list.size();
  if (n < 4) {
    throw FitDegenerate("order fit needs at least 4 eps values, config lists " + std::to_string(n));
  }
  SweepResult result;
  result.cases.resize(n);
  std::vector<std::exception_ptr> failures(n);
  std::size_t next = 0;
  std::mutex mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t k;
      {
        std::lock_guard lock(mutex);
        if (next == n) return;
        k = next++;
      }
      try {
        result.cases[k] = run_case(cfg, cfg.eps_list[k], true);
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };
  const unsigned pool = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  std::vector<std::thread> workers;
  for (unsigned p = 0; p < pool; ++p) workers.emplace_back(worker);
  for (auto& w : workers) w.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::vector<double> eps, err, floor;
  for (const auto& c : result.cases) {
    eps.push_back(c.eps);
    err.push_back(c.error);
    floor.push_back(c.floor);
  }
  result.monotone = true;
  for (std::size_t k = 1; k < n; ++k) result.monotone = result.monotone && err[k] < err[k - 1];
  result.fit = fit_order(eps, err, floor);
  return result;
}

}  // namespace wigqdd
