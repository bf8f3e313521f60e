#include "wigqdd/qdd.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wigqdd/errors.h"
#include "wigqdd/pseudodiff.h"

namespace wigqdd {

void require_output_times(const std::vector<double>& times) {
  double prev = 0.0;
  for (double t : times) {
    if (!std::isfinite(t) || t < prev) {
      throw ConfigError("output times must be finite, nonnegative and nondecreasing");
    }
    prev = t;
  }
}

DensityField initial_correction_n1(const WignerField& psi0, const Potential& pot,
                                   const PhysicalParams& params) {
  require_zero_mass(psi0, "initial_correction_n1");
  const ThetaOperator theta(pot, params, psi0.grid());
  DensityField n1 = derivative_x(first_moment(resolvent(theta, psi0)));
  for (double& v : n1.values()) v = -v;
  return n1;
}

DensityField QddProblem::initial_density() const {
  require_same_grid(n0.grid(), n1.grid(), "QddProblem");
  DensityField n = n0;
  for (std::size_t i = 0; i < n.size(); ++i) n[i] += params.eps * n1[i];
  return n;
}

QddSolver::QddSolver(TransportCoeffs coeffs, double eps)
    : coeffs_(std::move(coeffs)), eps_(eps), drift_speed_(coeffs_.E.size()) {
  check_ellipticity(coeffs_);
  for (std::size_t i = 0; i < drift_speed_.size(); ++i) {
    drift_speed_[i] = coeffs_.E[i] + eps_ * coeffs_.W[i];
  }
}

double QddSolver::stable_dt() const {
  double vmax = 0.0;
  for (std::size_t i = 0; i < drift_speed_.size(); ++i) {
    vmax = std::max(vmax, std::abs(coeffs_.E[i]) + eps_ * std::abs(coeffs_.W[i]));
  }
  if (vmax == 0.0) return std::numeric_limits<double>::infinity();
  return 0.25 * grid().spacing() / vmax;
}

void QddSolver::apply_drift(std::span<const double> n, std::span<double> out) const {
  const std::size_t N = n.size();
  const double c = 0.5 / grid().spacing();
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t ip = (i + 1) % N;
    const std::size_t im = (i + N - 1) % N;
    out[i] = c * (drift_speed_[ip] * n[ip] - drift_speed_[im] * n[im]);
  }
}

void QddSolver::apply_diffusion(std::span<const double> n, std::span<double> out) const {
  const std::size_t N = n.size();
  const double h = grid().spacing();
  const double c = eps_ / (h * h);
  const auto& Dh = coeffs_.D_half;
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t ip = (i + 1) % N;
    const std::size_t im = (i + N - 1) % N;
    out[i] = c * (Dh[i] * (n[ip] - n[i]) - Dh[im] * (n[i] - n[im]));
  }
}

namespace {

// Solves a cyclic tridiagonal system lo[i] x[i-1] + di[i] x[i] + up[i] x[i+1]
// = r[i] (indices mod N) by Sherman-Morrison on top of the Thomas algorithm.
std::vector<double> solve_cyclic(const std::vector<double>& lo, const std::vector<double>& di,
                                 const std::vector<double>& up, const std::vector<double>& r) {
  const std::size_t N = di.size();
  const double alpha = up[N - 1];
  const double beta = lo[0];
  const double gamma = -di[0];

  std::vector<double> b = di;
  b[0] = di[0] - gamma;
  b[N - 1] = di[N - 1] - alpha * beta / gamma;

  auto thomas = [&](std::vector<double> rhs) {
    std::vector<double> c(N);
    std::vector<double> x(N);
    c[0] = up[0] / b[0];
    x[0] = rhs[0] / b[0];
    for (std::size_t i = 1; i < N; ++i) {
      const double m = b[i] - lo[i] * c[i - 1];
      c[i] = up[i] / m;
      x[i] = (rhs[i] - lo[i] * x[i - 1]) / m;
    }
    for (std::size_t i = N - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    return x;
  };

  std::vector<double> x = thomas(r);
  std::vector<double> u(N, 0.0);
  u[0] = gamma;
  u[N - 1] = alpha;
  std::vector<double> z = thomas(u);
  const double fact = (x[0] + beta * x[N - 1] / gamma) / (1.0 + z[0] + beta * z[N - 1] / gamma);
  for (std::size_t i = 0; i < N; ++i) x[i] -= fact * z[i];
  return x;
}

}  // namespace

DensityField QddSolver::step(const DensityField& n, double dt) const {
  require_same_grid(n.grid(), grid(), "qdd step");
  const std::size_t N = n.size();
  auto nv = n.values();

  std::vector<double> a(N), l(N);
  apply_drift(nv, a);
  apply_diffusion(nv, l);
  std::vector<double> half(N);
  for (std::size_t i = 0; i < N; ++i) half[i] = nv[i] + 0.5 * dt * (a[i] + l[i]);
  std::vector<double> a_half(N);
  apply_drift(half, a_half);

  std::vector<double> rhs(N);
  for (std::size_t i = 0; i < N; ++i) rhs[i] = nv[i] + 0.5 * dt * l[i] + dt * a_half[i];

  const double h = grid().spacing();
  const double c = 0.5 * dt * eps_ / (h * h);
  const auto& Dh = coeffs_.D_half;
  std::vector<double> lo(N), di(N), up(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double dm = Dh[(i + N - 1) % N];
    lo[i] = -c * dm;
    up[i] = -c * Dh[i];
    di[i] = 1.0 + c * (dm + Dh[i]);
  }
  return DensityField(grid(), solve_cyclic(lo, di, up, rhs));
}

DensityField QddSolver::advance(DensityField n, double t0, double t1, double dt) const {
  if (t1 <= t0) return n;
  const double limit = std::min(dt > 0.0 ? dt : std::numeric_limits<double>::infinity(),
                                stable_dt());
  if (!std::isfinite(limit)) throw ConfigError("qdd: a finite time step is required");
  const auto steps = static_cast<std::size_t>(std::ceil((t1 - t0) / limit - 1e-9));
  const double h = (t1 - t0) / static_cast<double>(std::max<std::size_t>(steps, 1));
  const double norm0 = std::max(norm_l2(n), std::numeric_limits<double>::min());
  for (std::size_t s = 0; s < std::max<std::size_t>(steps, 1); ++s) {
    n = step(n, h);
    const double nn = norm_l2(n);
    if (!std::isfinite(nn) || nn > 1e3 * norm0) {
      std::ostringstream msg;
      msg << "qdd: solution norm grew from " << norm0 << " to " << nn;
      throw StabilityViolation(msg.str());
    }
  }
  return n;
}

DensityTrajectory qdd_solve(const QddProblem& problem) {
  require_output_times(problem.times);
  const QddSolver solver(problem.coeffs, problem.params.eps);
  DensityField n = problem.initial_density();
  require_same_grid(n.grid(), solver.grid(), "qdd_solve");
  DensityTrajectory traj;
  double t = 0.0;
  for (double target : problem.times) {
    n = solver.advance(std::move(n), t, target, problem.dt);
    t = target;
    traj.times.push_back(target);
    traj.states.push_back(n);
  }
  return traj;
}

DensityTrajectory qdd_solve_refined(const Potential& pot, const PhysicalParams& params,
                                    const DensityField& n_init,
                                    const std::vector<double>& times, double dt,
                                    std::size_t factor) {
  const SpaceGrid& coarse = n_init.grid();
  const DensityField fine = factor == 1 ? n_init : interpolate_refined(n_init, factor);
  QddProblem problem{transport_coeffs(pot, params, fine.grid()), params, fine,
                     DensityField(fine.grid()), times, dt};
  DensityTrajectory traj = qdd_solve(problem);
  for (auto& s : traj.states) s = restrict_to(s, coarse);
  return traj;
}

}  // namespace wigqdd
