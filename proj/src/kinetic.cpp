#include "wigqdd/kinetic.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "fft.h"
#include "wigqdd/equilibrium.h"
#include "wigqdd/errors.h"
#include "wigqdd/pseudodiff.h"
#include "wigqdd/qdd.h"

namespace wigqdd {

KineticSolver::KineticSolver(const Potential& pot, const PhysicalParams& params, PhaseGrid grid)
    : grid_(std::move(grid)), params_(params) {
  pot.require_periodic(grid_.space());
  const ThetaOperator theta(pot, params_, grid_);
  delta_.resize(grid_.size());
  for (std::size_t i = 0; i < grid_.n_x(); ++i) {
    for (std::size_t l = 0; l < grid_.n_v(); ++l) delta_[i * grid_.n_v() + l] = theta.delta(i, l);
  }
  const SpectralField p = dft_v(equilibrium_profile(pot, params_, grid_));
  profile_hat_.assign(p.values().begin(), p.values().end());
}

void KineticSolver::stream(std::vector<Complex>& buf, double dt) const {
  const std::size_t nx = grid_.n_x();
  const std::size_t nv = grid_.n_v();
  fft::columns(buf.data(), nx, nv, fft::Direction::forward);
  auto k = grid_.space().wavenumbers();
  auto v = grid_.v_points();
  const double scale = 1.0 / static_cast<double>(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < nv; ++j) {
      buf[i * nv + j] *= std::polar(scale, -k[i] * v[j] * dt);
    }
  }
  fft::columns(buf.data(), nx, nv, fft::Direction::backward);
  // The real part keeps the unpaired Nyquist mode as cos(k v dt).
  for (Complex& z : buf) z = {z.real(), 0.0};
}

WignerField KineticSolver::transport_substep(const WignerField& w, double dt) const {
  require_same_grid(grid_, w.grid(), "transport_substep");
  std::vector<Complex> buf(w.values().begin(), w.values().end());
  stream(buf, dt);
  WignerField out(grid_);
  auto dst = out.values();
  for (std::size_t q = 0; q < buf.size(); ++q) dst[q] = buf[q].real();
  return out;
}

void KineticSolver::relax(SpectralField& s, const DensityField& n, double dt) const {
  const double eps = params_.eps;
  const double nu = params_.nu;
  const std::size_t nv = grid_.n_v();
  for (std::size_t i = 0; i < grid_.n_x(); ++i) {
    const double src = nu / eps * n[i];
    for (std::size_t l = 0; l < nv; ++l) {
      const std::size_t q = i * nv + l;
      const Complex a = Complex(-nu, delta_[q]) / eps;
      const Complex z = a * dt;
      const Complex e = std::exp(z);
      // (e^{a dt} - 1)/a
      const Complex phi = std::abs(z) < 1e-6 ? dt * (1.0 + z / 2.0 + z * z / 6.0) : (e - 1.0) / a;
      s(i, l) = e * s(i, l) + phi * src * profile_hat_[q];
    }
  }
}

WignerField KineticSolver::collision_field_substep(const WignerField& w, double dt) const {
  require_same_grid(grid_, w.grid(), "collision_field_substep");
  if (dt == 0.0) return w;
  SpectralField s = dft_v(w);
  relax(s, density(w), dt);
  return idft_v(s);
}

WignerField KineticSolver::advance(const WignerField& w, double dt, std::size_t steps) const {
  require_same_grid(grid_, w.grid(), "kinetic advance");
  if (steps == 0) return w;
  const double norm0 = std::max(norm_l2(w), std::numeric_limits<double>::min());
  WignerField cur = transport_substep(w, 0.5 * dt);
  for (std::size_t s = 0; s < steps; ++s) {
    cur = collision_field_substep(cur, dt);
    cur = transport_substep(cur, s + 1 == steps ? 0.5 * dt : dt);
    const double nn = norm_l2(cur);
    if (!std::isfinite(nn) || nn > 1e3 * norm0) {
      std::ostringstream msg;
      msg << "kinetic: solution norm grew from " << norm0 << " to " << nn;
      throw StabilityViolation(msg.str());
    }
  }
  return cur;
}

FieldTrajectory kinetic_solve(const KineticProblem& problem) {
  require_output_times(problem.times);
  if (!(problem.dt > 0.0)) throw ConfigError("kinetic: dt must be positive");
  const KineticSolver solver(problem.pot, problem.params, problem.w0.grid());
  FieldTrajectory traj;
  WignerField w = problem.w0;
  double t = 0.0;
  for (double target : problem.times) {
    const double span = target - t;
    if (span > 0.0) {
      const auto steps = static_cast<std::size_t>(std::ceil(span / problem.dt - 1e-9));
      w = solver.advance(w, span / static_cast<double>(steps), steps);
    }
    t = target;
    traj.times.push_back(target);
    traj.states.push_back(w);
  }
  return traj;
}

}  // namespace wigqdd
