#include "wigqdd/equilibrium.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wigqdd/errors.h"

namespace wigqdd {

std::vector<double> maxwellian(const PhysicalParams& params, const PhaseGrid& grid) {
  const double bm = params.beta * params.m;
  const double c = std::sqrt(bm / (2.0 * std::numbers::pi));
  std::vector<double> f(grid.n_v());
  auto v = grid.v_points();
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = c * std::exp(-0.5 * bm * v[j] * v[j]);
  return f;
}

namespace {

// (beta^2/24) [-d/m + beta v^2 d] F for a given second (or third) derivative d.
WignerField f2_like(const Potential& pot, const PhysicalParams& params, const PhaseGrid& grid,
                    int order) {
  const std::vector<double> F = maxwellian(params, grid);
  const double c = params.beta * params.beta / 24.0;
  auto x = grid.space().points();
  auto v = grid.v_points();
  WignerField out(grid);
  for (std::size_t i = 0; i < grid.n_x(); ++i) {
    const double d = pot.derivative(order, x[i]);
    auto r = out.row(i);
    for (std::size_t j = 0; j < grid.n_v(); ++j) {
      r[j] = c * (-d / params.m + params.beta * v[j] * v[j] * d) * F[j];
    }
  }
  return out;
}

}  // namespace

WignerField f2_correction(const Potential& pot, const PhysicalParams& params,
                          const PhaseGrid& grid) {
  return f2_like(pot, params, grid, 2);
}

WignerField equilibrium_profile(const Potential& pot, const PhysicalParams& params,
                                const PhaseGrid& grid) {
  WignerField p = f2_correction(pot, params, grid);
  p *= params.hbar * params.hbar;
  const std::vector<double> F = maxwellian(params, grid);
  for (std::size_t i = 0; i < grid.n_x(); ++i) {
    auto r = p.row(i);
    for (std::size_t j = 0; j < grid.n_v(); ++j) r[j] += F[j];
  }
  return p;
}

namespace {

WignerField scale_rows(const WignerField& profile, const DensityField& n, double factor) {
  WignerField out = profile;
  for (std::size_t i = 0; i < out.grid().n_x(); ++i) {
    const double s = factor * n[i];
    for (double& v : out.row(i)) v *= s;
  }
  return out;
}

}  // namespace

WignerField omega_apply(const WignerField& w, const Potential& pot,
                        const PhysicalParams& params) {
  return scale_rows(equilibrium_profile(pot, params, w.grid()), density(w), params.nu);
}

WignerField apply_ac(const ThetaOperator& theta, const WignerField& profile,
                     const WignerField& w) {
  require_same_grid(profile.grid(), w.grid(), "apply_ac");
  const double nu = theta.params().nu;
  WignerField out = apply_theta(theta, w);
  out.axpy(-nu, w);
  out += scale_rows(profile, density(w), nu);
  return out;
}

void require_velocity_box(const PhysicalParams& params, const PhaseGrid& grid) {
  const double vm = grid.v_max();
  const double tail = std::exp(-0.5 * params.beta * params.m * vm * vm) * std::pow(vm, 4);
  if (!(tail < 1e-12)) {
    std::ostringstream msg;
    msg << "v_max = " << vm << " truncates the Maxwellian tail too early (tail " << tail
        << ")";
    throw ConfigError(msg.str());
  }
}

KernelM kernel_m(const Potential& pot, const PhysicalParams& params, const PhaseGrid& grid) {
  require_velocity_box(params, grid);
  const ThetaOperator theta(pot, params, grid);
  const double nu = params.nu;
  const double h2 = params.hbar * params.hbar;

  const WignerField profile = equilibrium_profile(pot, params, grid);
  SpectralField p_hat = dft_v(profile);
  SpectralField m_hat = p_hat;
  resolvent_inplace(theta, m_hat);
  WignerField values = idft_v(m_hat);
  values *= nu;

  // d/dx [p/(nu - i dV)] = (d/dx p)/(nu - i dV) + p i dV_x / (nu - i dV)^2
  WignerField f2x = f2_like(pot, params, grid, 3);
  f2x *= h2;
  SpectralField dx_hat = dft_v(f2x);
  resolvent_inplace(theta, dx_hat);
  auto x = grid.space().points();
  auto eta = grid.eta_points();
  for (std::size_t i = 0; i < grid.n_x(); ++i) {
    for (std::size_t l = 0; l < grid.n_v(); ++l) {
      if (l == grid.nyquist_index()) continue;
      const Complex den(nu, -theta.delta(i, l));
      const Complex dvx(0.0, delta_v_dx(pot, params, x[i], eta[l]));
      dx_hat(i, l) += p_hat(i, l) * dvx / (den * den);
    }
  }
  WignerField dx = idft_v(dx_hat);
  dx *= nu;

  KernelM M{values, dx, density(values), first_moment(values), second_moment(values)};
  return M;
}

KernelMoments kernel_moments_closed_form(const Potential& pot, const PhysicalParams& params,
                                         double x) {
  const double nu = params.nu;
  const double m = params.m;
  const double v1 = pot.derivative(1, x);
  const double v2 = pot.derivative(2, x);
  const double m1 = -v1 / (nu * m);
  const double m2 = 1.0 / (params.beta * m) + 2.0 * v1 * v1 / (nu * nu * m * m) +
                    params.beta * params.hbar * params.hbar * v2 / (12.0 * m * m);
  return {1.0, m1, m2};
}

WignerField project_p(const WignerField& w, const KernelM& M) {
  require_same_grid(w.grid(), M.values.grid(), "project_p");
  return scale_rows(M.values, density(w), 1.0);
}

WignerField project_q(const WignerField& w, const KernelM& M) {
  return w - project_p(w, M);
}

}  // namespace wigqdd
