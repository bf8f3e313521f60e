#include "wigqdd/assembler.h"

#include <algorithm>
#include <cmath>

#include "wigqdd/transport.h"

namespace wigqdd {

namespace {

WignerField rows_times(WignerField w, const DensityField& n) {
  for (std::size_t i = 0; i < w.grid().n_x(); ++i) {
    for (double& v : w.row(i)) v *= n[i];
  }
  return w;
}

// M (v + V'/(nu m)) and v dM/dx + M V''/(nu m)
std::pair<WignerField, WignerField> sources(const KernelM& M, const Potential& pot,
                                            const PhysicalParams& params) {
  const PhaseGrid& g = M.values.grid();
  auto x = g.space().points();
  auto v = g.v_points();
  const double c = 1.0 / (params.nu * params.m);
  WignerField s2(g);
  WignerField s1(g);
  for (std::size_t i = 0; i < g.n_x(); ++i) {
    const double v1 = pot.derivative(1, x[i]);
    const double v2 = pot.derivative(2, x[i]);
    auto m = M.values.row(i);
    auto mx = M.dx.row(i);
    auto r2 = s2.row(i);
    auto r1 = s1.row(i);
    for (std::size_t j = 0; j < g.n_v(); ++j) {
      r2[j] = m[j] * (v[j] + c * v1);
      r1[j] = v[j] * mx[j] + c * v2 * m[j];
    }
  }
  return {s2, s1};
}

}  // namespace

WignerField psi_bar_1(const DensityField& n, const KernelM& M, const Potential& pot,
                      const PhysicalParams& params) {
  require_same_grid(n.grid(), M.values.grid().space(), "psi_bar_1");
  const ThetaOperator theta(pot, params, M.values.grid());
  auto [s2, s1] = sources(M, pot, params);
  SpectralField h2 = dft_v(s2);
  SpectralField h1 = dft_v(s1);
  const PhaseGrid& g = M.values.grid();
  for (std::size_t i = 0; i < g.n_x(); ++i) {
    for (std::size_t l = 0; l < g.n_v(); ++l) {
      const Complex inv = 1.0 / Complex(-params.nu, theta.delta(i, l));
      h2(i, l) *= inv;
      h1(i, l) *= inv;
    }
  }
  WignerField out = rows_times(idft_v(h2), derivative_x(n));
  out += rows_times(idft_v(h1), n);
  return out;
}

D2D1Report verify_d2_d1(const KernelM& M, const Potential& pot, const PhysicalParams& params) {
  const PhaseGrid& g = M.values.grid();
  const ThetaOperator theta(pot, params, g);
  auto [s2, s1] = sources(M, pot, params);
  WignerField D2 = resolvent(theta, s2);
  WignerField D1 = resolvent(theta, s1);
  DensityField vD2 = first_moment(D2);
  DensityField vD1 = first_moment(D1);
  double err_d = 0.0;
  double err_w = 0.0;
  auto x = g.space().points();
  for (std::size_t i = 0; i < g.n_x(); ++i) {
    err_d = std::max(err_d, std::abs(vD2[i] - diffusion_coeff(pot, params, x[i])));
    err_w = std::max(err_w, std::abs(vD1[i] - drift_coeff(pot, params, x[i])));
  }
  return {std::move(D2), std::move(D1), std::move(vD2), std::move(vD1), err_d, err_w};
}

WignerField psi_bar_1_from_report(const DensityField& n, const D2D1Report& report) {
  WignerField out = rows_times(report.D2, derivative_x(n));
  out += rows_times(report.D1, n);
  out *= -1.0;
  return out;
}

AsymptoticSolution::AsymptoticSolution(DensityTrajectory n_traj,
                                       std::shared_ptr<const LayerTerms> layer,
                                       const Potential& pot, const PhysicalParams& params)
    : n_traj_(std::move(n_traj)), layer_(std::move(layer)), pot_(pot), params_(params) {}

WignerField AsymptoticSolution::bulk(double t) const {
  const DensityField& n = n_traj_.at(t);
  const KernelM& M = layer_->kernel();
  WignerField out = rows_times(M.values, n);
  out.axpy(params_.eps, psi_bar_1(n, M, pot_, params_));
  return out;
}

WignerField AsymptoticSolution::layer(double t) const {
  const double tau = t / params_.eps;
  WignerField out = layer_->psi0_tilde(tau);
  out.axpy(params_.eps, layer_->phi1_tilde(tau));
  out.axpy(params_.eps, layer_->psi1_tilde(tau));
  return out;
}

WignerField AsymptoticSolution::composite(double t) const { return bulk(t) + layer(t); }

ErrorSplit composite_error(const FieldTrajectory& kin, const AsymptoticSolution& asym,
                           const NormSpec& spec, double t) {
  const WignerField& w = kin.at(t);
  const WignerField b = asym.bulk(t);
  const WignerField l = asym.layer(t);
  WignerField rb = w - b;
  const double bulk = norm_xk(rb, spec);
  const double layer = norm_xk(l, spec);
  rb -= l;
  return {norm_xk(rb, spec), layer, bulk};
}

}  // namespace wigqdd
