#include "wigqdd/selftest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "wigqdd/equilibrium.h"
#include "wigqdd/kinetic.h"
#include "wigqdd/layer.h"
#include "wigqdd/pseudodiff.h"
#include "wigqdd/qdd.h"

namespace wigqdd {

namespace {

WignerField smooth_random(const PhaseGrid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> coef(0.0, 1.0);
  const double a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng);
  WignerField w(g);
  auto v = g.v_points();
  for (std::size_t i = 0; i < g.n_x(); ++i) {
    const double x = g.space().point(i);
    for (std::size_t j = 0; j < g.n_v(); ++j) {
      const double env = std::exp(-0.5 * v[j] * v[j]);
      w(i, j) = env * (a + b * std::sin(x) + c * v[j] * std::cos(x) + d * v[j] * v[j]);
    }
  }
  return w;
}

}  // namespace

std::vector<SelftestCheck> run_selftest(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SelftestCheck> out;
  PhysicalParams params;
  const PhaseGrid grid(SpaceGrid(32, 2.0 * std::numbers::pi), 64, 10.0);
  const Potential pot = Potential::cosine(0.2, 1.0);
  const NormSpec spec{};

  const WignerField w = smooth_random(grid, rng);
  out.push_back({"dft round trip", (idft_v(dft_v(w)) - w).max_abs(), 1e-12});

  const ThetaOperator theta(pot, params, grid);
  const WignerField tw = apply_theta(theta, w);
  out.push_back({"theta skew symmetry", std::abs(inner_l2(tw, w)) / inner_l2(w, w), 1e-10});
  out.push_back({"theta mass annihilation", density(tw).max_abs(), 1e-12});

  const WignerField r = resolvent(theta, w);
  WignerField back = params.nu * r;
  back -= apply_theta(theta, r);
  out.push_back({"resolvent round trip", (back - w).max_abs() / w.max_abs(), 1e-10});

  const KernelM M = kernel_m(pot, params, grid);
  double moment_err = 0.0;
  for (std::size_t i = 0; i < grid.n_x(); ++i) {
    const KernelMoments c = kernel_moments_closed_form(pot, params, grid.space().point(i));
    moment_err = std::max({moment_err, std::abs(M.mass[i] - c.m0),
                           std::abs(M.first_moment[i] - c.m1),
                           std::abs(M.second_moment[i] - c.m2) / c.m2});
  }
  out.push_back({"kernel moments", moment_err, 1e-6});

  DensityField n(grid.space());
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = 1.0 + 0.3 * std::cos(grid.space().point(i));
  WignerField nm = M.values;
  for (std::size_t i = 0; i < grid.n_x(); ++i) {
    for (double& v : nm.row(i)) v *= n[i];
  }
  const WignerField profile = equilibrium_profile(pot, params, grid);
  out.push_back({"kernel fixed point", norm_xk(apply_ac(theta, profile, nm), spec), 1e-8});

  const WignerField q = project_q(w, M);
  const double tau = 0.7;
  const double ratio = norm_l2(semigroup_g(theta, q, tau)) - std::exp(-params.nu * tau) * norm_l2(q);
  out.push_back({"semigroup decay", std::abs(ratio), 1e-12});

  const PhysicalParams pe = params.with_eps(0.1);
  const QddSolver qdd(transport_coeffs(pot, pe, grid.space()), pe.eps);
  const DensityField n_end = qdd.advance(n, 0.0, 1.0, 0.0);
  out.push_back({"qdd mass conservation", std::abs(n_end.total() - n.total()) / n.total(), 1e-10});

  const KineticSolver kin(pot, pe, grid);
  const double mass0 = density(nm).total();
  const WignerField w_end = kin.advance(nm, 0.01, 100);
  out.push_back({"kinetic mass conservation", std::abs(density(w_end).total() - mass0) / mass0,
                 1e-10});
  return out;
}

}  // namespace wigqdd
