#include <doctest.h>

#include "support.h"
#include "wigqdd/assembler.h"
#include "wigqdd/equilibrium.h"
#include "wigqdd/errors.h"

using namespace wigqdd;
using namespace wigqdd::testing;

TEST_SUITE("assembler") {

TEST_CASE("constant potential: psi bar 1 = -(1/nu) dn/dx v F") {
  PhysicalParams p;
  p.nu = 1.7;
  const PhaseGrid g = small_grid(32, 128);
  const KernelM M = kernel_m(Potential::zero(), p, g);
  const DensityField n = sample(g.space(), [](double x) { return 1.0 + 0.3 * std::sin(2 * x); });
  const WignerField psi = psi_bar_1(n, M, Potential::zero(), p);
  const std::vector<double> F = maxwellian(p, g);
  double err = 0.0;
  for (std::size_t i = 0; i < g.n_x(); ++i) {
    const double dn = 0.6 * std::cos(2 * g.space().point(i));
    for (std::size_t j = 0; j < g.n_v(); ++j) {
      err = std::max(err, std::abs(psi(i, j) + dn / p.nu * g.v_points()[j] * F[j]));
    }
  }
  CHECK(err <= 1e-12);
  const DensityField flat = sample(g.space(), [](double) { return 1.3; });
  CHECK(psi_bar_1(flat, M, Potential::zero().with_offset(0.4), p).max_abs() <= 1e-12);
}

TEST_CASE("psi bar 1 has zero mass") {
  PhysicalParams p;
  const PhaseGrid g = small_grid(32, 128);
  const Potential pot = Potential::cosine(0.2, 1.0);
  const KernelM M = kernel_m(pot, p, g);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (int rep = 0; rep < 5; ++rep) {
    const double a = u(rng), b = u(rng);
    const DensityField n = sample(g.space(), [&](double x) { return 1.0 + a * std::cos(x) + b * std::sin(3 * x); });
    CHECK(density(psi_bar_1(n, M, pot, p)).max_abs() <= 1e-10);
  }
}

TEST_CASE("first moments of D2 and D1 reproduce D and W") {
  PhysicalParams p;
  p.nu = 1.2;
  p.beta = 0.9;
  const PhaseGrid g = small_grid(32, 128);
  for (const Potential& pot : {Potential::zero(), Potential::cosine(0.2, 1.0), Potential::cosine(0.1, 2.0)}) {
    const D2D1Report rep = verify_d2_d1(kernel_m(pot, p, g), pot, p);
    CHECK(rep.max_err_D <= 1e-6);
    CHECK(rep.max_err_W <= 1e-6);
  }
}

TEST_CASE("explicit and resolvent routes to psi bar 1 agree") {
  PhysicalParams p;
  const PhaseGrid g = small_grid(32, 128);
  const Potential pot = Potential::cosine(0.2, 1.0);
  const KernelM M = kernel_m(pot, p, g);
  const D2D1Report rep = verify_d2_d1(M, pot, p);
  const DensityField n = sample(g.space(), [](double x) { return 1.0 + 0.5 * std::cos(x); });
  const WignerField a = psi_bar_1(n, M, pot, p);
  CHECK(norm_l2(a - psi_bar_1_from_report(n, rep)) <= 1e-8 * norm_l2(a));
}

TEST_CASE("composite solution and its error split") {
  PhysicalParams p;
  p.eps = 0.1;
  const PhaseGrid g = small_grid(32, 128);
  const Potential pot = Potential::cosine(0.2, 1.0);
  const KernelM M = kernel_m(pot, p, g);
  const DensityField n0 = sample(g.space(), [](double x) { return 1.0 + 0.5 * std::cos(x); });
  const WignerField w0 = times_rows(M.values, n0);
  auto layer = std::make_shared<const LayerTerms>(w0, M, pot, p);
  const std::vector<double> times{0.0, 0.1};
  const DensityTrajectory n_traj =
      qdd_solve({transport_coeffs(pot, p, g.space()), p, n0, DensityField(g.space()), times, 0.0});
  const AsymptoticSolution asym(n_traj, layer, pot, p);
  const NormSpec spec{};

  SUBCASE("a prepared datum is reproduced at t = 0") {
    const FieldTrajectory kin = kinetic_solve({pot, p, w0, {0.0}, 0.01});
    CHECK(composite_error(kin, asym, spec, 0.0).composite <= 1e-9);
    CHECK_THROWS_AS(composite_error(kin, asym, spec, 0.05), TimeNotInTrajectory);
  }
  SUBCASE("the composite itself has zero error") {
    FieldTrajectory kin;
    for (double t : times) {
      kin.times.push_back(t);
      kin.states.push_back(asym.composite(t));
    }
    for (double t : times) CHECK(composite_error(kin, asym, spec, t).composite <= 1e-13);
  }
  SUBCASE("the split obeys the triangle inequality") {
    const FieldTrajectory kin = kinetic_solve({pot, p, w0, times, 0.01});
    for (double t : times) {
      const ErrorSplit e = composite_error(kin, asym, spec, t);
      CHECK(e.composite <= e.bulk + e.layer + 1e-14);
      CHECK(e.bulk <= e.composite + e.layer + 1e-14);
      CHECK(e.layer <= e.composite + e.bulk + 1e-14);
    }
  }
}

}
