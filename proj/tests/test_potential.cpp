#include <doctest.h>

#include "support.h"
#include "wigqdd/errors.h"
#include "wigqdd/potential.h"

using namespace wigqdd;
using namespace wigqdd::testing;

namespace {

std::vector<Potential> catalog() {
  return {Potential::zero(), Potential::linear(0.7), Potential::harmonic(1.3),
          Potential::gaussian_bump(0.4, 0.6, 0.2), Potential::cosine(0.3, 2.0)};
}

}  // namespace

TEST_SUITE("potential") {

TEST_CASE("delta_v vanishes at eta = 0 and for the zero potential") {
  PhysicalParams p;
  for (const Potential& pot : catalog()) {
    for (double x : {-1.0, 0.0, 0.4, 2.5}) CHECK(delta_v(pot, p, x, 0.0) == 0.0);
  }
  for (double x : {-1.0, 0.3}) {
    for (double eta : {-4.0, 0.5, 7.0}) CHECK(delta_v(Potential::zero(), p, x, eta) == 0.0);
  }
}

TEST_CASE("harmonic delta_v is exact for every hbar") {
  const double omega = 1.3;
  const Potential pot = Potential::harmonic(omega);
  for (double hbar : {1e-3, 0.5, 1.0, 3.0}) {
    PhysicalParams p;
    p.hbar = hbar;
    p.m = 0.7;
    for (double x : {-2.0, 0.1, 1.5}) {
      for (double eta : {-3.0, 0.2, 5.0}) {
        // independent oracle: the difference quotient evaluated literally
        const double a = hbar * eta / (2 * p.m);
        const double literal = (pot.value(x + a) - pot.value(x - a)) / hbar;
        CHECK(delta_v(pot, p, x, eta) == doctest::Approx(omega * omega * x * eta / p.m).epsilon(1e-12));
        CHECK(literal == doctest::Approx(omega * omega * x * eta / p.m).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("derivative arrays") {
  const SpaceGrid s(64, kTwoPi);
  const PotentialDerivatives lin = derivatives(Potential::linear(0.8), s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(lin[1][i] == 0.8);
    CHECK(lin[2][i] == 0.0);
    CHECK(lin[3][i] == 0.0);
    CHECK(lin[4][i] == 0.0);
  }
  const PotentialDerivatives zero = derivatives(Potential::zero(), s);
  for (int k = 0; k <= 4; ++k) {
    for (double v : zero[k]) CHECK(v == 0.0);
  }
}

TEST_CASE("periodic derivatives match spectral differentiation") {
  const SpaceGrid s(64, 4.0 * std::numbers::pi);
  for (const Potential& pot : {Potential::cosine(0.4, 1.5), Potential::gaussian_bump(0.3, 0.8)}) {
    const PotentialDerivatives d = derivatives(pot, s);
    DensityField f(s, d[0]);
    for (int k = 1; k <= 4; ++k) {
      f = derivative_x(f);
      double scale = 0.0;
      for (double v : d[k]) scale = std::max(scale, std::abs(v));
      CHECK(max_diff(f, DensityField(s, d[k])) <= 1e-10 * scale);
    }
  }
  const PotentialDerivatives c = derivatives(Potential::cosine(0.4, 1.5), s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(c[2][i] == doctest::Approx(-0.4 * 2.25 * std::cos(1.5 * s.point(i))).epsilon(1e-14));
  }
}

TEST_CASE("bump derivatives match central differences") {
  const Potential pot = Potential::gaussian_bump(0.5, 0.7, -0.3);
  const double h = 1e-4;
  for (double x : {-1.2, -0.3, 0.4, 1.1}) {
    for (int k = 1; k <= 4; ++k) {
      const double fd = (pot.derivative(k - 1, x + h) - pot.derivative(k - 1, x - h)) / (2 * h);
      CHECK(pot.derivative(k, x) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("property: delta_v is odd in eta") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  PhysicalParams p;
  p.hbar = 0.8;
  for (const Potential& pot : catalog()) {
    for (int rep = 0; rep < 200; ++rep) {
      const double x = u(rng), eta = u(rng);
      CHECK(delta_v(pot, p, x, -eta) == doctest::Approx(-delta_v(pot, p, x, eta)).epsilon(1e-12).scale(1e-12));
    }
  }
}

TEST_CASE("property: classical limit of delta_v") {
  // The remainder deltaV - V' eta/m must shrink at least linearly in hbar.
  for (const Potential& pot : catalog()) {
    for (double x : {-0.7, 0.35, 1.2}) {
      const double eta = 1.7;
      std::vector<double> rem;
      for (double hbar : {1e-1, 1e-2, 1e-3}) {
        PhysicalParams p;
        p.hbar = hbar;
        rem.push_back(std::abs(delta_v(pot, p, x, eta) - pot.derivative(1, x) * eta / p.m));
      }
      if (rem[0] < 1e-13) continue;
      CHECK(rem[1] <= rem[0] * 0.1 * (1 + 1e-6));
      CHECK(rem[2] <= rem[1] * 0.1 * (1 + 1e-3) + 1e-14);
    }
  }
}

TEST_CASE("quadratic potentials have the classical delta_v") {
  for (const Potential& pot : {Potential::zero(), Potential::linear(-1.1), Potential::harmonic(0.9)}) {
    for (double hbar : {0.1, 1.0, 4.0}) {
      PhysicalParams p;
      p.hbar = hbar;
      for (double x : {-1.0, 0.5}) {
        for (double eta : {-2.0, 3.0}) {
          CHECK(delta_v(pot, p, x, eta) == doctest::Approx(pot.derivative(1, x) * eta / p.m).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("periodicity flags") {
  const SpaceGrid box(64, kTwoPi);
  CHECK(Potential::linear(1.0).aperiodic());
  CHECK(Potential::harmonic(1.0).aperiodic());
  CHECK_THROWS_AS(Potential::linear(1.0).require_periodic(box), ConfigError);
  CHECK_THROWS_AS(Potential::harmonic(1.0).require_periodic(box), ConfigError);
  CHECK(Potential::cosine(0.1, 1.0).periodic_on(box));
  CHECK_FALSE(Potential::cosine(0.1, 1.5).periodic_on(box));
  CHECK(Potential::gaussian_bump(0.2, 0.4).periodic_on(SpaceGrid(64, 4 * std::numbers::pi)));
  CHECK_FALSE(Potential::gaussian_bump(0.2, 1.0).periodic_on(box));
  CHECK_THROWS_AS(Potential::gaussian_bump(0.2, 0.0), ConfigError);
}

TEST_CASE("additive offset changes only the value") {
  const Potential a = Potential::cosine(0.3, 1.0);
  const Potential b = a.with_offset(5.0);
  PhysicalParams p;
  CHECK(b.value(0.4) == doctest::Approx(a.value(0.4) + 5.0));
  for (int k = 1; k <= 4; ++k) CHECK(b.derivative(k, 0.4) == a.derivative(k, 0.4));
  CHECK(delta_v(b, p, 0.4, 1.3) == doctest::Approx(delta_v(a, p, 0.4, 1.3)).epsilon(1e-14));
}

}
