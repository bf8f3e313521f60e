#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "wigqdd/core.h"

namespace wigqdd::testing {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline PhaseGrid small_grid(std::size_t nx = 32, std::size_t nv = 64, double length = kTwoPi,
                            double v_max = 10.0) {
  return PhaseGrid(SpaceGrid(nx, length), nv, v_max);
}

/// Smooth random field, Gaussian-decaying in v, periodic in x.
inline WignerField random_field(const PhaseGrid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> c(0.0, 1.0);
  double a[8];
  for (double& v : a) v = c(rng);
  const double k = kTwoPi / g.space().length();
  WignerField w(g);
  auto v = g.v_points();
  for (std::size_t i = 0; i < g.n_x(); ++i) {
    const double x = g.space().point(i);
    for (std::size_t j = 0; j < g.n_v(); ++j) {
      const double u = v[j];
      const double env = std::exp(-0.5 * (u - 0.3 * a[7]) * (u - 0.3 * a[7]));
      w(i, j) = env * (a[0] + a[1] * std::sin(k * x) + a[2] * u * std::cos(k * x) +
                       a[3] * u * u + a[4] * std::cos(2 * k * x) * u * u * u +
                       a[5] * std::sin(3 * k * x) * u + a[6] * std::cos(k * x) * u * u);
    }
  }
  return w;
}

/// Raw grid noise (not smooth), finite.
inline WignerField noise_field(const PhaseGrid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  WignerField w(g);
  for (double& x : w.values()) x = u(rng);
  return w;
}

template <class F>
DensityField sample(const SpaceGrid& g, F f) {
  DensityField n(g);
  for (std::size_t i = 0; i < g.size(); ++i) n[i] = f(g.point(i));
  return n;
}

inline WignerField times_rows(WignerField w, const DensityField& n) {
  for (std::size_t i = 0; i < w.grid().n_x(); ++i) {
    for (double& v : w.row(i)) v *= n[i];
  }
  return w;
}

inline double max_diff(const DensityField& a, const DensityField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace wigqdd::testing
