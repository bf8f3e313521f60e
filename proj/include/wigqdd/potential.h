#pragma once

#include <array>
#include <string>
#include <vector>

#include "wigqdd/core.h"

namespace wigqdd {

enum class PotentialKind { zero, linear, harmonic, gaussian_bump, cosine };

/// Analytic external potential with exact derivatives up to fourth order.
///
/// linear and harmonic are aperiodic: they may feed pointwise-in-x
/// operators (coefficients, Theta rows) but never periodic x-transport.
class Potential {
 public:
  static Potential zero();
  /// V = E0 x
  static Potential linear(double e0);
  /// V = omega^2 x^2 / 2
  static Potential harmonic(double omega);
  /// V = A exp(-(x - center)^2 / (2 sigma^2))
  static Potential gaussian_bump(double amplitude, double sigma, double center = 0.0);
  /// V = A cos(k0 x)
  static Potential cosine(double amplitude, double k0);

  /// Same potential shifted by an additive constant.
  Potential with_offset(double c) const;

  PotentialKind kind() const { return kind_; }
  std::string name() const;
  double offset() const { return offset_; }

  double value(double x) const { return derivative(0, x); }
  /// d^order V / dx^order for order in [0, 4].
  double derivative(int order, double x) const;

  bool aperiodic() const {
    return kind_ == PotentialKind::linear || kind_ == PotentialKind::harmonic;
  }
  /// True when V and its derivatives are L-periodic on the grid's box to
  /// roundoff (cosine with commensurate k0, a bump decayed at the seam).
  bool periodic_on(const SpaceGrid& grid) const;
  /// Throws ConfigError unless periodic_on(grid).
  void require_periodic(const SpaceGrid& grid) const;

  /// Quantum difference quotient, see delta_v.
  double delta(const PhysicalParams& params, double x, double eta) const;
  double delta_dx(const PhysicalParams& params, double x, double eta) const;

 private:
  Potential(PotentialKind kind, double a, double b, double c)
      : kind_(kind), a_(a), b_(b), c_(c) {}

  PotentialKind kind_;
  double a_;
  double b_;
  double c_;
  double offset_ = 0.0;
};

/// [V(x + hbar eta / 2m) - V(x - hbar eta / 2m)] / hbar; odd in eta.
double delta_v(const Potential& pot, const PhysicalParams& params, double x, double eta);

/// x-derivative of delta_v.
double delta_v_dx(const Potential& pot, const PhysicalParams& params, double x, double eta);

struct PotentialDerivatives {
  std::array<std::vector<double>, 5> order;  // V, V', V'', V''', V''''
  const std::vector<double>& operator[](int k) const { return order[static_cast<std::size_t>(k)]; }
};

PotentialDerivatives derivatives(const Potential& pot, const SpaceGrid& grid);

}  // namespace wigqdd
