#include "wigqdd/potential.h"

#include <cmath>
#include <numbers>

#include "wigqdd/errors.h"

namespace wigqdd {

Potential Potential::zero() { return {PotentialKind::zero, 0.0, 0.0, 0.0}; }

Potential Potential::linear(double e0) { return {PotentialKind::linear, e0, 0.0, 0.0}; }

Potential Potential::harmonic(double omega) {
  return {PotentialKind::harmonic, omega, 0.0, 0.0};
}

Potential Potential::gaussian_bump(double amplitude, double sigma, double center) {
  if (!(sigma > 0.0)) throw ConfigError("gaussian_bump: sigma must be positive");
  return {PotentialKind::gaussian_bump, amplitude, sigma, center};
}

Potential Potential::cosine(double amplitude, double k0) {
  return {PotentialKind::cosine, amplitude, k0, 0.0};
}

Potential Potential::with_offset(double c) const {
  Potential p = *this;
  p.offset_ = offset_ + c;
  return p;
}

std::string Potential::name() const {
  switch (kind_) {
    case PotentialKind::zero: return "zero";
    case PotentialKind::linear: return "linear";
    case PotentialKind::harmonic: return "harmonic";
    case PotentialKind::gaussian_bump: return "gaussian_bump";
    case PotentialKind::cosine: return "cosine";
  }
  return "unknown";
}

double Potential::derivative(int order, double x) const {
  if (order < 0 || order > 4) throw std::out_of_range("Potential::derivative order");
  const double base = order == 0 ? offset_ : 0.0;
  switch (kind_) {
    case PotentialKind::zero:
      return base;
    case PotentialKind::linear:
      return base + (order == 0 ? a_ * x : (order == 1 ? a_ : 0.0));
    case PotentialKind::harmonic: {
      const double w2 = a_ * a_;
      if (order == 0) return base + 0.5 * w2 * x * x;
      if (order == 1) return w2 * x;
      if (order == 2) return w2;
      return 0.0;
    }
    case PotentialKind::gaussian_bump: {
      // d^n/dx^n exp(-s^2/2) = (-1/sigma)^n He_n(s) exp(-s^2/2), s = (x-c)/sigma
      const double s = (x - c_) / b_;
      const double g = a_ * std::exp(-0.5 * s * s);
      const double s2 = s * s;
      switch (order) {
        case 0: return base + g;
        case 1: return -s * g / b_;
        case 2: return (s2 - 1.0) * g / (b_ * b_);
        case 3: return -(s2 * s - 3.0 * s) * g / (b_ * b_ * b_);
        default: return (s2 * s2 - 6.0 * s2 + 3.0) * g / (b_ * b_ * b_ * b_);
      }
    }
    case PotentialKind::cosine: {
      const double k = b_;
      const double c = std::cos(k * x);
      const double sn = std::sin(k * x);
      switch (order) {
        case 0: return base + a_ * c;
        case 1: return -a_ * k * sn;
        case 2: return -a_ * k * k * c;
        case 3: return a_ * k * k * k * sn;
        default: return a_ * k * k * k * k * c;
      }
    }
  }
  return 0.0;
}

bool Potential::periodic_on(const SpaceGrid& grid) const {
  switch (kind_) {
    case PotentialKind::zero:
      return true;
    case PotentialKind::linear:
    case PotentialKind::harmonic:
      return false;
    case PotentialKind::cosine: {
      const double cycles = b_ * grid.length() / (2.0 * std::numbers::pi);
      return std::abs(cycles - std::round(cycles)) < 1e-12 * std::max(1.0, std::abs(cycles));
    }
    case PotentialKind::gaussian_bump: {
      // Every derivative up to fourth order must vanish at the seam.
      const double edge = 0.5 * grid.length();
      for (double x : {-edge, edge}) {
        for (int k = 1; k <= 4; ++k) {
          if (std::abs(derivative(k, x)) > 1e-14 * std::max(1.0, std::abs(a_))) return false;
        }
        if (std::abs(derivative(0, x) - offset_) > 1e-14 * std::max(1.0, std::abs(a_))) return false;
      }
      return true;
    }
  }
  return false;
}

void Potential::require_periodic(const SpaceGrid& grid) const {
  if (!periodic_on(grid)) {
    throw ConfigError("potential '" + name() +
                      "' is not periodic on the x-box; it cannot drive periodic transport");
  }
}

double Potential::delta(const PhysicalParams& params, double x, double eta) const {
  const double a = params.hbar * eta / (2.0 * params.m);
  switch (kind_) {
    case PotentialKind::zero:
      return 0.0;
    case PotentialKind::linear:
      return a_ * eta / params.m;
    case PotentialKind::harmonic:
      // Quadratic V: the difference quotient is exact for every hbar.
      return a_ * a_ * x * eta / params.m;
    case PotentialKind::cosine:
      // A[cos(k(x+a)) - cos(k(x-a))] = -2A sin(kx) sin(ka)
      return -2.0 * a_ * std::sin(b_ * x) * std::sin(b_ * a) / params.hbar;
    case PotentialKind::gaussian_bump:
      return (derivative(0, x + a) - derivative(0, x - a)) / params.hbar;
  }
  return 0.0;
}

double Potential::delta_dx(const PhysicalParams& params, double x, double eta) const {
  const double a = params.hbar * eta / (2.0 * params.m);
  switch (kind_) {
    case PotentialKind::zero:
    case PotentialKind::linear:
      return 0.0;
    case PotentialKind::harmonic:
      return a_ * a_ * eta / params.m;
    case PotentialKind::cosine:
      return -2.0 * a_ * b_ * std::cos(b_ * x) * std::sin(b_ * a) / params.hbar;
    case PotentialKind::gaussian_bump:
      return (derivative(1, x + a) - derivative(1, x - a)) / params.hbar;
  }
  return 0.0;
}

double delta_v(const Potential& pot, const PhysicalParams& params, double x, double eta) {
  return pot.delta(params, x, eta);
}

double delta_v_dx(const Potential& pot, const PhysicalParams& params, double x, double eta) {
  return pot.delta_dx(params, x, eta);
}

PotentialDerivatives derivatives(const Potential& pot, const SpaceGrid& grid) {
  PotentialDerivatives d;
  for (int k = 0; k <= 4; ++k) {
    auto& arr = d.order[static_cast<std::size_t>(k)];
    arr.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) arr[i] = pot.derivative(k, grid.point(i));
  }
  return d;
}

}  // namespace wigqdd
