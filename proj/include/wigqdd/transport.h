#pragma once

#include <vector>

#include "wigqdd/core.h"
#include "wigqdd/potential.h"

namespace wigqdd {

/// D(x) = (1/nu) (1/(beta m) + V'^2/(nu^2 m^2) + beta hbar^2 V''/(12 m^2))
double diffusion_coeff(const Potential& pot, const PhysicalParams& params, double x);
/// W(x) = (1/nu) (3 V'' V'/(nu^2 m^2) + beta hbar^2 V'''/(12 m^2))
double drift_coeff(const Potential& pot, const PhysicalParams& params, double x);
/// E(x) = V'/(nu m)
double field_coeff(const Potential& pot, const PhysicalParams& params, double x);

struct TransportCoeffs {
  SpaceGrid grid;
  std::vector<double> D;
  std::vector<double> W;
  std::vector<double> E;
  /// D at the cell faces x_i + dx/2.
  std::vector<double> D_half;
  double ellipticity_floor = 0.0;
};

/// Tabulates the coefficients and runs check_ellipticity.
TransportCoeffs transport_coeffs(const Potential& pot, const PhysicalParams& params,
                                 const SpaceGrid& grid);

/// min D over the grid (and faces); EllipticityViolation if not positive.
double check_ellipticity(const TransportCoeffs& coeffs);

}  // namespace wigqdd
