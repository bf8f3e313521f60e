#include "wigqdd/transport.h"

#include <algorithm>
#include <sstream>

#include "wigqdd/errors.h"

namespace wigqdd {

double diffusion_coeff(const Potential& pot, const PhysicalParams& params, double x) {
  const double nu = params.nu;
  const double m = params.m;
  const double v1 = pot.derivative(1, x);
  const double v2 = pot.derivative(2, x);
  return (1.0 / (params.beta * m) + v1 * v1 / (nu * nu * m * m) +
          params.beta * params.hbar * params.hbar * v2 / (12.0 * m * m)) /
         nu;
}

double drift_coeff(const Potential& pot, const PhysicalParams& params, double x) {
  const double nu = params.nu;
  const double m = params.m;
  const double v1 = pot.derivative(1, x);
  const double v2 = pot.derivative(2, x);
  const double v3 = pot.derivative(3, x);
  return (3.0 * v2 * v1 / (nu * nu * m * m) +
          params.beta * params.hbar * params.hbar * v3 / (12.0 * m * m)) /
         nu;
}

double field_coeff(const Potential& pot, const PhysicalParams& params, double x) {
  return pot.derivative(1, x) / (params.nu * params.m);
}

TransportCoeffs transport_coeffs(const Potential& pot, const PhysicalParams& params,
                                 const SpaceGrid& grid) {
  TransportCoeffs c{grid, {}, {}, {}, {}, 0.0};
  const std::size_t n = grid.size();
  c.D.resize(n);
  c.W.resize(n);
  c.E.resize(n);
  c.D_half.resize(n);
  const double h = grid.spacing();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.point(i);
    c.D[i] = diffusion_coeff(pot, params, x);
    c.W[i] = drift_coeff(pot, params, x);
    c.E[i] = field_coeff(pot, params, x);
    c.D_half[i] = diffusion_coeff(pot, params, x + 0.5 * h);
  }
  c.ellipticity_floor = check_ellipticity(c);
  return c;
}

double check_ellipticity(const TransportCoeffs& coeffs) {
  double lo = *std::min_element(coeffs.D.begin(), coeffs.D.end());
  if (!coeffs.D_half.empty()) {
    lo = std::min(lo, *std::min_element(coeffs.D_half.begin(), coeffs.D_half.end()));
  }
  if (!(lo > 0.0)) {
    std::ostringstream msg;
    msg << "diffusion coefficient is not uniformly positive (min D = " << lo << ")";
    throw EllipticityViolation(msg.str());
  }
  return lo;
}

}  // namespace wigqdd
