#pragma once

#include <vector>

#include "wigqdd/core.h"
#include "wigqdd/potential.h"
#include "wigqdd/trajectory.h"
#include "wigqdd/transport.h"

namespace wigqdd {

using DensityTrajectory = Trajectory<DensityField>;

/// n1 = -d/dx  int v (nu - Theta)^{-1} psi0 dv  for a zero-mass psi0.
DensityField initial_correction_n1(const WignerField& psi0, const Potential& pot,
                                   const PhysicalParams& params);

struct QddProblem {
  TransportCoeffs coeffs;
  PhysicalParams params;
  DensityField n0;
  DensityField n1;
  /// Output times; the trajectory starts at 0 whether listed or not.
  std::vector<double> times;
  /// Requested step; capped by the advective limit. 0 means "use the limit".
  double dt = 0.0;

  /// n(0) = n0 + eps n1
  DensityField initial_density() const;
};

/// dn/dt = d/dx(E n) + eps d/dx(D dn/dx) + eps d/dx(W n) on a periodic grid,
/// in flux form with face diffusivities and centered drift differences.
/// Diffusion is Crank-Nicolson, drift explicit midpoint.
class QddSolver {
 public:
  QddSolver(TransportCoeffs coeffs, double eps);

  const SpaceGrid& grid() const { return coeffs_.grid; }
  /// 0.25 dx / max(|E| + eps |W|), infinite without drift.
  double stable_dt() const;

  DensityField step(const DensityField& n, double dt) const;
  /// Integrates from t0 to t1 in equal steps no longer than dt.
  DensityField advance(DensityField n, double t0, double t1, double dt) const;

  /// Drift operator A n and diffusion operator L n (both conserve sum n).
  void apply_drift(std::span<const double> n, std::span<double> out) const;
  void apply_diffusion(std::span<const double> n, std::span<double> out) const;

 private:
  TransportCoeffs coeffs_;
  double eps_;
  std::vector<double> drift_speed_;
};

DensityTrajectory qdd_solve(const QddProblem& problem);

/// Solves on grid.refined(factor) starting from the trigonometric
/// interpolant of n_init and samples the result back onto the coarse grid.
DensityTrajectory qdd_solve_refined(const Potential& pot, const PhysicalParams& params,
                                    const DensityField& n_init,
                                    const std::vector<double>& times, double dt,
                                    std::size_t factor);

}  // namespace wigqdd
