#pragma once

#include <vector>

#include "wigqdd/core.h"
#include "wigqdd/potential.h"
#include "wigqdd/trajectory.h"

namespace wigqdd {

using FieldTrajectory = Trajectory<WignerField>;

struct KineticProblem {
  Potential pot;
  PhysicalParams params;
  WignerField w0;
  /// Output times; each interval is split into equal steps no longer than dt.
  std::vector<double> times;
  double dt;
};

/// Strang splitting for  dw/dt = -v dw/dx + (1/eps)(Theta - nu) w
///                                 + (nu/eps) n[w] (F + hbar^2 F2).
/// Both substeps are exact: free streaming by a Fourier phase in x, and the
/// collision-field flow mode by mode in eta with n frozen (it is invariant).
class KineticSolver {
 public:
  KineticSolver(const Potential& pot, const PhysicalParams& params, PhaseGrid grid);

  const PhaseGrid& grid() const { return grid_; }

  WignerField transport_substep(const WignerField& w, double dt) const;
  WignerField collision_field_substep(const WignerField& w, double dt) const;

  /// `steps` Strang steps of length dt, with neighbouring half streams fused.
  WignerField advance(const WignerField& w, double dt, std::size_t steps) const;

 private:
  void stream(std::vector<Complex>& buf, double dt) const;
  void relax(SpectralField& s, const DensityField& n, double dt) const;

  PhaseGrid grid_;
  PhysicalParams params_;
  std::vector<double> delta_;
  std::vector<Complex> profile_hat_;
};

FieldTrajectory kinetic_solve(const KineticProblem& problem);

}  // namespace wigqdd
