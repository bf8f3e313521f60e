#pragma once

#include <memory>

#include "wigqdd/core.h"
#include "wigqdd/equilibrium.h"
#include "wigqdd/kinetic.h"
#include "wigqdd/layer.h"
#include "wigqdd/potential.h"
#include "wigqdd/qdd.h"

namespace wigqdd {

/// psi_bar_1 = dn/dx F^{-1}[(i dV - nu)^{-1} F(M (v + V'/(nu m)))]
///           + n     F^{-1}[(i dV - nu)^{-1} F(v dM/dx + M V''/(nu m))]
WignerField psi_bar_1(const DensityField& n, const KernelM& M, const Potential& pot,
                      const PhysicalParams& params);

struct D2D1Report {
  /// (nu - Theta)^{-1} [M (v + V'/(nu m))]
  WignerField D2;
  /// (nu - Theta)^{-1} [v dM/dx + M V''/(nu m)]
  WignerField D1;
  DensityField vD2;
  DensityField vD1;
  double max_err_D;
  double max_err_W;
};

D2D1Report verify_d2_d1(const KernelM& M, const Potential& pot, const PhysicalParams& params);

/// -(D2 dn/dx + D1 n), the same field through the report.
WignerField psi_bar_1_from_report(const DensityField& n, const D2D1Report& report);

struct ErrorSplit {
  double composite;
  /// Norm of the summed initial-layer terms.
  double layer;
  /// Norm of w - n M - eps psi_bar_1.
  double bulk;
};

/// n M + eps psi_bar_1 + psi0_tilde(t/eps) + eps phi1_tilde(t/eps) + eps psi1_tilde(t/eps)
/// with n the QDD density.
class AsymptoticSolution {
 public:
  AsymptoticSolution(DensityTrajectory n_traj, std::shared_ptr<const LayerTerms> layer,
                     const Potential& pot, const PhysicalParams& params);

  const DensityTrajectory& density() const { return n_traj_; }
  const PhysicalParams& params() const { return params_; }

  WignerField bulk(double t) const;
  WignerField layer(double t) const;
  WignerField composite(double t) const;

 private:
  DensityTrajectory n_traj_;
  std::shared_ptr<const LayerTerms> layer_;
  Potential pot_;
  PhysicalParams params_;
};

ErrorSplit composite_error(const FieldTrajectory& kin, const AsymptoticSolution& asym,
                           const NormSpec& spec, double t);

}  // namespace wigqdd
