#pragma once

#include "wigqdd/core.h"
#include "wigqdd/equilibrium.h"
#include "wigqdd/potential.h"
#include "wigqdd/pseudodiff.h"

namespace wigqdd {

/// G(tau) w = exp(-nu tau) F^{-1}[exp(i deltaV tau) F w] for zero-mass w.
WignerField semigroup_g(const ThetaOperator& theta, const WignerField& w, double tau);

/// Q S Q g = -v dg/dx + M d/dx int v g dv for zero-mass g.
WignerField qsq_apply(const WignerField& g, const KernelM& M);

/// Initial-layer terms for the datum w0 = n0 M + psi0, as functions of the
/// fast time tau = t/eps.
class LayerTerms {
 public:
  LayerTerms(const WignerField& w0, KernelM M, const Potential& pot,
             const PhysicalParams& params);

  const DensityField& n0() const { return n0_; }
  const WignerField& psi0() const { return psi0_; }
  const KernelM& kernel() const { return M_; }
  const ThetaOperator& theta() const { return theta_; }

  WignerField psi0_tilde(double tau) const;
  WignerField phi1_tilde(double tau) const;
  WignerField psi1_tilde(double tau) const;

  /// -(nu - Theta)^{-1} Q S (n0 M)
  const WignerField& psi1_tilde_initial() const { return psi1_init_; }

  /// int_0^tau G(tau - s) QSQ G(s) psi0 ds on `panels` equal panels of a
  /// 32-point Gauss-Legendre rule.
  WignerField duhamel(double tau, std::size_t panels) const;
  /// Panel count duhamel() settled on for tau (doubling until successive
  /// values differ by at most 1e-8 in X_k norm).
  std::size_t converged_panels(double tau) const;

 private:
  WignerField duhamel_converged(double tau, std::size_t* panels) const;

  KernelM M_;
  ThetaOperator theta_;
  DensityField n0_;
  WignerField psi0_;
  bool psi0_zero_;
  WignerField psi1_init_;
};

}  // namespace wigqdd
