#pragma once

#include <vector>

#include "wigqdd/core.h"
#include "wigqdd/potential.h"
#include "wigqdd/pseudodiff.h"

namespace wigqdd {

/// F(v) = (beta m / 2 pi)^{1/2} exp(-beta m v^2 / 2) on the v grid.
std::vector<double> maxwellian(const PhysicalParams& params, const PhaseGrid& grid);

/// F2 = (beta^2/24) [-V''/m + beta v^2 V''] F.
WignerField f2_correction(const Potential& pot, const PhysicalParams& params,
                          const PhaseGrid& grid);

/// F + hbar^2 F2, the profile Omega relaxes towards.
WignerField equilibrium_profile(const Potential& pot, const PhysicalParams& params,
                                const PhaseGrid& grid);

/// Omega w = nu n[w] (F + hbar^2 F2).
WignerField omega_apply(const WignerField& w, const Potential& pot,
                        const PhysicalParams& params);

/// (A + C) w = Theta w - nu w + Omega w, with the profile precomputed.
WignerField apply_ac(const ThetaOperator& theta, const WignerField& profile,
                     const WignerField& w);

struct KernelM {
  WignerField values;
  /// Analytic x-derivative (differentiates the multiplier, not the samples).
  WignerField dx;
  DensityField mass;
  DensityField first_moment;
  DensityField second_moment;
};

/// M = nu (nu - Theta)^{-1} (F + hbar^2 F2).
KernelM kernel_m(const Potential& pot, const PhysicalParams& params, const PhaseGrid& grid);

struct KernelMoments {
  double m0;
  double m1;
  double m2;
};

KernelMoments kernel_moments_closed_form(const Potential& pot, const PhysicalParams& params,
                                         double x);

/// P w = M n[w].
WignerField project_p(const WignerField& w, const KernelM& M);
WignerField project_q(const WignerField& w, const KernelM& M);

/// Throws ConfigError when the Maxwellian tail at v_max is too heavy for
/// trustworthy second moments.
void require_velocity_box(const PhysicalParams& params, const PhaseGrid& grid);

}  // namespace wigqdd
