#pragma once

#include <vector>

#include "wigqdd/core.h"
#include "wigqdd/potential.h"

namespace wigqdd {

/// Theta[V] as the eta-multiplier i*deltaV(x_i, eta_l), tabulated once per
/// (potential, grid). The Nyquist column is zero so every multiplier built
/// from the table keeps real fields real.
class ThetaOperator {
 public:
  ThetaOperator(const Potential& pot, const PhysicalParams& params, PhaseGrid grid);

  const PhaseGrid& grid() const { return grid_; }
  const PhysicalParams& params() const { return params_; }
  /// deltaV(x_i, eta_l); the multiplier is i times this.
  double delta(std::size_t i, std::size_t l) const { return delta_[i * grid_.n_v() + l]; }
  Complex multiplier(std::size_t i, std::size_t l) const { return {0.0, delta(i, l)}; }

 private:
  PhaseGrid grid_;
  PhysicalParams params_;
  std::vector<double> delta_;
};

WignerField apply_theta(const ThetaOperator& op, const WignerField& w);

/// (nu - Theta)^{-1} h.
WignerField resolvent(const ThetaOperator& op, const WignerField& h);

/// In-place version of the resolvent on an already transformed field.
void resolvent_inplace(const ThetaOperator& op, SpectralField& s);

}  // namespace wigqdd
