#include "wigqdd/pseudodiff.h"

namespace wigqdd {

ThetaOperator::ThetaOperator(const Potential& pot, const PhysicalParams& params, PhaseGrid grid)
    : grid_(std::move(grid)), params_(params), delta_(grid_.size(), 0.0) {
  const auto x = grid_.space().points();
  const auto eta = grid_.eta_points();
  const std::size_t nv = grid_.n_v();
  for (std::size_t i = 0; i < grid_.n_x(); ++i) {
    for (std::size_t l = 0; l < nv; ++l) {
      if (l == grid_.nyquist_index()) continue;
      delta_[i * nv + l] = delta_v(pot, params_, x[i], eta[l]);
    }
  }
}

WignerField apply_theta(const ThetaOperator& op, const WignerField& w) {
  require_same_grid(op.grid(), w.grid(), "apply_theta");
  SpectralField s = dft_v(w);
  const PhaseGrid& g = op.grid();
  for (std::size_t i = 0; i < g.n_x(); ++i) {
    for (std::size_t l = 0; l < g.n_v(); ++l) s(i, l) *= op.multiplier(i, l);
  }
  return idft_v(s);
}

void resolvent_inplace(const ThetaOperator& op, SpectralField& s) {
  require_same_grid(op.grid(), s.grid(), "resolvent");
  const PhaseGrid& g = op.grid();
  const double nu = op.params().nu;
  for (std::size_t i = 0; i < g.n_x(); ++i) {
    for (std::size_t l = 0; l < g.n_v(); ++l) s(i, l) /= Complex(nu, -op.delta(i, l));
  }
}

WignerField resolvent(const ThetaOperator& op, const WignerField& h) {
  require_same_grid(op.grid(), h.grid(), "resolvent");
  SpectralField s = dft_v(h);
  resolvent_inplace(op, s);
  return idft_v(s);
}

}  // namespace wigqdd
