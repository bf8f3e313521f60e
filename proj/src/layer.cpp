#include "wigqdd/layer.h"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <sstream>

#include "wigqdd/errors.h"

namespace wigqdd {

namespace {

constexpr std::size_t kNodes = 32;
constexpr std::size_t kMaxPanels = 4096;
constexpr double kTolerance = 1e-8;

WignerField rows_times(const WignerField& profile, const DensityField& n) {
  WignerField out = profile;
  for (std::size_t i = 0; i < out.grid().n_x(); ++i) {
    for (double& v : out.row(i)) v *= n[i];
  }
  return out;
}

WignerField times_v(WignerField w) {
  auto v = w.grid().v_points();
  for (std::size_t i = 0; i < w.grid().n_x(); ++i) {
    auto r = w.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] *= v[j];
  }
  return w;
}

}  // namespace

WignerField semigroup_g(const ThetaOperator& theta, const WignerField& w, double tau) {
  require_same_grid(theta.grid(), w.grid(), "semigroup_g");
  require_zero_mass(w, "semigroup_g");
  if (tau == 0.0) return w;
  SpectralField s = dft_v(w);
  const PhaseGrid& g = theta.grid();
  const double decay = std::exp(-theta.params().nu * tau);
  for (std::size_t i = 0; i < g.n_x(); ++i) {
    for (std::size_t l = 0; l < g.n_v(); ++l) s(i, l) *= std::polar(decay, theta.delta(i, l) * tau);
  }
  return idft_v(s);
}

WignerField qsq_apply(const WignerField& g, const KernelM& M) {
  WignerField out = rows_times(M.values, derivative_x(first_moment(g)));
  out -= times_v(derivative_x(g));
  return out;
}

LayerTerms::LayerTerms(const WignerField& w0, KernelM M, const Potential& pot,
                       const PhysicalParams& params)
    : M_(std::move(M)),
      theta_(pot, params, w0.grid()),
      n0_(density(w0)),
      psi0_(project_q(w0, M_)),
      psi0_zero_(psi0_.max_abs() == 0.0),
      psi1_init_(w0.grid()) {
  require_same_grid(w0.grid(), M_.values.grid(), "LayerTerms");
  // Q S (n0 M) = -v d/dx(n0 M) + M d/dx(n0 int v M)
  const DensityField dn0 = derivative_x(n0_);
  WignerField dphi = rows_times(M_.values, dn0);
  dphi += rows_times(M_.dx, n0_);
  DensityField flux = M_.first_moment;
  for (std::size_t i = 0; i < flux.size(); ++i) flux[i] *= n0_[i];
  WignerField qs = rows_times(M_.values, derivative_x(flux));
  qs -= times_v(std::move(dphi));
  psi1_init_ = resolvent(theta_, qs);
  psi1_init_ *= -1.0;
}

WignerField LayerTerms::psi0_tilde(double tau) const { return semigroup_g(theta_, psi0_, tau); }

WignerField LayerTerms::phi1_tilde(double tau) const {
  if (psi0_zero_) return WignerField(psi0_.grid());
  const WignerField r = resolvent(theta_, psi0_tilde(tau));
  return rows_times(M_.values, derivative_x(first_moment(r)));
}

WignerField LayerTerms::duhamel(double tau, std::size_t panels) const {
  WignerField acc(psi0_.grid());
  if (tau == 0.0 || psi0_zero_) return acc;
  using rule = boost::math::quadrature::gauss<double, kNodes>;
  const auto& abscissa = rule::abscissa();
  const auto& weight = rule::weights();
  const double h = tau / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * h;
    for (std::size_t k = 0; k < abscissa.size(); ++k) {
      for (double sign : {-1.0, 1.0}) {
        if (abscissa[k] == 0.0 && sign > 0.0) continue;
        const double s = mid + sign * 0.5 * h * abscissa[k];
        const WignerField inner = qsq_apply(psi0_tilde(s), M_);
        acc.axpy(0.5 * h * weight[k], semigroup_g(theta_, inner, tau - s));
      }
    }
  }
  return acc;
}

WignerField LayerTerms::duhamel_converged(double tau, std::size_t* panels) const {
  std::size_t p = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(tau)));
  WignerField prev = duhamel(tau, p);
  const NormSpec spec{};
  while (p < kMaxPanels) {
    WignerField next = duhamel(tau, 2 * p);
    const double diff = norm_xk(next - prev, spec);
    if (diff <= kTolerance) {
      if (panels != nullptr) *panels = 2 * p;
      return next;
    }
    prev = std::move(next);
    p *= 2;
  }
  std::ostringstream msg;
  msg << "layer Duhamel integral at tau = " << tau << " did not converge with " << p
      << " panels";
  throw QuadratureNotConverged(msg.str());
}

std::size_t LayerTerms::converged_panels(double tau) const {
  std::size_t p = 0;
  duhamel_converged(tau, &p);
  return p;
}

WignerField LayerTerms::psi1_tilde(double tau) const {
  WignerField out = semigroup_g(theta_, psi1_init_, tau);
  if (!psi0_zero_ && tau > 0.0) out += duhamel_converged(tau, nullptr);
  return out;
}

}  // namespace wigqdd
