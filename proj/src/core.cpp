#include "wigqdd/core.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.h"
#include "wigqdd/errors.h"

namespace wigqdd {

void PhysicalParams::validate() const {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(hbar) || !positive(m) || !positive(beta) || !positive(nu)) {
    throw ConfigError("physical constants hbar, m, beta, nu must be positive");
  }
  if (!positive(eps) || eps >= 1.0) {
    throw ConfigError("Knudsen number eps must lie in (0, 1)");
  }
}

PhysicalParams PhysicalParams::with_eps(double e) const {
  PhysicalParams p = *this;
  p.eps = e;
  return p;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace {

std::vector<double> fft_frequencies(std::size_t n, double spacing) {
  std::vector<double> k(n);
  const double base = 2.0 * std::numbers::pi / (static_cast<double>(n) * spacing);
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<long>(j);
    const long signed_j = j < n / 2 ? jj : jj - static_cast<long>(n);
    k[j] = base * static_cast<double>(signed_j);
  }
  return k;
}

}  // namespace

SpaceGrid::SpaceGrid(std::size_t n, double length) : length_(length) {
  if (!is_power_of_two(n) || n < 4) {
    throw ConfigError("space grid size must be a power of two >= 4");
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ConfigError("space grid length must be positive");
  }
  points_.resize(n);
  const double h = length / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    points_[i] = -0.5 * length + static_cast<double>(i) * h;
  }
  wavenumbers_ = fft_frequencies(n, h);
}

SpaceGrid SpaceGrid::refined(std::size_t factor) const {
  return SpaceGrid(size() * factor, length_);
}

PhaseGrid::PhaseGrid(SpaceGrid space, std::size_t n_v, double v_max)
    : space_(std::move(space)), v_max_(v_max) {
  if (!is_power_of_two(n_v) || n_v < 4) {
    throw ConfigError("velocity grid size must be a power of two >= 4");
  }
  if (!(v_max > 0.0) || !std::isfinite(v_max)) {
    throw ConfigError("v_max must be positive");
  }
  v_points_.resize(n_v);
  const double h = 2.0 * v_max / static_cast<double>(n_v);
  for (std::size_t j = 0; j < n_v; ++j) {
    v_points_[j] = -v_max + static_cast<double>(j) * h;
  }
  eta_points_ = fft_frequencies(n_v, h);
}

// ---------------------------------------------------------------------------

WignerField::WignerField(PhaseGrid grid)
    : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

WignerField::WignerField(PhaseGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw GridMismatch("WignerField: value count does not match grid");
  }
}

WignerField& WignerField::operator+=(const WignerField& other) {
  require_same_grid(grid_, other.grid_, "WignerField +=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

WignerField& WignerField::operator-=(const WignerField& other) {
  require_same_grid(grid_, other.grid_, "WignerField -=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

WignerField& WignerField::operator*=(double a) {
  for (double& v : values_) v *= a;
  return *this;
}

WignerField& WignerField::axpy(double a, const WignerField& other) {
  require_same_grid(grid_, other.grid_, "WignerField axpy");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += a * other.values_[k];
  return *this;
}

double WignerField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool WignerField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

WignerField operator+(WignerField a, const WignerField& b) { return a += b; }
WignerField operator-(WignerField a, const WignerField& b) { return a -= b; }
WignerField operator*(double s, WignerField a) { return a *= s; }

DensityField::DensityField(SpaceGrid grid)
    : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

DensityField::DensityField(SpaceGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw GridMismatch("DensityField: value count does not match grid");
  }
}

double DensityField::total() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s * grid_.spacing();
}

double DensityField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

void NormSpec::validate() const {
  if (2 * k <= 1) throw ConfigError("norm weight k must satisfy 2k > d = 1");
}

SpectralField::SpectralField(PhaseGrid grid)
    : grid_(std::move(grid)), values_(grid_.size(), Complex{}) {}

// ---------------------------------------------------------------------------
// Velocity transform. With v_j = -v_max + j dv and eta_l = 2 pi l / (n dv),
//   (2 pi)^{-1/2} dv sum_j w_j exp(-i v_j eta_l) = c (-1)^l FFT(w)_l,
// c = dv / sqrt(2 pi), because v_max eta_l = pi l.

namespace {

double continuum_scale(const PhaseGrid& g) {
  return g.dv() / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

SpectralField dft_v(const WignerField& field) {
  const PhaseGrid& g = field.grid();
  SpectralField out(g);
  auto dst = out.values();
  auto src = field.values();
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = src[k];
  fft::rows(dst.data(), g.n_x(), g.n_v(), fft::Direction::forward);
  const double c = continuum_scale(g);
  for (std::size_t i = 0; i < g.n_x(); ++i) {
    for (std::size_t l = 0; l < g.n_v(); ++l) {
      out(i, l) *= (l % 2 == 0) ? c : -c;
    }
  }
  return out;
}

namespace {

std::vector<Complex> inverse_raw(const SpectralField& spectrum) {
  const PhaseGrid& g = spectrum.grid();
  std::vector<Complex> buf(spectrum.values().begin(), spectrum.values().end());
  const double c = 1.0 / (continuum_scale(g) * static_cast<double>(g.n_v()));
  for (std::size_t i = 0; i < g.n_x(); ++i) {
    for (std::size_t l = 0; l < g.n_v(); ++l) {
      buf[i * g.n_v() + l] *= (l % 2 == 0) ? c : -c;
    }
  }
  fft::rows(buf.data(), g.n_x(), g.n_v(), fft::Direction::backward);
  return buf;
}

}  // namespace

double idft_v_imag_residue(const SpectralField& spectrum) {
  double m = 0.0;
  for (const Complex& z : inverse_raw(spectrum)) m = std::max(m, std::abs(z.imag()));
  return m;
}

WignerField idft_v(const SpectralField& spectrum) {
  const std::vector<Complex> buf = inverse_raw(spectrum);
  WignerField out(spectrum.grid());
  auto dst = out.values();
  double max_re = 0.0;
  double max_im = 0.0;
  for (std::size_t k = 0; k < buf.size(); ++k) {
    dst[k] = buf[k].real();
    max_re = std::max(max_re, std::abs(buf[k].real()));
    max_im = std::max(max_im, std::abs(buf[k].imag()));
  }
  if (max_im > 1e-10 * std::max(1.0, max_re)) {
    std::ostringstream msg;
    msg << "idft_v: imaginary residue " << max_im << " is not at roundoff level";
    throw NumericalError(msg.str());
  }
  return out;
}

// ---------------------------------------------------------------------------

double norm_xk(const WignerField& field, const NormSpec& spec) {
  spec.validate();
  const PhaseGrid& g = field.grid();
  std::vector<double> weight(g.n_v());
  for (std::size_t j = 0; j < g.n_v(); ++j) {
    weight[j] = 1.0 + std::pow(std::abs(g.v_points()[j]), 2 * spec.k);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < g.n_x(); ++i) {
    auto r = field.row(i);
    for (std::size_t j = 0; j < g.n_v(); ++j) s += r[j] * r[j] * weight[j];
  }
  return std::sqrt(s * g.dx() * g.dv());
}

double inner_l2(const WignerField& a, const WignerField& b) {
  require_same_grid(a.grid(), b.grid(), "inner_l2");
  double s = 0.0;
  auto va = a.values();
  auto vb = b.values();
  for (std::size_t k = 0; k < va.size(); ++k) s += va[k] * vb[k];
  return s * a.grid().dx() * a.grid().dv();
}

double norm_l2(const WignerField& field) { return std::sqrt(inner_l2(field, field)); }

double norm_l2(const DensityField& field) {
  double s = 0.0;
  for (double v : field.values()) s += v * v;
  return std::sqrt(s * field.grid().spacing());
}

namespace {

DensityField velocity_moment(const WignerField& field, int power) {
  const PhaseGrid& g = field.grid();
  DensityField out(g.space());
  auto v = g.v_points();
  for (std::size_t i = 0; i < g.n_x(); ++i) {
    auto r = field.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < g.n_v(); ++j) {
      const double weight = power == 0 ? 1.0 : (power == 1 ? v[j] : v[j] * v[j]);
      s += weight * r[j];
    }
    out[i] = s * g.dv();
  }
  return out;
}

}  // namespace

DensityField density(const WignerField& field) { return velocity_moment(field, 0); }
DensityField first_moment(const WignerField& field) { return velocity_moment(field, 1); }
DensityField second_moment(const WignerField& field) { return velocity_moment(field, 2); }

// ---------------------------------------------------------------------------

DensityField derivative_x(const DensityField& field) {
  const SpaceGrid& g = field.grid();
  const std::size_t n = g.size();
  std::vector<Complex> buf(field.values().begin(), field.values().end());
  fft::rows(buf.data(), 1, n, fft::Direction::forward);
  auto k = g.wavenumbers();
  for (std::size_t j = 0; j < n; ++j) {
    buf[j] *= (j == n / 2) ? Complex{} : Complex(0.0, k[j] / static_cast<double>(n));
  }
  fft::rows(buf.data(), 1, n, fft::Direction::backward);
  DensityField out(g);
  for (std::size_t j = 0; j < n; ++j) out[j] = buf[j].real();
  return out;
}

WignerField derivative_x(const WignerField& field) {
  const PhaseGrid& g = field.grid();
  const std::size_t nx = g.n_x();
  const std::size_t nv = g.n_v();
  std::vector<Complex> buf(field.values().begin(), field.values().end());
  fft::columns(buf.data(), nx, nv, fft::Direction::forward);
  auto k = g.space().wavenumbers();
  for (std::size_t i = 0; i < nx; ++i) {
    const Complex mult = (i == nx / 2) ? Complex{} : Complex(0.0, k[i] / static_cast<double>(nx));
    for (std::size_t j = 0; j < nv; ++j) buf[i * nv + j] *= mult;
  }
  fft::columns(buf.data(), nx, nv, fft::Direction::backward);
  WignerField out(g);
  auto dst = out.values();
  for (std::size_t q = 0; q < buf.size(); ++q) dst[q] = buf[q].real();
  return out;
}

WignerField derivative_v(const WignerField& field) {
  SpectralField s = dft_v(field);
  const PhaseGrid& g = field.grid();
  auto eta = g.eta_points();
  for (std::size_t i = 0; i < g.n_x(); ++i) {
    for (std::size_t l = 0; l < g.n_v(); ++l) {
      s(i, l) *= (l == g.nyquist_index()) ? Complex{} : Complex(0.0, eta[l]);
    }
  }
  return idft_v(s);
}

DensityField interpolate_refined(const DensityField& field, std::size_t factor) {
  const std::size_t n = field.size();
  const std::size_t nf = n * factor;
  std::vector<Complex> coarse(field.values().begin(), field.values().end());
  fft::rows(coarse.data(), 1, n, fft::Direction::forward);
  std::vector<Complex> fine(nf, Complex{});
  for (std::size_t j = 0; j < n / 2; ++j) fine[j] = coarse[j];
  for (std::size_t j = n / 2 + 1; j < n; ++j) fine[nf - n + j] = coarse[j];
  // The unpaired Nyquist coefficient is split evenly between +-n/2.
  fine[n / 2] = 0.5 * coarse[n / 2];
  fine[nf - n / 2] = 0.5 * coarse[n / 2];
  fft::rows(fine.data(), 1, nf, fft::Direction::backward);
  DensityField out(field.grid().refined(factor));
  for (std::size_t j = 0; j < nf; ++j) out[j] = fine[j].real() / static_cast<double>(n);
  return out;
}

DensityField restrict_to(const DensityField& fine, const SpaceGrid& coarse) {
  const std::size_t nf = fine.size();
  const std::size_t nc = coarse.size();
  if (nf % nc != 0 || fine.grid().length() != coarse.length()) {
    throw GridMismatch("restrict_to: fine grid is not a refinement of the target");
  }
  const std::size_t factor = nf / nc;
  DensityField out(coarse);
  for (std::size_t i = 0; i < nc; ++i) out[i] = fine[i * factor];
  return out;
}

void require_zero_mass(const WignerField& w, const char* what, double tol) {
  const double n = density(w).max_abs();
  if (n > tol * std::max(1.0, w.max_abs())) {
    std::ostringstream msg;
    msg << what << ": field must have zero density, found max |n| = " << n;
    throw NonZeroMass(msg.str());
  }
}

void require_same_grid(const PhaseGrid& a, const PhaseGrid& b, const char* what) {
  if (!(a == b)) throw GridMismatch(std::string(what) + ": phase grids differ");
}

void require_same_grid(const SpaceGrid& a, const SpaceGrid& b, const char* what) {
  if (!(a == b)) throw GridMismatch(std::string(what) + ": space grids differ");
}

}  // namespace wigqdd
