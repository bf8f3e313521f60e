#pragma once

// Shared value types: physical constants, periodic grids, phase-space and
// density fields, the weighted X_k norm and the velocity Fourier transform.
//
// Layout convention: phase-space arrays are row-major with x as the slow
// index, so each x row (a function of v, or of eta after dft_v) is contiguous.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace wigqdd {

using Complex = std::complex<double>;

/// Nondimensional constants. eps is the Knudsen number.
struct PhysicalParams {
  double hbar = 1.0;
  double m = 1.0;
  double beta = 1.0;
  double nu = 1.0;
  double eps = 0.1;

  /// Throws ConfigError unless every constant is positive and eps < 1.
  void validate() const;
  PhysicalParams with_eps(double e) const;
};

bool is_power_of_two(std::size_t n);

/// Uniform periodic grid x_i = -L/2 + i L/n with its DFT wavenumbers.
class SpaceGrid {
 public:
  SpaceGrid(std::size_t n, double length);

  std::size_t size() const { return points_.size(); }
  double length() const { return length_; }
  double spacing() const { return length_ / static_cast<double>(size()); }
  double point(std::size_t i) const { return points_[i]; }
  std::span<const double> points() const { return points_; }
  /// Wavenumbers in FFT order; the unpaired Nyquist entry is negative.
  std::span<const double> wavenumbers() const { return wavenumbers_; }

  /// Same grid refined by an integer factor (points of *this are every
  /// factor-th point of the result).
  SpaceGrid refined(std::size_t factor) const;

  bool operator==(const SpaceGrid& other) const {
    return size() == other.size() && length_ == other.length_;
  }

 private:
  double length_;
  std::vector<double> points_;
  std::vector<double> wavenumbers_;
};

/// Space grid times a truncated velocity box [-v_max, v_max) with its
/// Fourier-dual eta grid.
class PhaseGrid {
 public:
  PhaseGrid(SpaceGrid space, std::size_t n_v, double v_max);

  const SpaceGrid& space() const { return space_; }
  std::size_t n_x() const { return space_.size(); }
  std::size_t n_v() const { return v_points_.size(); }
  std::size_t size() const { return n_x() * n_v(); }
  double v_max() const { return v_max_; }
  double dv() const { return 2.0 * v_max_ / static_cast<double>(n_v()); }
  double dx() const { return space_.spacing(); }
  std::span<const double> v_points() const { return v_points_; }
  /// eta in FFT order; index n_v/2 is the Nyquist mode.
  std::span<const double> eta_points() const { return eta_points_; }
  std::size_t nyquist_index() const { return n_v() / 2; }

  bool operator==(const PhaseGrid& other) const {
    return space_ == other.space_ && n_v() == other.n_v() &&
           v_max_ == other.v_max_;
  }

 private:
  SpaceGrid space_;
  double v_max_;
  std::vector<double> v_points_;
  std::vector<double> eta_points_;
};

/// Real samples w(x_i, v_j).
class WignerField {
 public:
  explicit WignerField(PhaseGrid grid);
  WignerField(PhaseGrid grid, std::vector<double> values);

  const PhaseGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator()(std::size_t i, std::size_t j) const {
    return values_[i * grid_.n_v() + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return values_[i * grid_.n_v() + j];
  }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * grid_.n_v(), grid_.n_v());
  }
  std::span<double> row(std::size_t i) {
    return std::span<double>(values_).subspan(i * grid_.n_v(), grid_.n_v());
  }

  WignerField& operator+=(const WignerField& other);
  WignerField& operator-=(const WignerField& other);
  WignerField& operator*=(double a);
  /// this += a * other
  WignerField& axpy(double a, const WignerField& other);

  double max_abs() const;
  bool all_finite() const;

 private:
  PhaseGrid grid_;
  std::vector<double> values_;
};

WignerField operator+(WignerField a, const WignerField& b);
WignerField operator-(WignerField a, const WignerField& b);
WignerField operator*(double s, WignerField a);

/// Samples of a function of x.
class DensityField {
 public:
  explicit DensityField(SpaceGrid grid);
  DensityField(SpaceGrid grid, std::vector<double> values);

  const SpaceGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  /// Midpoint-rule integral over the periodic box.
  double total() const;
  double max_abs() const;

 private:
  SpaceGrid grid_;
  std::vector<double> values_;
};

/// Velocity weight exponent of the X_k norm; requires 2k > d with d = 1.
struct NormSpec {
  int k = 1;
  void validate() const;
};

/// Rowwise transform w(x, v) -> F w(x, eta) on the eta grid (FFT order),
/// carrying the symmetric continuum normalization (2 pi)^{-1/2}.
class SpectralField {
 public:
  explicit SpectralField(PhaseGrid grid);

  const PhaseGrid& grid() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return values_[i * grid_.n_v() + j];
  }
  Complex& operator()(std::size_t i, std::size_t j) {
    return values_[i * grid_.n_v() + j];
  }

 private:
  PhaseGrid grid_;
  std::vector<Complex> values_;
};

SpectralField dft_v(const WignerField& field);

/// Inverse of dft_v. The imaginary residue must be at roundoff level
/// relative to the result; it is checked and discarded.
WignerField idft_v(const SpectralField& spectrum);

/// Largest imaginary part produced by the inverse transform (diagnostic).
double idft_v_imag_residue(const SpectralField& spectrum);

double norm_xk(const WignerField& field, const NormSpec& spec);
double norm_l2(const WignerField& field);
/// Midpoint-rule L^2 inner product over phase space.
double inner_l2(const WignerField& a, const WignerField& b);

DensityField density(const WignerField& field);
/// Per-x quadrature of v * w.
DensityField first_moment(const WignerField& field);
/// Per-x quadrature of v^2 * w.
DensityField second_moment(const WignerField& field);

double norm_l2(const DensityField& field);

/// Spectral derivative along x (periodic); the Nyquist mode is dropped.
DensityField derivative_x(const DensityField& field);
WignerField derivative_x(const WignerField& field);
/// Spectral derivative along v through the eta multiplier i*eta.
WignerField derivative_v(const WignerField& field);

/// Trigonometric interpolation of a periodic field onto grid.refined(factor).
DensityField interpolate_refined(const DensityField& field, std::size_t factor);
/// Samples every factor-th point of a refined field.
DensityField restrict_to(const DensityField& fine, const SpaceGrid& coarse);

/// NonZeroMass when max_x |n[w](x)| exceeds tol * max(1, max|w|).
void require_zero_mass(const WignerField& w, const char* what, double tol = 1e-8);

void require_same_grid(const PhaseGrid& a, const PhaseGrid& b, const char* what);
void require_same_grid(const SpaceGrid& a, const SpaceGrid& b, const char* what);

}  // namespace wigqdd
