#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wigqdd/core.h"
#include "wigqdd/equilibrium.h"
#include "wigqdd/potential.h"

namespace wigqdd {

/// n0(x) = mean + amplitude * shape(x).
struct DensitySpec {
  enum class Kind { constant, cosine, gaussian };
  Kind kind = Kind::cosine;
  double mean = 1.0;
  double amplitude = 0.5;
  int mode = 1;          // cosine: wavenumber multiple of 2 pi / L
  double width = 0.5;    // gaussian: standard deviation
  double center = 0.0;   // gaussian
};

/// Zero-mass fluctuation added to n0 M:
///   odd:  amplitude sin(k x) v F(v)
///   even: amplitude cos(k x) (1 - beta m v^2) F(v)
struct FluctuationSpec {
  enum class Kind { none, odd, even };
  Kind kind = Kind::none;
  double amplitude = 0.0;
  int mode = 1;
};

struct ExperimentConfig {
  PhysicalParams params;
  std::size_t n_x = 128;
  std::size_t n_v = 128;
  double length = 0.0;  // 0 means 2 pi
  double v_max = 10.0;
  Potential potential = Potential::zero();
  DensitySpec density;
  FluctuationSpec fluctuation;
  double t_final = 0.5;
  std::size_t n_outputs = 10;
  double dt = 1e-3;        // kinetic step
  double qdd_dt = 0.0;     // 0: advective limit
  std::size_t qdd_refine = 8;
  std::vector<double> eps_list;
  int norm_k = 1;
  bool density_only = false;
  std::string source;      // canonical JSON text the hash is taken over

  SpaceGrid space_grid() const;
  PhaseGrid phase_grid() const;
  /// Output times t_final * k / n_outputs, k = 0..n_outputs.
  std::vector<double> output_times() const;
  /// QDD step request: qdd_dt, or without a drift (zero potential) the
  /// kinetic dt, else 0 for the advective limit.
  double qdd_step() const;
  std::uint64_t hash() const;
  void validate() const;
};

/// Parses JSON text; throws ConfigError with a diagnostic.
ExperimentConfig parse_config(const std::string& text);
/// Reads and parses a file; a missing file is a ConfigError naming the path.
ExperimentConfig load_config(const std::string& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& text);

DensityField initial_density(const ExperimentConfig& cfg, const SpaceGrid& grid);
/// n0 M + fluctuation.
WignerField initial_datum(const ExperimentConfig& cfg, const KernelM& M);

}  // namespace wigqdd
