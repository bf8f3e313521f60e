#pragma once

#include <string>
#include <vector>

#include "wigqdd/config.h"
#include "wigqdd/kinetic.h"
#include "wigqdd/qdd.h"

namespace wigqdd {

struct SweepRow {
  double eps;
  double t;
  double composite_error;
  double layer_error;
  double bulk_error;
};

/// One epsilon of a sweep.
struct CaseResult {
  double eps = 0.0;
  std::vector<SweepRow> rows;
  /// max over output times of the composite error
  double error = 0.0;
  /// max over output times of the change under a control run with half the
  /// kinetic step and twice the QDD refinement
  double floor = 0.0;
  DensityTrajectory n_kinetic;
  DensityTrajectory n_qdd;
};

struct OrderFit {
  double order = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double log_constant = 0.0;
  std::vector<bool> used;
};

struct SweepResult {
  std::vector<CaseResult> cases;
  OrderFit fit;
  bool monotone = false;
};

/// Least-squares fit of log(error) = log C + p log(eps) with a 95% Student-t
/// interval. Points with error below 1e-12 or within 10x of their floor are
/// excluded; fewer than 4 remaining points is FitDegenerate.
OrderFit fit_order(const std::vector<double>& eps, const std::vector<double>& error,
                   const std::vector<double>& floor);

/// Runs the kinetic and asymptotic problems for cfg at the given eps.
CaseResult run_case(const ExperimentConfig& cfg, double eps, bool with_control);

/// All cases of cfg.eps_list, `threads` at a time, then the fit.
SweepResult run_sweep(const ExperimentConfig& cfg, unsigned threads);

/// Builds the asymptotic density start n0 + eps n1 from the datum.
DensityField qdd_initial_density(const ExperimentConfig& cfg, const WignerField& w0,
                                 const KernelM& M, const PhysicalParams& params);

}  // namespace wigqdd
