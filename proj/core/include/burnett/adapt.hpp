#pragma once

#include <string>
#include <vector>

#include "burnett/coeffs.hpp"
#include "burnett/config.hpp"

namespace burnett {

/// Two-threshold hysteresis policy for the per-cell splitting degree.
struct AdaptPolicy {
  double eps1 = 0.0;  // below: decrease m0
  double eps2 = 0.0;  // above: increase m0
  int m0_min = 3;
  int m0_cap = 3;
};

/// m0 moves by at most one step per call and stays in [m0_min, m0_cap].
int update_m0(int m0, double ind, const AdaptPolicy& policy);

/// One scenario run of the calibration loop, as reported in the audit trail.
struct CalibrationRun {
  std::string label;     // e.g. "probe", "eps1 4 -> 2"
  double eps1 = 0.0;
  double eps2 = 0.0;
  double l2_rho = 0.0;   // relative L2 change vs the previous run
  double l2_q = 0.0;     // ... of the leading heat-flux component
  double wall_seconds = 0.0;
};

struct CalibrationResult {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps_max = 0.0;  // max indicator seen on the fixed-m0 probe run
  std::vector<CalibrationRun> trail;
};

/// Automated threshold selection: a fixed-m0=3 probe run bounds the indicator
/// (eps_max), the initial guess is (eps_max/4, eps_max/2), then eps1 and eps2
/// are reduced by calibration.halve_factor until successive runs agree within
/// calibration.closeness_tol in relative L2 on density and the leading
/// heat-flux component at the final time. Exceeding calibration.max_runs
/// throws calibration_error carrying the formatted audit trail.
CalibrationResult calibrate(const ScenarioConfig& scenario,
                            const CoeffTables& tables);

/// One line per run: label, thresholds, L2 differences, wall time.
std::string calibration_report(const CalibrationResult& result);

}  // namespace burnett
