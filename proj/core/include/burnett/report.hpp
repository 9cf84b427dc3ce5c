#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "burnett/config.hpp"
#include "burnett/solver.hpp"

namespace burnett {

/// %.17g rendering used for every numeric CSV field (round-trips binary64).
std::string csv_num(double v);

/// RFC-4180 field quoting (quotes fields containing comma, quote, newline).
std::string csv_field(const std::string& s);

/// One-line-per-cell profile: x, rho, u1, theta, q1, m0, indicator.
void write_snapshot_csv_1d(const GridSpec& grid, const SnapshotGrid& snap,
                           std::ostream& out);

/// Quantities emitted for 2-D runs, one file per quantity per snapshot.
const std::vector<std::string>& grid_quantities_2d();

/// Row-major grid of one quantity; header row carries the x coordinates and
/// each data row starts with its y coordinate.
void write_snapshot_csv_2d(const GridSpec& grid, const SnapshotGrid& snap,
                           const std::string& quantity, std::ostream& out);

/// Phase wall times, per-step means, the indicator share of the total, and
/// the reference total when one is supplied (t_ref_seconds >= 0).
void write_timing_csv(const PhaseTimes& timing, std::ostream& out,
                      double t_ref_seconds = -1.0);

/// A previously written report read back for comparison.
struct LoadedRun {
  std::vector<SnapshotGrid> snapshots;
  double wall_seconds = 0.0;  // total from the stored timing file
};

/// Read back the snapshot and timing files produced by write_run_report.
LoadedRun read_run_report(const std::string& dir, const GridSpec& grid);

/// Per-snapshot relative L2 differences against a reference trajectory,
/// one row per (snapshot, quantity).
void write_comparison_csv(const GridSpec& grid,
                          const std::vector<SnapshotGrid>& run,
                          const std::vector<SnapshotGrid>& ref,
                          std::ostream& out);

/// Write the full report into dir: resolved config echo, snapshot index,
/// per-snapshot CSVs, timing summary, and (when reference != nullptr) the
/// relative-L2 comparison table. Returns the relative paths written.
std::vector<std::string> write_run_report(const ScenarioConfig& config,
                                          const RunResult& run,
                                          const std::string& dir,
                                          const LoadedRun* reference = nullptr);

}  // namespace burnett
