#pragma once

#include <optional>
#include <vector>

#include <Eigen/Sparse>

#include "burnett/adapt.hpp"
#include "burnett/coeffs.hpp"
#include "burnett/collision.hpp"
#include "burnett/config.hpp"
#include "burnett/indicator.hpp"

namespace burnett {

struct CellState {
  SpectralField f;
  int m0 = 3;
  IndicatorReport last_indicator{};
  bool has_indicator = false;
};

/// Uniform finite-volume mesh; cells stored row-major (iy * nx + ix).
struct Mesh {
  GridSpec grid;
  BasisSpec spec;
  int nx = 1, ny = 1;
  double dx = 0.0, dy = 0.0;
  std::vector<CellState> cells;

  CellState& at(int ix, int iy) { return cells[static_cast<std::size_t>(iy) * nx + ix]; }
  const CellState& at(int ix, int iy) const {
    return cells[static_cast<std::size_t>(iy) * nx + ix];
  }
};

/// Scenario initial data on the configured grid.
Mesh make_mesh(const ScenarioConfig& config);

/// Transport CFL bound: cfl * min over spatial axes of
/// dx / (|u_bar_k| + C_{M+1} sqrt(theta_bar)), C the largest Hermite zero.
double cfl_dt(const Mesh& mesh, double cfl);

/// HLL numerical flux through one face,
///   F = (lamR A fL - lamL A fR + lamL lamR (fR - fL)) / (lamR - lamL),
/// with lamL < 0 < lamR.
Eigen::VectorXcd hll_flux(const Eigen::VectorXcd& fL, const Eigen::VectorXcd& fR,
                          const Eigen::SparseMatrix<cplx>& A1, double lamL,
                          double lamR);

/// Minmod-limited linear reconstruction from the cell triple (fm, f0, fp):
/// left/right face values f0 -/+ slope/2, limited componentwise on the real
/// and imaginary parts separately.
void reconstruct_minmod(const Eigen::VectorXcd& fm, const Eigen::VectorXcd& f0,
                        const Eigen::VectorXcd& fp, Eigen::VectorXcd& left,
                        Eigen::VectorXcd& right);

/// Precomputed fully-diffusive wall closure for one boundary side. The ghost
/// state keeps the interior distribution on the outgoing velocity half-space
/// and fills the incoming half with the wall Maxwellian, scaled so that the
/// kinetic mass fluxes of the two halves cancel exactly.
class WallOperator {
 public:
  WallOperator() = default;
  /// axis: velocity component normal to the wall; sign_out: +1 if the
  /// outward normal points toward +v_axis.
  WallOperator(const BasisSpec& spec, int axis, int sign_out,
               const BoundarySpec& wall);

  Eigen::VectorXcd ghost(const Eigen::VectorXcd& interior) const;
  /// Kinetic mass flux of the interior state through the wall (outward > 0).
  double outgoing_flux(const Eigen::VectorXcd& interior) const;
  /// Outgoing flux plus the scaled wall-Maxwellian return flux; zero by
  /// construction up to rounding.
  double net_kinetic_flux(const Eigen::VectorXcd& interior) const;

 private:
  BasisSpec spec_;
  int axis_ = 0;
  double sign_ = 1.0;  // outward normal direction along the axis
  int M_ = 0;
  Eigen::MatrixXd outgoing_;      // half-space Gram matrix in Hermite basis
  Eigen::VectorXd flux_row_;      // kinetic flux of the outgoing half
  Eigen::VectorXd wall_hermite_;  // incoming wall Maxwellian, Hermite coeffs
  double wall_influx_ = 0.0;      // kinetic flux of the unscaled wall half (< 0)
};

struct PhaseTimes {
  double transport = 0.0;
  double collision = 0.0;
  double indicator = 0.0;
  double adaptation = 0.0;
  long long steps = 0;
};

struct SnapshotGrid {
  double t = 0.0;
  std::vector<MomentSet> moments;
  std::vector<int> m0;
  std::vector<double> indicator;  // last evaluated totals; 0 when absent
};

struct RunResult {
  std::vector<SnapshotGrid> snapshots;
  PhaseTimes timing;
  double eps_seen_max = 0.0;
  double t_end = 0.0;
  long long steps = 0;
  bool steady_reached = false;
  std::vector<Eigen::VectorXcd> final_f;
  std::vector<int> final_m0;
};

class Solver {
 public:
  Solver(const ScenarioConfig& config, const CoeffTables& tables);

  Mesh& mesh() { return mesh_; }
  const Mesh& mesh() const { return mesh_; }
  double time() const { return t_; }
  const PhaseTimes& timing() const { return timing_; }
  double eps_seen_max() const { return eps_seen_max_; }
  const ScenarioConfig& config() const { return config_; }

  /// min(CFL bound, collision stability bound kn / nu_max, remaining).
  double pick_dt(double remaining) const;
  /// One Strang step: transport halves around a full collision step, then
  /// the per-cell indicator/adaptation pass.
  void step(double dt);
  /// Individual substeps, exposed for scheme tests.
  void transport_substep(int spatial_axis, double dt);
  void collision_substep(double dt);

  void set_collision_enabled(bool on) { collision_enabled_ = on; }

  /// Full scenario loop with snapshot recording and steady detection.
  RunResult run();

 private:
  void indicator_pass();
  void fill_line(int spatial_axis, int line, std::vector<Eigen::VectorXcd>& buf,
                 const std::vector<Eigen::VectorXcd>& state) const;
  void transport_line_rhs(int spatial_axis,
                          const std::vector<Eigen::VectorXcd>& line,
                          std::vector<Eigen::VectorXcd>& rhs) const;

  ScenarioConfig config_;
  const CoeffTables* tables_ = nullptr;
  Mesh mesh_;
  std::array<Eigen::SparseMatrix<cplx>, 2> a_eff_;  // per spatial axis
  std::array<double, 2> lam_l_{}, lam_r_{};
  std::array<std::optional<WallOperator>, 4> wall_;
  std::optional<SphereRule> dense_rule_;
  double t_ = 0.0;
  long long step_count_ = 0;
  double eps_seen_max_ = 0.0;
  bool collision_enabled_ = true;
  PhaseTimes timing_;
};

RunResult run_scenario(const ScenarioConfig& config, const CoeffTables& tables);

}  // namespace burnett
