#pragma once

#include <array>
#include <string>
#include <vector>

#include "burnett/types.hpp"

namespace burnett {

enum class ScenarioKind { colliding_flow, couette, diffusion, cavity, custom };

enum class BoundaryKind { periodic, neumann, diffusive_wall };

/// One side of the domain. Wall data is ignored unless kind == diffusive_wall.
struct BoundarySpec {
  BoundaryKind kind = BoundaryKind::periodic;
  Vec3 u_wall{0.0, 0.0, 0.0};
  double theta_wall = 1.0;
};

/// Uniform spatial grid. In 1D only nx/x0/x1/axis and sides 0 (low) and
/// 1 (high) are used; in 2D sides are ordered left, right, bottom, top and
/// the spatial axes are velocity components 0 and 1.
struct GridSpec {
  int dimension = 1;
  int nx = 100;
  int ny = 1;
  double x0 = 0.0, x1 = 1.0;
  double y0 = 0.0, y1 = 1.0;
  int axis = 0;  // velocity component along the 1D spatial direction
  std::array<BoundarySpec, 4> bc{};
};

/// Knobs of the automated threshold-calibration loop.
struct CalibrationSpec {
  double closeness_tol = 0.02;  // relative L2 closeness on rho and q_leading
  double halve_factor = 2.0;    // threshold reduction factor per retry
  int max_runs = 16;            // total scenario runs before giving up
  double min_eps1 = 1e-6;       // floor returned for equilibrium scenarios
  double min_eps2 = 2e-6;
  double equilibrium_eps = 1e-10;  // eps_max below this counts as equilibrium
};

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::custom;

  // Basis / model.
  int M = 10;
  int m0_cap = 8;
  int m0_init = -1;     // -1: start every cell at m0_cap
  int tensor_cap = -1;  // -1: use m0_cap
  Vec3 u_bar{0.0, 0.0, 0.0};
  double theta_bar = 1.0;
  double nu = 5.0 / 9.0;
  double kn = 0.5;

  GridSpec grid;

  // Time stepping.
  double cfl = 0.45;
  double t_final = 1.0;
  bool steady = false;        // run to steady state instead of t_final
  double steady_tol = 1e-8;   // relative moment change per unit time
  int steady_window = 50;     // steps between steadiness checks
  double max_time = 1e3;      // hard stop for steady-state runs

  // Adaptation.
  bool adaptive = true;
  double eps1 = 1.0;
  double eps2 = 4.0;
  int indicator_stride = 1;
  bool probe_indicator = false;  // track max indicator on non-adaptive runs
  int dense_directions = 0;      // >0 replaces the 50-point rule (validation)
  std::string spatial_thresholds;  // reserved; must stay empty in v1

  // Scenario parameters (used by the matching presets only).
  double wall_speed = 0.5;
  double wall_theta = 1.0;
  double lid_speed = 0.0208;
  double collide_speed = 1.0;
  double collide_theta = 1.0 / 3.0;
  double diffusion_density = 10.0;
  double diffusion_half_width = 0.05;

  CalibrationSpec calibration;

  // I/O.
  std::string cache_path;
  std::string out_dir = ".";
  int workers = 1;
  unsigned long seed = 0;
  std::vector<double> snapshot_times;  // empty: final state only

  /// Effective values of the -1 defaults.
  int effective_m0_init() const { return m0_init < 0 ? m0_cap : m0_init; }
  int effective_tensor_cap() const { return tensor_cap < 0 ? m0_cap : tensor_cap; }
};

/// Built-in scenario presets with the published parameter values.
ScenarioConfig preset_config(ScenarioKind kind);
ScenarioKind scenario_from_name(const std::string& name);
std::string scenario_name(ScenarioKind kind);

/// Parse a sectioned key = value file. Unknown sections or keys are errors
/// that name the offender and its line; all values are validated.
ScenarioConfig parse_config(const std::string& path);
ScenarioConfig parse_config_text(const std::string& text,
                                 const std::string& origin = "<string>");

/// Serialize every field; parse_config_text(emit_config(c)) round-trips.
std::string emit_config(const ScenarioConfig& config);

/// Range and consistency checks; throws config_error with the field name.
void validate_config(const ScenarioConfig& config);

}  // namespace burnett
