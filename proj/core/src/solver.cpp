#include "burnett/solver.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "burnett/basis.hpp"
#include "burnett/hermite.hpp"
#include "burnett/parallel.hpp"
#include "burnett/quadrature.hpp"

namespace burnett {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

double minmod(double a, double b) {
  if (a > 0.0 && b > 0.0) return std::min(a, b);
  if (a < 0.0 && b < 0.0) return std::max(a, b);
  return 0.0;
}

/// Half-line integrals of the orthonormal Hermite family against a Gaussian
/// density N(x; mean, var), over x > cut (flip = false) or x < cut (true).
/// out_plain[k] = integral q~_k((x - u_bar)/s_bar) N(x; mean, var) dx,
/// out_vx[k]    = the same with an extra factor x.
void half_line_hermite(int kmax, double u_bar, double s_bar, double mean,
                       double sdev, double cut, bool flip,
                       std::vector<double>& out_plain,
                       std::vector<double>& out_vx) {
  out_plain.assign(kmax + 1, 0.0);
  out_vx.assign(kmax + 1, 0.0);
  // Integrate where the Gaussian has support: [mean - R, mean + R] clipped to
  // the half-line. Panel Gauss-Legendre handles the clipped endpoint exactly.
  const double reach = 10.0 * sdev;
  double lo = flip ? mean - reach : std::max(cut, mean - reach);
  double hi = flip ? std::min(cut, mean + reach) : mean + reach;
  if (!(hi > lo)) return;
  const int panels = 24, pts = 16;
  std::vector<double> q(kmax + 1);
  const double inv_norm = 1.0 / (sdev * std::sqrt(2.0 * M_PI));
  for (int p = 0; p < panels; ++p) {
    const double a = lo + (hi - lo) * p / panels;
    const double b = lo + (hi - lo) * (p + 1) / panels;
    const Quad1D gl = gauss_legendre(pts, a, b);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double x = gl.nodes[i];
      const double z = (x - mean) / sdev;
      const double w = gl.weights[i] * inv_norm * std::exp(-0.5 * z * z);
      hermite_normalized_all(kmax, (x - u_bar) / s_bar, q.data());
      for (int k = 0; k <= kmax; ++k) {
        out_plain[k] += w * q[k];
        out_vx[k] += w * x * q[k];
      }
    }
  }
}

/// Full-line projection of a shifted/scaled Gaussian on the Hermite family:
/// r_k = integral q~_k((x - u_bar)/s_bar) N(x; mean, var) dx by the stable
/// two-term recurrence in the unnormalized family.
std::vector<double> full_line_hermite(int kmax, double u_bar, double s_bar,
                                      double mean, double sdev) {
  const double a = (mean - u_bar) / s_bar;
  const double b2 = (sdev * sdev) / (s_bar * s_bar);
  std::vector<double> r(kmax + 1, 0.0);
  r[0] = 1.0;
  if (kmax >= 1) r[1] = a;
  for (int k = 2; k <= kmax; ++k) r[k] = a * r[k - 1] + (b2 - 1.0) * (k - 1) * r[k - 2];
  double fact = 1.0;
  for (int k = 1; k <= kmax; ++k) {
    fact *= k;
    r[k] /= std::sqrt(fact);
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Wall operator
// ---------------------------------------------------------------------------

WallOperator::WallOperator(const BasisSpec& spec, int axis, int sign_out,
                           const BoundarySpec& wall) {
  if (wall.kind != BoundaryKind::diffusive_wall)
    throw config_error("wall operator requires a diffusive wall side");
  if (axis < 0 || axis > 2) throw config_error("wall axis must be 0, 1, or 2");
  spec_ = spec;
  axis_ = axis;
  sign_ = sign_out > 0 ? 1.0 : -1.0;
  M_ = spec.M;
  const double sb = std::sqrt(spec.theta_bar);
  const double sw = std::sqrt(wall.theta_wall);
  const bool out_is_positive = sign_out > 0;

  // Outgoing half-space Gram matrix on the normal axis: integrals of
  // q~_a q~_b against the frame Gaussian over v_n outward of the wall plane
  // (taken at v_n = 0; the wall is stationary in the normal direction).
  {
    const int panels = 24, pts = 16;
    const double reach = 10.0 * sb;
    const double lo = out_is_positive ? 0.0 : spec.u_bar[axis] - reach;
    const double hi = out_is_positive ? spec.u_bar[axis] + reach : 0.0;
    outgoing_.setZero(M_ + 1, M_ + 1);
    flux_row_.setZero(M_ + 1);
    if (hi > lo) {
      std::vector<double> q(M_ + 1);
      const double inv_norm = 1.0 / (sb * std::sqrt(2.0 * M_PI));
      for (int p = 0; p < panels; ++p) {
        const double a = lo + (hi - lo) * p / panels;
        const double b = lo + (hi - lo) * (p + 1) / panels;
        const Quad1D gl = gauss_legendre(pts, a, b);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
          const double v = gl.nodes[i];
          const double z = (v - spec.u_bar[axis]) / sb;
          const double w = gl.weights[i] * inv_norm * std::exp(-0.5 * z * z);
          hermite_normalized_all(M_, z, q.data());
          for (int r = 0; r <= M_; ++r)
            for (int c = 0; c <= M_; ++c) outgoing_(r, c) += w * q[r] * q[c];
          for (int c = 0; c <= M_; ++c) flux_row_[c] += w * v * q[c];
        }
      }
    }
  }

  // Incoming wall Maxwellian: per-axis Hermite projections. The normal axis
  // is restricted to the incoming half; tangential axes are full-line.
  {
    const auto& ws = detail::basis_workspace(M_);
    const HermiteMap& hmap = ws.hmap;
    std::vector<double> axis_proj[3], axis_flux;
    for (int d = 0; d < 3; ++d) {
      if (d == axis_) {
        half_line_hermite(M_, spec.u_bar[d], sb, wall.u_wall[d], sw, 0.0,
                          out_is_positive, axis_proj[d], axis_flux);
      } else {
        axis_proj[d] = full_line_hermite(M_, spec.u_bar[d], sb, wall.u_wall[d], sw);
      }
    }
    wall_hermite_.setZero(hmap.size());
    for (int i = 0; i < hmap.size(); ++i) {
      const auto& g = hmap[i];
      wall_hermite_[i] =
          axis_proj[0][g[0]] * axis_proj[1][g[1]] * axis_proj[2][g[2]];
    }
    // Kinetic mass flux of the unscaled wall half (signed outward).
    const double sign = out_is_positive ? 1.0 : -1.0;
    wall_influx_ = sign * axis_flux[0] * axis_proj[(axis_ + 1) % 3][0] *
                   axis_proj[(axis_ + 2) % 3][0];
  }
  if (!(wall_influx_ < 0.0))
    throw config_error("wall operator: frame drowns the incoming half-space");
}

double WallOperator::outgoing_flux(const Eigen::VectorXcd& interior) const {
  const auto& ws = detail::basis_workspace(M_);
  const Eigen::VectorXcd h =
      burnett_to_hermite(ws.map, ws.hmap, ws.blocks, interior);
  // Tangential components integrate to delta_{k,0}, so only multi-indices
  // supported on the normal axis contribute.
  cplx flux = 0.0;
  int g[3] = {0, 0, 0};
  for (int b = 0; b <= M_; ++b) {
    g[axis_] = b;
    const int pos = ws.hmap.find(g[0], g[1], g[2]);
    if (pos >= 0) flux += flux_row_[b] * h[pos];
  }
  return sign_ * flux.real();
}

Eigen::VectorXcd WallOperator::ghost(const Eigen::VectorXcd& interior) const {
  const auto& ws = detail::basis_workspace(M_);
  const Eigen::VectorXcd h =
      burnett_to_hermite(ws.map, ws.hmap, ws.blocks, interior);
  Eigen::VectorXcd hg = Eigen::VectorXcd::Zero(h.size());
  // Outgoing-half projection acts on the normal axis only.
  for (int i = 0; i < ws.hmap.size(); ++i) {
    const auto& g = ws.hmap[i];
    const int tang = g[0] + g[1] + g[2] - g[axis_];
    cplx s = 0.0;
    int idx[3] = {g[0], g[1], g[2]};
    for (int b = 0; b + tang <= M_; ++b) {
      idx[axis_] = b;
      const int pos = ws.hmap.find(idx[0], idx[1], idx[2]);
      if (pos >= 0) s += outgoing_(g[axis_], b) * h[pos];
    }
    hg[i] = s;
  }
  const double alpha = -outgoing_flux(interior) / wall_influx_;
  hg += alpha * wall_hermite_.cast<cplx>();
  return hermite_to_burnett(ws.map, ws.hmap, ws.blocks, hg);
}

double WallOperator::net_kinetic_flux(const Eigen::VectorXcd& interior) const {
  const double out = outgoing_flux(interior);
  const double alpha = -out / wall_influx_;
  return out + alpha * wall_influx_;
}

// ---------------------------------------------------------------------------
// Free scheme pieces
// ---------------------------------------------------------------------------

Eigen::VectorXcd hll_flux(const Eigen::VectorXcd& fL, const Eigen::VectorXcd& fR,
                          const Eigen::SparseMatrix<cplx>& A1, double lamL,
                          double lamR) {
  if (!(lamL < 0.0 && lamR > 0.0))
    throw config_error("hll_flux: wave speeds must straddle zero");
  return (lamR * (A1 * fL) - lamL * (A1 * fR) + (lamL * lamR) * (fR - fL)) /
         (lamR - lamL);
}

void reconstruct_minmod(const Eigen::VectorXcd& fm, const Eigen::VectorXcd& f0,
                        const Eigen::VectorXcd& fp, Eigen::VectorXcd& left,
                        Eigen::VectorXcd& right) {
  const Eigen::Index n = f0.size();
  left.resize(n);
  right.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sr = minmod(f0[i].real() - fm[i].real(), fp[i].real() - f0[i].real());
    const double si = minmod(f0[i].imag() - fm[i].imag(), fp[i].imag() - f0[i].imag());
    const cplx half(0.5 * sr, 0.5 * si);
    left[i] = f0[i] - half;
    right[i] = f0[i] + half;
  }
}

double cfl_dt(const Mesh& mesh, double cfl) {
  if (!(cfl > 0.0 && cfl < 1.0)) throw config_error("cfl must lie in (0, 1)");
  const double c = hermite_largest_zero(mesh.spec.M + 1);
  const double sb = std::sqrt(mesh.spec.theta_bar);
  auto axis_dt = [&](double dx, int comp) {
    return dx / (std::abs(mesh.spec.u_bar[comp]) + c * sb);
  };
  if (mesh.grid.dimension == 1) return cfl * axis_dt(mesh.dx, mesh.grid.axis);
  return cfl * std::min(axis_dt(mesh.dx, 0), axis_dt(mesh.dy, 1));
}

// ---------------------------------------------------------------------------
// Mesh construction
// ---------------------------------------------------------------------------

Mesh make_mesh(const ScenarioConfig& config) {
  validate_config(config);
  Mesh mesh;
  mesh.grid = config.grid;
  mesh.spec.M = config.M;
  mesh.spec.u_bar = config.u_bar;
  mesh.spec.theta_bar = config.theta_bar;
  mesh.nx = config.grid.nx;
  mesh.ny = config.grid.dimension == 2 ? config.grid.ny : 1;
  mesh.dx = (config.grid.x1 - config.grid.x0) / mesh.nx;
  mesh.dy = config.grid.dimension == 2
                ? (config.grid.y1 - config.grid.y0) / mesh.ny
                : 0.0;
  mesh.cells.resize(static_cast<std::size_t>(mesh.nx) * mesh.ny);

  const int m0_init = config.effective_m0_init();
  for (int iy = 0; iy < mesh.ny; ++iy)
    for (int ix = 0; ix < mesh.nx; ++ix) {
      const double x = config.grid.x0 + (ix + 0.5) * mesh.dx;
      const double y = config.grid.dimension == 2
                           ? config.grid.y0 + (iy + 0.5) * mesh.dy
                           : 0.0;
      double rho = 1.0, theta = config.theta_bar;
      Vec3 u = config.u_bar;
      switch (config.scenario) {
        case ScenarioKind::colliding_flow:
          theta = config.collide_theta;
          u = {0.0, 0.0, 0.0};
          u[config.grid.axis] = x < 0.0 ? config.collide_speed : -config.collide_speed;
          break;
        case ScenarioKind::couette:
        case ScenarioKind::cavity:
          rho = 1.0;
          u = {0.0, 0.0, 0.0};
          theta = 1.0;
          break;
        case ScenarioKind::diffusion:
          rho = (std::abs(x) <= config.diffusion_half_width &&
                 std::abs(y) <= config.diffusion_half_width)
                    ? config.diffusion_density
                    : 1.0;
          u = {0.0, 0.0, 0.0};
          theta = 1.0;
          break;
        case ScenarioKind::custom:
          break;
      }
      CellState& cell = mesh.at(ix, iy);
      cell.f = maxwellian_projection(rho, u, theta, mesh.spec);
      cell.m0 = m0_init;
    }
  return mesh;
}

// ---------------------------------------------------------------------------
// Solver
// ---------------------------------------------------------------------------

Solver::Solver(const ScenarioConfig& config, const CoeffTables& tables)
    : config_(config), tables_(&tables) {
  validate_config(config_);
  if (tables.M != config_.M)
    throw cache_error("solver: coefficient tables were built for M = " +
                      std::to_string(tables.M) + ", config needs " +
                      std::to_string(config_.M));
  if (tables.m0_cap < config_.m0_cap)
    throw cache_error("solver: tables cover m0_cap " +
                      std::to_string(tables.m0_cap) + " < config " +
                      std::to_string(config_.m0_cap));
  if (tables.tensor.M_cap < config_.m0_cap)
    throw cache_error("solver: collision tensor degree too small for m0_cap");
  if (std::abs(tables.nu - config_.nu) > 1e-12)
    throw cache_error("solver: tables built for a different kernel exponent nu");
  mesh_ = make_mesh(config_);

  const double c = hermite_largest_zero(config_.M + 1);
  const double sb = std::sqrt(config_.theta_bar);
  const int n_axes = config_.grid.dimension;
  for (int a = 0; a < n_axes; ++a) {
    const int comp = config_.grid.dimension == 1 ? config_.grid.axis : a;
    const Eigen::SparseMatrix<double>& A = tables.advection.A[comp];
    const cplx unit = tables.advection.imaginary[comp] ? cplx(0.0, 1.0) : cplx(1.0, 0.0);
    Eigen::SparseMatrix<cplx> m = (sb * unit) * A.cast<cplx>();
    Eigen::SparseMatrix<cplx> id(A.rows(), A.cols());
    id.setIdentity();
    a_eff_[a] = m + config_.u_bar[comp] * id;
    lam_l_[a] = config_.u_bar[comp] - c * sb;
    lam_r_[a] = config_.u_bar[comp] + c * sb;
    if (!(lam_l_[a] < 0.0 && lam_r_[a] > 0.0))
      throw config_error("solver: |u_bar| too large for the basis wave speeds");
  }

  const int sides = config_.grid.dimension == 1 ? 2 : 4;
  for (int side = 0; side < sides; ++side) {
    const BoundarySpec& bc = config_.grid.bc[side];
    if (bc.kind != BoundaryKind::diffusive_wall) continue;
    const int comp = side < 2
                         ? (config_.grid.dimension == 1 ? config_.grid.axis : 0)
                         : 1;
    const int sign_out = (side % 2 == 0) ? -1 : +1;
    wall_[side].emplace(mesh_.spec, comp, sign_out, bc);
  }

  if (config_.dense_directions > 0)
    dense_rule_ = uniform_sphere_dense(config_.dense_directions);
}

double Solver::pick_dt(double remaining) const {
  double dt = cfl_dt(mesh_, config_.cfl);
  // Explicit collision stability: dt * nu_local / kn <= 1/2 on every cell.
  // nu_local only measures the relaxation rate of the modelled tail; the
  // Jacobian of the quadratic part can exceed it away from equilibrium, so a
  // safety factor of one half keeps the Heun substep inside its stability
  // interval.
  double nu_max = 0.0;
  for (const CellState& cell : mesh_.cells) {
    const MomentSet m = moments(cell.f);
    const double nu_loc = m.rho * std::pow(m.theta, config_.nu / 2.0) *
                          tables_->nu_m0[cell.m0];
    nu_max = std::max(nu_max, nu_loc);
  }
  if (nu_max > 0.0) dt = std::min(dt, 0.5 * config_.kn / nu_max);
  if (remaining > 0.0) dt = std::min(dt, remaining);
  return dt;
}

void Solver::fill_line(int spatial_axis, int line, std::vector<Eigen::VectorXcd>& buf,
                       const std::vector<Eigen::VectorXcd>& state) const {
  const int n = spatial_axis == 0 ? mesh_.nx : mesh_.ny;
  auto cell_index = [&](int j) {
    return spatial_axis == 0 ? static_cast<std::size_t>(line) * mesh_.nx + j
                             : static_cast<std::size_t>(j) * mesh_.nx + line;
  };
  buf.resize(n + 4);
  for (int j = 0; j < n; ++j) buf[j + 2] = state[cell_index(j)];
  const int side_lo = spatial_axis == 0 ? 0 : 2;
  const int side_hi = side_lo + 1;
  const BoundarySpec& lo = config_.grid.bc[side_lo];
  const BoundarySpec& hi = config_.grid.bc[side_hi];
  switch (lo.kind) {
    case BoundaryKind::periodic:
      buf[1] = buf[n + 1];
      buf[0] = buf[n];
      break;
    case BoundaryKind::neumann:
      buf[1] = buf[2];
      buf[0] = buf[2];
      break;
    case BoundaryKind::diffusive_wall:
      buf[1] = wall_[side_lo]->ghost(buf[2]);
      buf[0] = buf[1];
      break;
  }
  switch (hi.kind) {
    case BoundaryKind::periodic:
      buf[n + 2] = buf[2];
      buf[n + 3] = buf[3];
      break;
    case BoundaryKind::neumann:
      buf[n + 2] = buf[n + 1];
      buf[n + 3] = buf[n + 1];
      break;
    case BoundaryKind::diffusive_wall:
      buf[n + 2] = wall_[side_hi]->ghost(buf[n + 1]);
      buf[n + 3] = buf[n + 2];
      break;
  }
}

void Solver::transport_line_rhs(int spatial_axis,
                                const std::vector<Eigen::VectorXcd>& line,
                                std::vector<Eigen::VectorXcd>& rhs) const {
  const int n = static_cast<int>(line.size()) - 4;
  const double delta = spatial_axis == 0 ? mesh_.dx : mesh_.dy;
  const Eigen::SparseMatrix<cplx>& A = a_eff_[spatial_axis];
  const double lamL = lam_l_[spatial_axis];
  const double lamR = lam_r_[spatial_axis];

  // Face i in [0, n] separates padded cells i+1 and i+2.
  std::vector<Eigen::VectorXcd> face_l(n + 2), face_r(n + 2);
  for (int p = 1; p <= n + 2; ++p)
    reconstruct_minmod(line[p - 1], line[p], line[p + 1], face_l[p - 1],
                       face_r[p - 1]);
  rhs.resize(n);
  Eigen::VectorXcd prev = hll_flux(face_r[0], face_l[1], A, lamL, lamR);
  for (int i = 1; i <= n; ++i) {
    Eigen::VectorXcd cur = hll_flux(face_r[i], face_l[i + 1], A, lamL, lamR);
    rhs[i - 1] = (prev - cur) / delta;
    prev.swap(cur);
  }
}

void Solver::transport_substep(int spatial_axis, double dt) {
  const auto start = clock_type::now();
  const int n_lines = spatial_axis == 0 ? mesh_.ny : mesh_.nx;
  const int n = spatial_axis == 0 ? mesh_.nx : mesh_.ny;
  const std::size_t n_cells = mesh_.cells.size();

  std::vector<Eigen::VectorXcd> state0(n_cells), state1(n_cells), rhs0(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) state0[i] = mesh_.cells[i].f.coef;

  auto cell_index = [&](int line, int j) {
    return spatial_axis == 0 ? static_cast<std::size_t>(line) * mesh_.nx + j
                             : static_cast<std::size_t>(j) * mesh_.nx + line;
  };
  auto sweep = [&](const std::vector<Eigen::VectorXcd>& in,
                   std::vector<Eigen::VectorXcd>& out) {
    parallel_for(n_lines, config_.workers, [&](std::int64_t line) {
      std::vector<Eigen::VectorXcd> buf, rhs;
      fill_line(spatial_axis, static_cast<int>(line), buf, in);
      transport_line_rhs(spatial_axis, buf, rhs);
      for (int j = 0; j < n; ++j) out[cell_index(static_cast<int>(line), j)] = rhs[j];
    });
  };

  // Heun: predictor with the rhs at t, corrector with the average.
  sweep(state0, rhs0);
  for (std::size_t i = 0; i < n_cells; ++i) state1[i] = state0[i] + dt * rhs0[i];
  std::vector<Eigen::VectorXcd> rhs1(n_cells);
  sweep(state1, rhs1);
  parallel_for(static_cast<std::int64_t>(n_cells), config_.workers,
               [&](std::int64_t i) {
                 mesh_.cells[i].f.coef =
                     state0[i] + (0.5 * dt) * (rhs0[i] + rhs1[i]);
               });
  timing_.transport += seconds_since(start);
}

void Solver::collision_substep(double dt) {
  if (!collision_enabled_) return;
  const auto start = clock_type::now();
  parallel_for(static_cast<std::int64_t>(mesh_.cells.size()), config_.workers,
               [&](std::int64_t i) {
                 CellState& cell = mesh_.cells[i];
                 try {
                   const SpectralField k1 =
                       hybrid_rhs(cell.f, cell.m0, *tables_, config_.kn);
                   SpectralField f1(cell.f.spec);
                   f1.coef = cell.f.coef + dt * k1.coef;
                   const SpectralField k2 =
                       hybrid_rhs(f1, cell.m0, *tables_, config_.kn);
                   cell.f.coef += (0.5 * dt) * (k1.coef + k2.coef);
                 } catch (const numerical_error& e) {
                   const int ix = static_cast<int>(i) % mesh_.nx;
                   const int iy = static_cast<int>(i) / mesh_.nx;
                   throw numerical_error(
                       std::string(e.what()) + " [cell (" + std::to_string(ix) +
                       ", " + std::to_string(iy) + "), t = " + std::to_string(t_) +
                       "]");
                 }
               });
  timing_.collision += seconds_since(start);
}

void Solver::indicator_pass() {
  const bool want = (config_.adaptive || config_.probe_indicator) &&
                    (step_count_ % config_.indicator_stride == 0);
  if (!want) return;
  const auto start = clock_type::now();
  parallel_for(static_cast<std::int64_t>(mesh_.cells.size()), config_.workers,
               [&](std::int64_t i) {
                 CellState& cell = mesh_.cells[i];
                 try {
                   cell.last_indicator =
                       dense_rule_
                           ? indicator(cell.f, cell.m0, *tables_, *dense_rule_)
                           : indicator(cell.f, cell.m0, *tables_);
                   cell.has_indicator = true;
                 } catch (const numerical_error& e) {
                   const int ix = static_cast<int>(i) % mesh_.nx;
                   const int iy = static_cast<int>(i) / mesh_.nx;
                   throw numerical_error(
                       std::string(e.what()) + " [cell (" + std::to_string(ix) +
                       ", " + std::to_string(iy) + "), t = " + std::to_string(t_) +
                       "]");
                 }
               });
  timing_.indicator += seconds_since(start);

  const auto start_adapt = clock_type::now();
  for (const CellState& cell : mesh_.cells)
    eps_seen_max_ = std::max(eps_seen_max_, cell.last_indicator.total);
  if (config_.adaptive) {
    AdaptPolicy policy;
    policy.eps1 = config_.eps1;
    policy.eps2 = config_.eps2;
    policy.m0_cap = config_.m0_cap;
    parallel_for(static_cast<std::int64_t>(mesh_.cells.size()), config_.workers,
                 [&](std::int64_t i) {
                   CellState& cell = mesh_.cells[i];
                   cell.m0 = update_m0(cell.m0, cell.last_indicator.total, policy);
                 });
  }
  timing_.adaptation += seconds_since(start_adapt);
}

void Solver::step(double dt) {
  if (config_.grid.dimension == 1) {
    transport_substep(0, 0.5 * dt);
    collision_substep(dt);
    transport_substep(0, 0.5 * dt);
  } else {
    transport_substep(0, 0.5 * dt);
    transport_substep(1, 0.5 * dt);
    collision_substep(dt);
    transport_substep(1, 0.5 * dt);
    transport_substep(0, 0.5 * dt);
  }
  ++step_count_;
  ++timing_.steps;
  indicator_pass();
}

namespace {

SnapshotGrid take_snapshot(const Mesh& mesh, double t) {
  SnapshotGrid snap;
  snap.t = t;
  snap.moments.reserve(mesh.cells.size());
  snap.m0.reserve(mesh.cells.size());
  snap.indicator.reserve(mesh.cells.size());
  for (const CellState& cell : mesh.cells) {
    snap.moments.push_back(moments(cell.f));
    snap.m0.push_back(cell.m0);
    snap.indicator.push_back(cell.has_indicator ? cell.last_indicator.total : 0.0);
  }
  return snap;
}

}  // namespace

RunResult Solver::run() {
  RunResult result;
  result.snapshots.push_back(take_snapshot(mesh_, 0.0));

  std::vector<double> stops;
  const double horizon = config_.steady ? config_.max_time : config_.t_final;
  for (double s : config_.snapshot_times)
    if (s > 0.0 && s <= horizon) stops.push_back(s);
  if (!config_.steady &&
      (stops.empty() || stops.back() < config_.t_final))
    stops.push_back(config_.t_final);
  std::size_t next_stop = 0;

  std::vector<MomentSet> window_moments;
  double window_t = 0.0;
  const double eps_floor = 1e-14;

  while (true) {
    // Flush stops already reached (handles t_final = 0 and exact landings).
    while (next_stop < stops.size() && t_ >= stops[next_stop] - 1e-13) {
      if (result.snapshots.back().t != t_)
        result.snapshots.push_back(take_snapshot(mesh_, t_));
      ++next_stop;
    }
    if (config_.steady ? t_ >= horizon - 1e-13 : next_stop >= stops.size())
      break;
    const double target = next_stop < stops.size() ? stops[next_stop] : horizon;
    const double dt = pick_dt(target - t_);
    if (!(dt > 0.0)) break;
    step(dt);
    t_ += dt;

    if (next_stop < stops.size() && t_ >= stops[next_stop] - 1e-13) {
      result.snapshots.push_back(take_snapshot(mesh_, t_));
      ++next_stop;
    }

    if (config_.steady && step_count_ % config_.steady_window == 0) {
      std::vector<MomentSet> now;
      now.reserve(mesh_.cells.size());
      for (const CellState& cell : mesh_.cells) now.push_back(moments(cell.f));
      if (!window_moments.empty()) {
        const double elapsed = t_ - window_t;
        double change = 0.0;
        for (std::size_t i = 0; i < now.size(); ++i) {
          const MomentSet& a = window_moments[i];
          const MomentSet& b = now[i];
          double c = std::abs(b.rho - a.rho) / std::max(std::abs(a.rho), eps_floor);
          c = std::max(c, std::abs(b.theta - a.theta) /
                              std::max(std::abs(a.theta), eps_floor));
          for (int d = 0; d < 3; ++d)
            c = std::max(c, std::abs(b.u[d] - a.u[d]));
          change = std::max(change, c);
        }
        if (change / std::max(elapsed, eps_floor) < config_.steady_tol) {
          result.steady_reached = true;
          break;
        }
      }
      window_moments = std::move(now);
      window_t = t_;
    }
  }

  if (result.snapshots.back().t != t_)
    result.snapshots.push_back(take_snapshot(mesh_, t_));
  result.timing = timing_;
  result.eps_seen_max = eps_seen_max_;
  result.t_end = t_;
  result.steps = step_count_;
  result.final_f.reserve(mesh_.cells.size());
  result.final_m0.reserve(mesh_.cells.size());
  for (const CellState& cell : mesh_.cells) {
    result.final_f.push_back(cell.f.coef);
    result.final_m0.push_back(cell.m0);
  }
  return result;
}

RunResult run_scenario(const ScenarioConfig& config, const CoeffTables& tables) {
  Solver solver(config, tables);
  return solver.run();
}

}  // namespace burnett
