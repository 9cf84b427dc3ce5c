#include "burnett/collision.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace burnett {

namespace detail {

const BasisWorkspace& basis_workspace(int M) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<BasisWorkspace>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(M);
  if (it == cache.end()) {
    auto ws = std::make_unique<BasisWorkspace>(M);
    ws->blocks = burnett_hermite_blocks(M);
    ws->degpos = burnett_degree_positions(ws->map);
    it = cache.emplace(M, std::move(ws)).first;
  }
  return *it->second;
}

const std::vector<int>& tensor_permutation(int M, int M_cap) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<std::vector<int>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(M, M_cap);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const IndexMap big(M);
    const IndexMap small(M_cap);
    auto perm = std::make_unique<std::vector<int>>(small.size());
    for (int i = 0; i < small.size(); ++i) (*perm)[i] = big.find(small[i]);
    it = cache.emplace(key, std::move(perm)).first;
  }
  return *it->second;
}

}  // namespace detail

namespace {

// Hermite coefficients (q~-normalized, degrees <= deg_max) of the field in
// the spec's unit frame: h = U f per degree block.
Eigen::VectorXcd hermite_coeffs(const SpectralField& f,
                                const detail::BasisWorkspace& ws, int deg_max) {
  Eigen::VectorXcd h = Eigen::VectorXcd::Zero(ws.hmap.size());
  for (int d = 0; d <= deg_max; ++d) {
    const auto& pos = ws.degpos[d];
    Eigen::VectorXcd fd(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) fd[static_cast<int>(i)] = f.coef[pos[i]];
    const Eigen::VectorXcd hd = ws.blocks[d] * fd;
    const int base = ws.hmap.degree_offset(d);
    for (int i = 0; i < hd.size(); ++i) h[base + i] = hd[i];
  }
  return h;
}

}  // namespace

MomentSet moments(const SpectralField& f) {
  const auto& ws = detail::basis_workspace(f.spec.M);
  const Eigen::VectorXcd h = hermite_coeffs(f, ws, 3);
  const auto& hm = ws.hmap;
  auto hv = [&](int a, int b, int c) { return h[hm.find(a, b, c)].real(); };

  // Raw moments of the unit-frame variable xi = (v - u_bar)/sqrt(theta_bar),
  // read off the orthonormal Hermite expansion (x = q~_1, x^2 = sqrt2 q~_2 + 1,
  // x^3 = sqrt6 q~_3 + 3 q~_1).
  const double s0 = hv(0, 0, 0);
  Vec3 s1{};
  Eigen::Matrix3d s2 = Eigen::Matrix3d::Zero();
  Vec3 s3{};
  const double sqrt2 = std::sqrt(2.0), sqrt6 = std::sqrt(6.0);
  for (int d = 0; d < 3; ++d) {
    std::array<int, 3> e{};
    e[d] = 1;
    s1[d] = hv(e[0], e[1], e[2]);
    std::array<int, 3> e2{};
    e2[d] = 2;
    s2(d, d) = sqrt2 * hv(e2[0], e2[1], e2[2]) + s0;
    std::array<int, 3> e3{};
    e3[d] = 3;
    s3[d] = sqrt6 * hv(e3[0], e3[1], e3[2]) + 3.0 * s1[d];
    for (int e_ = 0; e_ < 3; ++e_) {
      if (e_ == d) continue;
      std::array<int, 3> de{};
      de[d] += 1;
      de[e_] += 1;
      s2(d, e_) = hv(de[0], de[1], de[2]);
      std::array<int, 3> dee{};
      dee[d] += 1;
      dee[e_] += 2;
      s3[d] += sqrt2 * hv(dee[0], dee[1], dee[2]) + s1[d];
    }
  }

  // Raw moments of v = u_bar + c xi.
  const Vec3& ub = f.spec.u_bar;
  const double c = std::sqrt(f.spec.theta_bar);
  const double ub2 = ub[0] * ub[0] + ub[1] * ub[1] + ub[2] * ub[2];
  const double s2tr = s2.trace();
  double udots1 = 0.0;
  for (int d = 0; d < 3; ++d) udots1 += ub[d] * s1[d];

  const double r0 = s0;
  Vec3 r1{}, r3{};
  Eigen::Matrix3d r2;
  for (int d = 0; d < 3; ++d) {
    r1[d] = ub[d] * s0 + c * s1[d];
    for (int e_ = 0; e_ < 3; ++e_)
      r2(d, e_) = ub[d] * ub[e_] * s0 + c * (ub[d] * s1[e_] + ub[e_] * s1[d]) +
                  c * c * s2(d, e_);
    double us2d = 0.0;
    for (int e_ = 0; e_ < 3; ++e_) us2d += ub[e_] * s2(d, e_);
    r3[d] = ub[d] * ub2 * s0 + 2.0 * c * ub[d] * udots1 + c * c * ub[d] * s2tr +
            c * ub2 * s1[d] + 2.0 * c * c * us2d + c * c * c * s3[d];
  }

  MomentSet out;
  out.rho = r0;
  if (!(out.rho > 0.0))
    throw numerical_error("moments: non-physical state (rho <= 0)");
  for (int d = 0; d < 3; ++d) out.u[d] = r1[d] / r0;
  const double u2 =
      out.u[0] * out.u[0] + out.u[1] * out.u[1] + out.u[2] * out.u[2];
  const double tr2 = r2.trace();
  out.theta = (tr2 - r0 * u2) / (3.0 * r0);
  if (!(out.theta > 0.0))
    throw numerical_error("moments: non-physical state (theta <= 0)");
  for (int d = 0; d < 3; ++d)
    for (int e_ = 0; e_ < 3; ++e_)
      out.sigma(d, e_) = r2(d, e_) - r0 * out.u[d] * out.u[e_] -
                         (d == e_ ? r0 * out.theta : 0.0);
  for (int d = 0; d < 3; ++d) {
    double ur2d = 0.0;
    for (int e_ = 0; e_ < 3; ++e_) ur2d += out.u[e_] * r2(d, e_);
    out.q[d] = 0.5 * (r3[d] - 2.0 * ur2d + 2.0 * r0 * u2 * out.u[d] - out.u[d] * tr2);
  }
  return out;
}

SpectralField maxwellian_projection(double rho, const Vec3& u, double theta,
                                    const BasisSpec& spec) {
  if (!(rho > 0.0) || !(theta > 0.0))
    throw config_error("maxwellian_projection: rho and theta must be > 0");
  const auto& ws = detail::basis_workspace(spec.M);
  const int M = spec.M;
  const double c = std::sqrt(spec.theta_bar);
  const double b2 = theta / spec.theta_bar;

  // Per-axis Gaussian expectations of the probabilists' Hermite polynomials
  // for xi_d ~ N(a_d, b^2): r_k = a r_{k-1} + (b^2 - 1)(k - 1) r_{k-2}.
  std::array<std::vector<double>, 3> r;
  for (int d = 0; d < 3; ++d) {
    r[d].assign(M + 1, 0.0);
    const double a = (u[d] - spec.u_bar[d]) / c;
    r[d][0] = 1.0;
    if (M >= 1) r[d][1] = a;
    for (int k = 2; k <= M; ++k)
      r[d][k] = a * r[d][k - 1] + (b2 - 1.0) * (k - 1) * r[d][k - 2];
  }
  std::vector<double> inv_sqrt_fact(M + 1);
  inv_sqrt_fact[0] = 1.0;
  for (int k = 1; k <= M; ++k)
    inv_sqrt_fact[k] = inv_sqrt_fact[k - 1] / std::sqrt(static_cast<double>(k));

  Eigen::VectorXcd h(ws.hmap.size());
  for (int i = 0; i < ws.hmap.size(); ++i) {
    const auto& g = ws.hmap[i];
    h[i] = rho * r[0][g[0]] * inv_sqrt_fact[g[0]] * r[1][g[1]] *
           inv_sqrt_fact[g[1]] * r[2][g[2]] * inv_sqrt_fact[g[2]];
  }

  SpectralField out(spec);
  for (int d = 0; d <= M; ++d) {
    const auto& pos = ws.degpos[d];
    const int base = ws.hmap.degree_offset(d);
    const Eigen::VectorXcd hd = h.segment(base, static_cast<int>(pos.size()));
    const Eigen::VectorXcd fd = ws.blocks[d].adjoint() * hd;
    for (std::size_t i = 0; i < pos.size(); ++i) out.coef[pos[i]] = fd[static_cast<int>(i)];
  }
  return out;
}

SplitField split(const SpectralField& f, int m0) {
  if (m0 < 3 || m0 > f.spec.M) {
    std::ostringstream msg;
    msg << "split: m0 = " << m0 << " outside [3, " << f.spec.M << "]";
    throw config_error(msg.str());
  }
  const auto& ws = detail::basis_workspace(f.spec.M);
  SplitField out;
  out.m0 = m0;
  out.low = SpectralField(f.spec);
  out.high = SpectralField(f.spec);
  for (int i = 0; i < ws.map.size(); ++i) {
    if (ws.map[i].degree() <= m0)
      out.low.coef[i] = f.coef[i];
    else
      out.high.coef[i] = f.coef[i];
  }
  return out;
}

namespace {

// Quadratic block of the hybrid right-hand side in micro-macro form:
//   Q_{m0} : (f1 (x) f1 - M1 (x) M1) = Q:(g (x) g) + Q:(g (x) M + M (x) g)
// with g = f1 - M1, contracted in the tensor's own index space.
void quadratic_block(const SpectralField& f, const SpectralField& maxw, int m0,
                     const CoeffTables& tables, Eigen::VectorXcd& out_full) {
  const int M = f.spec.M;
  const int cap = tables.tensor.M_cap;
  const auto& perm = detail::tensor_permutation(M, cap);
  const auto& ws = detail::basis_workspace(M);
  const int nc = static_cast<int>(perm.size());

  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(nc);
  Eigen::VectorXcd mx = Eigen::VectorXcd::Zero(nc);
  const IndexMap small(cap);
  for (int i = 0; i < nc; ++i) {
    if (small[i].degree() > m0) continue;
    g[i] = f.coef[perm[i]] - maxw.coef[perm[i]];
    mx[i] = maxw.coef[perm[i]];
  }

  Eigen::VectorXcd qgg = Eigen::VectorXcd::Zero(nc);
  tensor_apply(tables.tensor, m0, g, g, qgg);
  Eigen::VectorXcd qgm = Eigen::VectorXcd::Zero(nc);
  tensor_apply(tables.tensor, m0, g, mx, qgm);

  const double scale = std::pow(f.spec.theta_bar, tables.nu / 2.0);
  for (int i = 0; i < nc; ++i) {
    if (small[i].degree() > m0) continue;
    out_full[perm[i]] += scale * (qgg[i] + 2.0 * qgm[i]);
  }
  (void)ws;
}

}  // namespace

SpectralField hybrid_rhs(const SpectralField& f, int m0, const CoeffTables& tables,
                         double kn) {
  if (!(kn > 0.0)) throw config_error("hybrid_rhs: kn must be > 0");
  if (m0 < 3 || m0 > f.spec.M)
    throw config_error("hybrid_rhs: m0 outside [3, M]");
  if (m0 > tables.tensor.M_cap)
    throw config_error("hybrid_rhs: m0 exceeds the assembled tensor degree");

  const MomentSet mom = moments(f);
  const SpectralField maxw =
      maxwellian_projection(mom.rho, mom.u, mom.theta, f.spec);

  SpectralField out(f.spec);
  quadratic_block(f, maxw, m0, tables, out.coef);

  const double nu_local =
      mom.rho * std::pow(mom.theta, tables.nu / 2.0) * tables.nu_m0[m0];
  const auto& ws = detail::basis_workspace(f.spec.M);
  for (int i = 0; i < ws.map.size(); ++i)
    if (ws.map[i].degree() > m0)
      out.coef[i] = nu_local * (maxw.coef[i] - f.coef[i]);

  out.coef /= kn;
  return out;
}

SpectralField full_rhs(const SpectralField& f, const CoeffTables& tables, double kn) {
  if (!(kn > 0.0)) throw config_error("full_rhs: kn must be > 0");
  const int M = f.spec.M;
  if (tables.tensor.M_cap < M)
    throw config_error("full_rhs: tensor does not cover degree M");
  const auto& perm = detail::tensor_permutation(M, tables.tensor.M_cap);
  const int nc = static_cast<int>(perm.size());
  Eigen::VectorXcd fc(nc);
  for (int i = 0; i < nc; ++i) fc[i] = f.coef[perm[i]];
  Eigen::VectorXcd q = Eigen::VectorXcd::Zero(nc);
  tensor_apply(tables.tensor, M, fc, fc, q);
  const double scale = std::pow(f.spec.theta_bar, tables.nu / 2.0) / kn;
  SpectralField out(f.spec);
  for (int i = 0; i < nc; ++i) out.coef[perm[i]] = scale * q[i];
  return out;
}

}  // namespace burnett
