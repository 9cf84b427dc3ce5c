#include "burnett/indicator.hpp"

#include <cmath>

#include "burnett/basis.hpp"
#include "burnett/collision.hpp"

namespace burnett {

DirectionalMax directional_max(const SpectralField& f) {
  return directional_max(f, lebedev_50());
}

DirectionalMax directional_max(const SpectralField& f, const SphereRule& rule) {
  const int M = f.spec.M;
  const auto& ws = detail::basis_workspace(M);
  DirectionalMax out;
  out.M = M;
  out.g.resize(M + 1);
  for (int l = 0; l <= M; ++l) out.g[l].assign((M - l) / 2 + 1, 0.0);

  std::vector<cplx> ylm((M + 1) * (M + 1));
  for (const Vec3& dir : rule.nodes) {
    spherical_harmonic_all(M, dir, ylm.data());
    for (int l = 0; l <= M; ++l)
      for (int n = 0; n <= (M - l) / 2; ++n) {
        cplx s = 0.0;
        for (int m = -l; m <= l; ++m)
          s += f.coef[ws.map.find(l, m, n)] * ylm[l * (l + 1) + m];
        out.g[l][n] = std::max(out.g[l][n], std::abs(s));
      }
  }
  return out;
}

BoundingFunction bounding_function(const DirectionalMax& g, const ShapeCoeffTable& s) {
  if (g.M > s.M)
    throw config_error("bounding_function: shape table does not cover the field degree");
  BoundingFunction out;
  out.h.assign(s.N0 + 1, 0.0);
  for (int l = 0; l <= g.M; ++l)
    for (std::size_t n = 0; n < g.g[l].size(); ++n)
      for (int np = 0; np <= s.N0; ++np)
        out.h[np] += g.g[l][n] * s.s[l][n][np];
  return out;
}

Eigen::VectorXcd qabs_apply(const SpectralField& f, const BoundingFunction& h,
                            const LinearKernelTable& a_plus) {
  const int M = f.spec.M;
  if (a_plus.M < M)
    throw config_error("qabs_apply: kernel table does not cover the field degree");
  const int N0 = std::min(h.N0(), a_plus.N0);
  const auto& ws = detail::basis_workspace(M);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(f.size());
  for (int l = 0; l <= M; ++l) {
    const int nmax = (M - l) / 2;
    // Contract the kernel with h: ah(n_out, n_in) = sum_{n'} a^{n'} h_{n'}.
    Eigen::MatrixXd ah = Eigen::MatrixXd::Zero(nmax + 1, nmax + 1);
    for (int n = 0; n <= nmax; ++n)
      for (int n1 = 0; n1 <= nmax; ++n1)
        for (int np = 0; np <= N0; ++np)
          ah(n, n1) += a_plus.get(l, n, n1, np) * h.h[np];
    for (int m = -l; m <= l; ++m)
      for (int n = 0; n <= nmax; ++n) {
        cplx s = 0.0;
        for (int n1 = 0; n1 <= nmax; ++n1)
          s += ah(n, n1) * f.coef[ws.map.find(l, m, n1)];
        out[ws.map.find(l, m, n)] = s;
      }
  }
  return out;
}

Eigen::VectorXd qabs_isotropic_pair(const BoundingFunction& h1,
                                    const BoundingFunction& h2,
                                    const LinearKernelTable& a_plus) {
  const int nmax = a_plus.M / 2;
  const int n_top = std::min(h1.N0(), nmax);
  const int np_top = std::min(h2.N0(), a_plus.N0);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(nmax + 1);
  for (int n1 = 0; n1 <= nmax; ++n1) {
    double s = 0.0;
    for (int n = 0; n <= n_top; ++n)
      for (int np = 0; np <= np_top; ++np)
        s += h1.h[n] * h2.h[np] * a_plus.get(0, n1, n, np);
    out[n1] = s;
  }
  return out;
}

IndicatorReport indicator(const SpectralField& f, int m0, const CoeffTables& tables) {
  return indicator(f, m0, tables, lebedev_50());
}

IndicatorReport indicator(const SpectralField& f, int m0, const CoeffTables& tables,
                          const SphereRule& rule) {
  const int M = f.spec.M;
  if (m0 < 3 || m0 > M) throw config_error("indicator: m0 outside [3, M]");
  const auto& ws = detail::basis_workspace(M);
  const double rho = f.coef[ws.map.find(0, 0, 0)].real();
  if (std::abs(rho) < 1e-300)
    throw numerical_error("indicator: density too small to normalize");

  SpectralField fn(f.spec);
  fn.coef = f.coef / rho;
  const MomentSet mom = moments(fn);
  const SpectralField mx = maxwellian_projection(mom.rho, mom.u, mom.theta, f.spec);

  SpectralField d_low(f.spec), d_high(f.spec), m_high(f.spec);
  for (int i = 0; i < ws.map.size(); ++i) {
    const cplx diff = fn.coef[i] - mx.coef[i];
    if (ws.map[i].degree() <= m0)
      d_low.coef[i] = diff;
    else {
      d_high.coef[i] = diff;
      m_high.coef[i] = mx.coef[i];
    }
  }

  const BoundingFunction h =
      bounding_function(directional_max(d_high, rule), tables.shapes);
  const BoundingFunction h1 =
      bounding_function(directional_max(d_low, rule), tables.shapes);
  const BoundingFunction h2 =
      bounding_function(directional_max(m_high, rule), tables.shapes);

  IndicatorReport out;
  out.m0_used = m0;
  out.term1 = qabs_apply(fn, h, tables.a_plus).norm();
  out.term2 = qabs_isotropic_pair(h1, h2, tables.a_plus).norm();
  out.total = out.term1 + out.term2;
  return out;
}

}  // namespace burnett
