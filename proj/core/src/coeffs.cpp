#include "burnett/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <Eigen/Eigenvalues>

#include "burnett/basis.hpp"
#include "burnett/hermite.hpp"
#include "burnett/parallel.hpp"
#include "burnett/quadrature.hpp"

namespace burnett {

double generalized_binomial(double s, int k) {
  if (k < 0) return 0.0;
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r *= (s - k + j) / j;
  return r;
}

namespace detail {

double laguerre_exp_integral(double a, double s, int n, int np) {
  double sum = 0.0;
  for (int k = 0; k <= std::min(n, np); ++k)
    sum += generalized_binomial(s, n - k) * generalized_binomial(s, np - k) *
           generalized_binomial(k + a + s, k);
  const double sign = ((n + np) % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(std::lgamma(a + s + 1.0)) * sum;
}

double gamma_lm(int l, int m, int mu) {
  const int d1 = (mu == 1) ? 1 : 0;
  const int dm1 = (mu == -1) ? 1 : 0;
  const double f1 = l + (2 * d1 - 1) * m + d1;
  const double f2 = l - (2 * dm1 - 1) * m + dm1;
  const double den = (mu == 0 ? 1.0 : 2.0) * (2.0 * l - 1.0) * (2.0 * l + 1.0);
  const double v = f1 * f2 / den;
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

}  // namespace detail

double radial_vhs_integral_family(int l2, int n2, int n2p, double nu, SignFamily family) {
  const double c = (family == SignFamily::plus) ? (l2 == 0 ? 2.0 : 1.0)
                                                : (l2 == 0 ? 0.0 : -1.0);
  if (c == 0.0) return 0.0;
  return std::pow(2.0, nu + 1.0) * c *
         detail::laguerre_exp_integral(l2 + 0.5, nu / 2.0, n2, n2p);
}

double radial_vhs_integral(int l2, int n2, int n2p, double nu) {
  return radial_vhs_integral_family(l2, n2, n2p, nu, SignFamily::plus);
}

std::uint64_t product_key(int l1, int l2, int m2, int n2) {
  return (static_cast<std::uint64_t>(l1) << 48) |
         (static_cast<std::uint64_t>(l2) << 32) |
         (static_cast<std::uint64_t>(m2 + 1024) << 16) |
         static_cast<std::uint64_t>(n2);
}

namespace {

void key_unpack(std::uint64_t k, int& l1, int& l2, int& m2, int& n2) {
  l1 = static_cast<int>(k >> 48);
  l2 = static_cast<int>((k >> 32) & 0xffff);
  m2 = static_cast<int>((k >> 16) & 0xffff) - 1024;
  n2 = static_cast<int>(k & 0xffff);
}

}  // namespace

double ProductLayer::get(int l1, int l2, int m2, int n2) const {
  if (l1 < 0 || l2 < 0 || n2 < 0 || std::abs(m2) > std::min(l1, l2)) return 0.0;
  const std::uint64_t key = product_key(l1, l2, m2, n2);
  auto it = std::lower_bound(entries.begin(), entries.end(), key,
                             [](const std::pair<std::uint64_t, double>& e,
                                std::uint64_t k) { return e.first < k; });
  return (it != entries.end() && it->first == key) ? it->second : 0.0;
}

int ProductCoeffTable::layer_index(int l, int n, int np) const {
  if (l < 0 || l > M_ || n < 0 || l + 2 * n > M_ || np < 0 || np > N0_) return -1;
  return layer_pos_[l] + n * (N0_ + 1) + np;
}

const ProductLayer& ProductCoeffTable::layer(int l, int n, int np) const {
  const int i = layer_index(l, n, np);
  if (i < 0) throw config_error("ProductCoeffTable: layer index out of range");
  return layers_[i];
}

double ProductCoeffTable::get(int l, int n, int np, int l1, int l2, int m2,
                              int n2) const {
  const int i = layer_index(l, n, np);
  return i < 0 ? 0.0 : layers_[i].get(l1, l2, m2, n2);
}

namespace {

/// All index quadruples (l1, l2, m2, n2) that can carry a nonzero coefficient
/// for the layer (l, n, np), along with the paired first-factor index n1.
struct EntryIdx {
  int l1, l2, m2, n2, n1;
};

std::vector<EntryIdx> admissible_entries(int l, int n, int np) {
  const int S = n + np;
  const int D = l + 2 * S;
  std::vector<EntryIdx> out;
  for (int l1 = 0; l1 <= D; ++l1) {
    for (int l2 = (l + l1) % 2; l1 + l2 <= D; l2 += 2) {
      const int half = (l - l1 - l2) / 2;  // l - l1 - l2 is even by construction
      const int n2max = half + S;
      if (n2max < 0) break;
      const int mm = std::min(l1, l2);
      for (int n2 = 0; n2 <= n2max; ++n2)
        for (int m2 = -mm; m2 <= mm; ++m2)
          out.push_back({l1, l2, m2, n2, half + S - n2});
    }
  }
  return out;
}

/// Shared read-only context for the factorized exact seeding of n' = 0 layers.
struct SeedContext {
  IndexMap map;
  HermiteMap hmap;
  PairTransform t1;
  std::vector<Eigen::MatrixXcd> U;
  std::vector<std::unordered_map<int, int>> col_of;  // per degree: flat pos -> column

  explicit SeedContext(int M)
      : map(M), hmap(M), t1(M), U(burnett_hermite_blocks(M)), col_of(M + 1) {
    const auto degpos = burnett_degree_positions(map);
    for (int d = 0; d <= M; ++d)
      for (int c = 0; c < static_cast<int>(degpos[d].size()); ++c)
        col_of[d].emplace(degpos[d][c], c);
  }

  int column(int d, int l, int m, int n) const {
    return col_of[d].at(map.find(l, m, n));
  }
};

/// Exact n' = 0 layer: expand p_{l0n}((w1+w2)/sqrt2) in the Hermite family of
/// w1 and w2 through the pair transform, then project both legs back onto the
/// two basis sets with the per-degree change-of-basis blocks.
ProductLayer seed_layer(const SeedContext& ctx, int l, int n) {
  const int d = l + 2 * n;
  const int out_col = ctx.column(d, l, 0, n);
  const int off_d = ctx.hmap.degree_offset(d);

  ProductLayer layer;
  for (int dk = 0; dk <= d; ++dk) {
    const int dj = d - dk;
    const int ok = ctx.hmap.degree_offset(dk);
    const int oj = ctx.hmap.degree_offset(dj);
    const int nk = ctx.hmap.degree_offset(dk + 1) - ok;
    const int nj = ctx.hmap.degree_offset(dj + 1) - oj;

    Eigen::MatrixXcd S(nk, nj);
    for (int ik = 0; ik < nk; ++ik) {
      const auto& gk = ctx.hmap[ok + ik];
      for (int ij = 0; ij < nj; ++ij) {
        const auto& gj = ctx.hmap[oj + ij];
        const int g0 = gk[0] + gj[0], g1 = gk[1] + gj[1], g2 = gk[2] + gj[2];
        const int grow = ctx.hmap.find(g0, g1, g2) - off_d;
        S(ik, ij) = ctx.U[d](grow, out_col) * ctx.t1.coef(g0, 0, gk[0]) *
                    ctx.t1.coef(g1, 0, gk[1]) * ctx.t1.coef(g2, 0, gk[2]);
      }
    }
    const Eigen::MatrixXcd Ablk =
        ctx.U[dk].adjoint() * S * ctx.U[dj].conjugate();

    for (int l1 = dk % 2; l1 <= dk; l1 += 2) {
      const int n1 = (dk - l1) / 2;
      for (int l2 = dj % 2; l2 <= dj; l2 += 2) {
        const int n2 = (dj - l2) / 2;
        if ((l - l1 - l2) % 2 != 0) continue;
        const int mm = std::min(l1, l2);
        for (int m2 = -mm; m2 <= mm; ++m2) {
          const cplx a = Ablk(ctx.column(dk, l1, -m2, n1), ctx.column(dj, l2, m2, n2));
          if (std::abs(a.imag()) > 1e-10)
            throw numerical_error("product_coeffs: non-real expansion coefficient");
          layer.entries.emplace_back(product_key(l1, l2, m2, n2), a.real());
        }
      }
    }
  }
  std::sort(layer.entries.begin(), layer.entries.end());
  return layer;
}

/// One step of the n'-raising recurrence: fills layer (l, n, np) from
/// (l, n, np - 1). Prefactor indices are those of the target entry, with
/// n1 = (l - l1 - l2)/2 + (n + np - n2).
ProductLayer recur_layer(int l, int n, int np, const ProductLayer& prev) {
  using detail::gamma_lm;
  ProductLayer layer;
  const double scale = 1.0 / std::sqrt(np * (np + 0.5));
  for (const EntryIdx& e : admissible_entries(l, n, np)) {
    const int l1 = e.l1, l2 = e.l2, m2 = e.m2, n2 = e.n2, n1 = e.n1;
    double v = 0.0;
    if (n1 >= 1) v += 0.5 * std::sqrt(n1 * (n1 + l1 + 0.5)) * prev.get(l1, l2, m2, n2);
    if (n2 >= 1) v += 0.5 * std::sqrt(n2 * (n2 + l2 + 0.5)) * prev.get(l1, l2, m2, n2 - 1);
    for (int mu = -1; mu <= 1; ++mu) {
      const double sgn = (mu == 0) ? 1.0 : -1.0;  // (-1)^mu
      const int mp = m2 + mu;
      v += sgn * std::sqrt((l1 + n1 + 0.5) * (l2 + n2 + 0.5)) *
           gamma_lm(l1, mp, -mu) * gamma_lm(l2, mp, -mu) *
           prev.get(l1 - 1, l2 - 1, mp, n2);
      v -= std::sqrt(n1 * (l2 + n2 + 0.5)) * gamma_lm(-l1 - 1, mp, -mu) *
           gamma_lm(l2, mp, -mu) * prev.get(l1 + 1, l2 - 1, mp, n2);
      v -= std::sqrt(n2 * (l1 + n1 + 0.5)) * gamma_lm(l1, mp, -mu) *
           gamma_lm(-l2 - 1, mp, -mu) * prev.get(l1 - 1, l2 + 1, mp, n2 - 1);
      v += sgn * std::sqrt(static_cast<double>(n1) * n2) *
           gamma_lm(-l1 - 1, mp, -mu) * gamma_lm(-l2 - 1, mp, -mu) *
           prev.get(l1 + 1, l2 + 1, mp, n2 - 1);
    }
    layer.entries.emplace_back(product_key(l1, l2, m2, n2), scale * v);
  }
  std::sort(layer.entries.begin(), layer.entries.end());
  return layer;
}

}  // namespace

ProductCoeffTable product_coeffs(int M, int N0, int workers) {
  if (M < 0 || N0 < 0) throw config_error("product_coeffs: negative M or N0");
  ProductCoeffTable table;
  table.M_ = M;
  table.N0_ = N0;
  table.layer_pos_.assign(M + 2, 0);
  for (int l = 0; l <= M; ++l)
    table.layer_pos_[l + 1] = table.layer_pos_[l] + ((M - l) / 2 + 1) * (N0 + 1);
  table.layers_.resize(table.layer_pos_[M + 1]);

  const SeedContext ctx(M);
  std::vector<std::pair<int, int>> lineages;
  for (int l = 0; l <= M; ++l)
    for (int n = 0; n <= (M - l) / 2; ++n) lineages.emplace_back(l, n);

  parallel_for(static_cast<std::int64_t>(lineages.size()), workers,
               [&](std::int64_t i) {
                 const auto [l, n] = lineages[i];
                 const int base = table.layer_pos_[l] + n * (N0 + 1);
                 table.layers_[base] = seed_layer(ctx, l, n);
                 for (int np = 1; np <= N0; ++np)
                   table.layers_[base + np] =
                       recur_layer(l, n, np, table.layers_[base + np - 1]);
               });
  return table;
}

void cache_read_products(ProductCoeffTable& table, int M, int N0,
                         std::vector<ProductLayer>&& layers) {
  table.M_ = M;
  table.N0_ = N0;
  table.layer_pos_.assign(M + 2, 0);
  for (int l = 0; l <= M; ++l)
    table.layer_pos_[l + 1] = table.layer_pos_[l] + ((M - l) / 2 + 1) * (N0 + 1);
  if (static_cast<int>(layers.size()) != table.layer_pos_[M + 1])
    throw cache_error("cache: header mismatch (product layer count)");
  table.layers_ = std::move(layers);
}

ProductLayer product_coeffs_oracle(int l, int n, int np) {
  const int D = l + 2 * (n + np);
  const int nq = D + 2;
  const Quad1D q = gauss_hermite(nq);
  const BasisSpec unit{std::max(3, D), {0.0, 0.0, 0.0}, 1.0};

  // Tensorized 3-D Gauss-Hermite nodes, exact for the Gaussian-weighted
  // polynomial integrand in each of the two velocity variables.
  std::vector<Vec3> node;
  std::vector<double> wgt;
  node.reserve(nq * nq * nq);
  for (int i = 0; i < nq; ++i)
    for (int j = 0; j < nq; ++j)
      for (int k = 0; k < nq; ++k) {
        node.push_back({q.nodes[i], q.nodes[j], q.nodes[k]});
        wgt.push_back(q.weights[i] * q.weights[j] * q.weights[k]);
      }
  const int nn = static_cast<int>(node.size());

  const std::vector<EntryIdx> idx = admissible_entries(l, n, np);
  // Unique first-leg and second-leg basis members across the layer.
  std::vector<BasisIndex> b1s, b2s;
  std::vector<int> e_b1(idx.size()), e_b2(idx.size());
  {
    std::unordered_map<std::uint64_t, int> seen1, seen2;
    for (size_t e = 0; e < idx.size(); ++e) {
      const std::uint64_t k1 = product_key(idx[e].l1, 0, -idx[e].m2, idx[e].n1);
      const std::uint64_t k2 = product_key(idx[e].l2, 0, idx[e].m2, idx[e].n2);
      auto [it1, new1] = seen1.emplace(k1, static_cast<int>(b1s.size()));
      if (new1) b1s.push_back({idx[e].l1, -idx[e].m2, idx[e].n1});
      e_b1[e] = it1->second;
      auto [it2, new2] = seen2.emplace(k2, static_cast<int>(b2s.size()));
      if (new2) b2s.push_back({idx[e].l2, idx[e].m2, idx[e].n2});
      e_b2[e] = it2->second;
    }
  }

  // conj(p_b(w)) value tables, weights folded into the first leg.
  Eigen::MatrixXcd V1(nn, static_cast<int>(b1s.size()));
  Eigen::MatrixXcd V2(nn, static_cast<int>(b2s.size()));
  for (int i = 0; i < nn; ++i) {
    for (size_t b = 0; b < b1s.size(); ++b)
      V1(i, static_cast<int>(b)) = std::conj(p_eval(unit, b1s[b], node[i])) * wgt[i];
    for (size_t b = 0; b < b2s.size(); ++b)
      V2(i, static_cast<int>(b)) = std::conj(p_eval(unit, b2s[b], node[i])) * wgt[i];
  }

  // G(i, j) = p_{l0n}((w1+w2)/sqrt2) p_{00np}((w1-w2)/sqrt2); accumulate the
  // rank-reduced form row by row to avoid the nn x nn matrix.
  const BasisIndex out{l, 0, n};
  const BasisIndex outp{0, 0, np};
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd acc =
      Eigen::MatrixXcd::Zero(static_cast<int>(b1s.size()), static_cast<int>(b2s.size()));
  Eigen::VectorXcd grow(nn);
  for (int i = 0; i < nn; ++i) {
    for (int j = 0; j < nn; ++j) {
      const Vec3 x{(node[i][0] + node[j][0]) * inv_sqrt2,
                   (node[i][1] + node[j][1]) * inv_sqrt2,
                   (node[i][2] + node[j][2]) * inv_sqrt2};
      const Vec3 y{(node[i][0] - node[j][0]) * inv_sqrt2,
                   (node[i][1] - node[j][1]) * inv_sqrt2,
                   (node[i][2] - node[j][2]) * inv_sqrt2};
      grow(j) = p_eval(unit, out, x) * p_eval(unit, outp, y);
    }
    acc.noalias() += (V1.row(i).transpose()) * (grow.transpose() * V2);
  }

  ProductLayer layer;
  for (size_t e = 0; e < idx.size(); ++e) {
    const cplx a = acc(e_b1[e], e_b2[e]);
    layer.entries.emplace_back(
        product_key(idx[e].l1, idx[e].l2, idx[e].m2, idx[e].n2), a.real());
  }
  std::sort(layer.entries.begin(), layer.entries.end());
  return layer;
}

LinearKernelTable linear_kernel_tables(int M, double nu, SignFamily family,
                                       const ProductCoeffTable& products) {
  const int N0 = (M + 1) / 2;
  if (products.M() < M || products.N0() < N0)
    throw config_error("linear_kernel_tables: product table too small");

  LinearKernelTable t;
  t.family = family;
  t.nu = nu;
  t.M = M;
  t.N0 = N0;
  t.a.resize(M + 1);
  const double two_pi = 2.0 * M_PI;

  for (int l = 0; l <= M; ++l) {
    const int nmax = (M - l) / 2;
    t.a[l].assign(static_cast<size_t>(nmax + 1) * (nmax + 1) * (N0 + 1), 0.0);
    for (int n = 0; n <= nmax; ++n) {
      const ProductLayer& L0 = products.layer(l, n, 0);
      for (int n1 = 0; n1 <= nmax; ++n1)
        for (int npr = 0; npr <= N0; ++npr) {
          double s = 0.0;
          for (const auto& [key, A1] : L0.entries) {
            int l1, l2, m2, n2;
            key_unpack(key, l1, l2, m2, n2);
            if (l2 % 2 != 0) continue;  // odd angular modes cancel in the pair sum
            const int n2p = n2 + n1 + npr - n;
            if (n2p < 0) continue;
            const double A2 = products.get(l, n1, npr, l1, l2, m2, n2p);
            if (A2 == 0.0) continue;
            const double w =
                std::exp(0.5 * (std::lgamma(n2 + 1.0) + std::lgamma(n2p + 1.0) -
                                std::lgamma(l2 + n2 + 1.5) - std::lgamma(l2 + n2p + 1.5)));
            s += w * A1 * A2 * two_pi *
                 radial_vhs_integral_family(l2, n2, n2p, nu, family);
          }
          t.a[l][(static_cast<size_t>(n) * (nmax + 1) + n1) * (N0 + 1) + npr] = s;
        }
    }
  }
  return t;
}

ShapeCoeffTable shape_coeffs(int M) {
  ShapeCoeffTable t;
  t.M = M;
  t.N0 = (M + 1) / 2;
  t.s.resize(M + 1);

  const Quad1D panel = gauss_legendre(48, 0.0, 1.0);
  const double four_pi = 4.0 * M_PI;

  for (int l = 0; l <= M; ++l) {
    const int nmax = (M - l) / 2;
    t.s[l].assign(nmax + 1, std::vector<double>(t.N0 + 1, 0.0));
    for (int n = 0; n <= nmax; ++n) {
      // |phi| is smooth except at the radial zeros of the Laguerre factor;
      // integrate on panels split at those zeros, then out to the far tail.
      std::vector<double> brk{0.0};
      if (n >= 1) {
        const Quad1D lag = gauss_laguerre(n, l + 0.5);
        for (double x : lag.nodes) brk.push_back(std::sqrt(2.0 * x));
        std::sort(brk.begin(), brk.end());
      }
      const double r_last = brk.back();
      for (double r = r_last + 2.0; r <= r_last + 14.0; r += 2.0) brk.push_back(r);

      std::vector<double> ln(t.N0 + 1);
      for (size_t p = 0; p + 1 < brk.size(); ++p) {
        const double a = brk[p], b = brk[p + 1];
        for (int k = 0; k < 48; ++k) {
          const double r = a + (b - a) * panel.nodes[k];
          const double w = (b - a) * panel.weights[k];
          const double f = std::abs(phi_radial(l, n, r, 1.0)) * r * r * w;
          laguerre_all(t.N0, 0.5, 0.5 * r * r, ln.data());
          for (int np = 0; np <= t.N0; ++np)
            t.s[l][n][np] +=
                four_pi * f * basis_norm(0, np) * ln[np] / (2.0 * std::sqrt(M_PI));
        }
      }
    }
  }
  return t;
}

std::vector<double> relaxation_rates(int M_cap, const LinearKernelTable& minus_family) {
  if (minus_family.family != SignFamily::minus)
    throw config_error("relaxation_rates: needs the true-operator kernel table");
  if (minus_family.M < M_cap)
    throw config_error("relaxation_rates: kernel table smaller than M_cap");

  std::vector<double> nu(M_cap + 1, 0.0);
  for (int m0 = 3; m0 <= M_cap; ++m0) {
    double worst = 0.0;
    for (int l = 0; l <= m0; ++l) {
      const int nm = (m0 - l) / 2;
      Eigen::MatrixXd B(nm + 1, nm + 1);
      for (int i = 0; i <= nm; ++i)
        for (int j = 0; j <= nm; ++j) B(i, j) = minus_family.get(l, i, j, 0);
      const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(B, false).eigenvalues();
      for (int i = 0; i < ev.size(); ++i) worst = std::max(worst, std::abs(ev(i)));
    }
    nu[m0] = worst;
  }
  return nu;
}

AdvectionMatrices advection_matrices(int M) {
  const BasisSpec unit{M, {0.0, 0.0, 0.0}, 1.0};
  const IndexMap map(M);
  const int N = map.size();
  const Quad1D q = gauss_hermite(M + 2);
  const int nq = static_cast<int>(q.nodes.size());
  const int nn = nq * nq * nq;

  Eigen::MatrixXcd P(nn, N);
  Eigen::VectorXd w(nn);
  std::array<Eigen::VectorXd, 3> wv;
  for (auto& v : wv) v.resize(nn);
  {
    std::vector<cplx> row(N);
    int i = 0;
    for (int a = 0; a < nq; ++a)
      for (int b = 0; b < nq; ++b)
        for (int c = 0; c < nq; ++c, ++i) {
          const Vec3 v{q.nodes[a], q.nodes[b], q.nodes[c]};
          p_eval_all(unit, map, v, row.data());
          for (int n = 0; n < N; ++n) P(i, n) = row[n];
          const double ww = q.weights[a] * q.weights[b] * q.weights[c];
          for (int k = 0; k < 3; ++k) wv[k](i) = ww * v[k];
        }
  }

  AdvectionMatrices adv;
  adv.M = M;
  const double thresh = 1e-13;
  for (int k = 0; k < 3; ++k) {
    const Eigen::MatrixXcd Ak = P.adjoint() * wv[k].asDiagonal() * P;
    std::vector<Eigen::Triplet<double>> trip;
    double residue = 0.0;
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        const double keep = adv.imaginary[k] ? Ak(a, b).imag() : Ak(a, b).real();
        const double drop = adv.imaginary[k] ? Ak(a, b).real() : Ak(a, b).imag();
        residue = std::max(residue, std::abs(drop));
        if (std::abs(keep) > thresh) trip.emplace_back(a, b, keep);
      }
    if (residue > 1e-11)
      throw numerical_error("advection_matrices: unexpected complex structure");
    adv.A[k].resize(N, N);
    adv.A[k].setFromTriplets(trip.begin(), trip.end());
  }
  return adv;
}

CoeffTables build_coeff_tables(int M, int m0_cap, double nu, int tensor_cap,
                               int workers) {
  if (M < 3) throw config_error("build_coeff_tables: M must be >= 3");
  if (m0_cap < 3 || m0_cap > M)
    throw config_error("build_coeff_tables: m0_cap must be in [3, M]");
  if (tensor_cap < 3 || tensor_cap > M)
    throw config_error("build_coeff_tables: tensor_cap must be in [3, M]");

  CoeffTables t;
  t.M = M;
  t.m0_cap = m0_cap;
  t.nu = nu;
  t.products = product_coeffs(M, (M + 1) / 2, workers);
  t.a_plus = linear_kernel_tables(M, nu, SignFamily::plus, t.products);
  t.a_minus = linear_kernel_tables(M, nu, SignFamily::minus, t.products);
  t.shapes = shape_coeffs(M);
  t.nu_m0 = relaxation_rates(m0_cap, t.a_minus);
  t.tensor = collision_tensor(tensor_cap, nu, workers);
  t.advection = advection_matrices(M);
  return t;
}

}  // namespace burnett
