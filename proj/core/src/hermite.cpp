#include "burnett/hermite.hpp"

#include <cmath>

#include "burnett/basis.hpp"
#include "burnett/quadrature.hpp"

namespace burnett {

double hermite_normalized(int k, double x) {
  if (k < 0) throw config_error("hermite_normalized: k must be >= 0");
  double prev = 0.0, cur = 1.0;
  for (int j = 0; j < k; ++j) {
    const double next = (x * cur - std::sqrt(static_cast<double>(j)) * prev) /
                        std::sqrt(j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

void hermite_normalized_all(int kmax, double x, double* out) {
  out[0] = 1.0;
  if (kmax == 0) return;
  out[1] = x;
  for (int j = 1; j < kmax; ++j)
    out[j + 1] = (x * out[j] - std::sqrt(static_cast<double>(j)) * out[j - 1]) /
                 std::sqrt(j + 1.0);
}

HermiteMap::HermiteMap(int M) : M_(M) {
  if (M < 0) throw config_error("HermiteMap: M must be >= 0");
  offset_.assign(M + 2, 0);
  for (int d = 0; d <= M; ++d) {
    offset_[d] = static_cast<int>(list_.size());
    for (int g0 = d; g0 >= 0; --g0)
      for (int g1 = d - g0; g1 >= 0; --g1) list_.push_back({g0, g1, d - g0 - g1});
  }
  offset_[M + 1] = static_cast<int>(list_.size());
}

int HermiteMap::find(int g0, int g1, int g2) const {
  if (g0 < 0 || g1 < 0 || g2 < 0) return -1;
  const int d = g0 + g1 + g2;
  if (d > M_) return -1;
  const int t = d - g0;
  return offset_[d] + t * (t + 1) / 2 + (t - g1);
}

PairTransform::PairTransform(int amax) : amax_(amax) {
  if (amax < 0) throw config_error("PairTransform: amax must be >= 0");
  table_.assign(amax + 1, std::vector<std::vector<double>>(amax + 1));
  for (int a = 0; a <= amax; ++a)
    for (int b = 0; b <= amax; ++b) table_[a][b].assign(a + b + 1, 0.0);

  // 2-D Gauss-Hermite projection; integrands have degree 2(a+b) <= 4*amax.
  Quad1D gh = gauss_hermite(2 * amax + 2);
  const int nq = static_cast<int>(gh.nodes.size());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<double> qx(2 * amax + 1), qy(2 * amax + 1), qu(amax + 1), qv(amax + 1);
  for (int i = 0; i < nq; ++i)
    for (int j = 0; j < nq; ++j) {
      const double x = gh.nodes[i], y = gh.nodes[j];
      const double w = gh.weights[i] * gh.weights[j];
      hermite_normalized_all(2 * amax, x, qx.data());
      hermite_normalized_all(2 * amax, y, qy.data());
      hermite_normalized_all(amax, (x + y) * inv_sqrt2, qu.data());
      hermite_normalized_all(amax, (x - y) * inv_sqrt2, qv.data());
      for (int a = 0; a <= amax; ++a)
        for (int b = 0; b <= amax; ++b) {
          const double lead = w * qu[a] * qv[b];
          std::vector<double>& row = table_[a][b];
          for (int k = 0; k <= a + b; ++k) row[k] += lead * qx[k] * qy[a + b - k];
        }
    }
}

std::vector<std::vector<int>> burnett_degree_positions(const IndexMap& map) {
  std::vector<std::vector<int>> out(map.M() + 1);
  for (int i = 0; i < map.size(); ++i) out[map[i].degree()].push_back(i);
  return out;
}

std::vector<Eigen::MatrixXcd> burnett_hermite_blocks(int M) {
  const BasisSpec spec{std::max(M, 3), {0, 0, 0}, 1.0};
  IndexMap map(M >= 3 ? M : 3);
  // When M < 3 we still evaluate with a valid spec but only keep degrees <= M.
  HermiteMap hmap(M);
  std::vector<std::vector<int>> bpos = burnett_degree_positions(map);

  std::vector<Eigen::MatrixXcd> blocks(M + 1);
  for (int d = 0; d <= M; ++d) {
    const int rows = hmap.degree_offset(d + 1) - hmap.degree_offset(d);
    blocks[d] = Eigen::MatrixXcd::Zero(rows, static_cast<int>(bpos[d].size()));
  }

  Quad1D gh = gauss_hermite(M + 2);
  const int nq = static_cast<int>(gh.nodes.size());
  std::vector<cplx> pvals(map.size());
  std::vector<double> h0(M + 1), h1(M + 1), h2(M + 1);
  for (int i = 0; i < nq; ++i) {
    hermite_normalized_all(M, gh.nodes[i], h0.data());
    for (int j = 0; j < nq; ++j) {
      hermite_normalized_all(M, gh.nodes[j], h1.data());
      for (int k = 0; k < nq; ++k) {
        hermite_normalized_all(M, gh.nodes[k], h2.data());
        const double w = gh.weights[i] * gh.weights[j] * gh.weights[k];
        const Vec3 v{gh.nodes[i], gh.nodes[j], gh.nodes[k]};
        p_eval_all(spec, map, v, pvals.data());
        for (int d = 0; d <= M; ++d) {
          Eigen::MatrixXcd& U = blocks[d];
          const int base = hmap.degree_offset(d);
          for (int r = 0; r < U.rows(); ++r) {
            const std::array<int, 3>& g = hmap[base + r];
            const double hq = w * h0[g[0]] * h1[g[1]] * h2[g[2]];
            for (int c = 0; c < U.cols(); ++c)
              U(r, c) += hq * pvals[bpos[d][c]];
          }
        }
      }
    }
  }
  return blocks;
}

Eigen::VectorXcd burnett_to_hermite(const IndexMap& map, const HermiteMap& hmap,
                                    const std::vector<Eigen::MatrixXcd>& blocks,
                                    const Eigen::VectorXcd& coef) {
  std::vector<std::vector<int>> bpos = burnett_degree_positions(map);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(hmap.size());
  const int dmax = std::min(map.M(), hmap.M());
  for (int d = 0; d <= dmax; ++d) {
    const int cols = static_cast<int>(bpos[d].size());
    Eigen::VectorXcd c(cols);
    for (int i = 0; i < cols; ++i) c[i] = coef[bpos[d][i]];
    out.segment(hmap.degree_offset(d), blocks[d].rows()) = blocks[d] * c;
  }
  return out;
}

Eigen::VectorXcd hermite_to_burnett(const IndexMap& map, const HermiteMap& hmap,
                                    const std::vector<Eigen::MatrixXcd>& blocks,
                                    const Eigen::VectorXcd& hcoef) {
  std::vector<std::vector<int>> bpos = burnett_degree_positions(map);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(map.size());
  const int dmax = std::min(map.M(), hmap.M());
  for (int d = 0; d <= dmax; ++d) {
    Eigen::VectorXcd c =
        blocks[d].adjoint() * hcoef.segment(hmap.degree_offset(d), blocks[d].rows());
    for (int i = 0; i < c.size(); ++i) out[bpos[d][i]] = c[i];
  }
  return out;
}

}  // namespace burnett
