#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "burnett/types.hpp"

namespace burnett {

/// q~_k(x) = He_k(x) / sqrt(k!): probabilists' Hermite polynomials normalized
/// to an orthonormal family under the standard Gaussian density.
double hermite_normalized(int k, double x);
void hermite_normalized_all(int kmax, double x, double* out);

/// Degree-graded set of 3-D Hermite multi-indices gamma with |gamma| <= M:
/// grouped by total degree ascending, lexicographic (g0 desc) within a degree.
class HermiteMap {
 public:
  explicit HermiteMap(int M);

  int M() const { return M_; }
  int size() const { return static_cast<int>(list_.size()); }
  const std::vector<std::array<int, 3>>& list() const { return list_; }
  const std::array<int, 3>& operator[](int i) const { return list_[i]; }

  /// Flat position of (g0, g1, g2); -1 if out of range.
  int find(int g0, int g1, int g2) const;
  /// First flat position with total degree d (== size() when d == M+1).
  int degree_offset(int d) const { return offset_[d]; }

 private:
  int M_ = -1;
  std::vector<std::array<int, 3>> list_;
  std::vector<int> offset_;
};

/// Table of the rotation expansion
///   q~_a((x+y)/sqrt2) q~_b((x-y)/sqrt2) = sum_k coef(a,b,k) q~_k(x) q~_{a+b-k}(y),
/// which is exactly supported on pairs (k, a+b-k) of total degree a+b.
class PairTransform {
 public:
  explicit PairTransform(int amax);

  int amax() const { return amax_; }
  double coef(int a, int b, int k) const { return table_[a][b][k]; }
  const std::vector<double>& row(int a, int b) const { return table_[a][b]; }

 private:
  int amax_ = -1;
  std::vector<std::vector<std::vector<double>>> table_;  // [a][b][k], k <= a+b
};

/// Per-degree unitary change of basis between the two orthonormal families at
/// u_bar = 0, theta_bar = 1: blocks[d](gamma_row, burnett_col) =
/// integral q~_gamma(v) p_{lmn}(v) M(v) dv over indices of total degree d, so
/// Hermite coefficients are h = U f and Burnett coefficients f = U^dagger h.
/// Rows follow HermiteMap order within degree d; columns follow burnett_degree_positions.
std::vector<Eigen::MatrixXcd> burnett_hermite_blocks(int M);

/// Flat IndexMap positions of the Burnett members with l + 2n == d, in the
/// column order used by burnett_hermite_blocks (l ascending, m ascending).
std::vector<std::vector<int>> burnett_degree_positions(const IndexMap& map);

/// Transform canonical Burnett coefficients to degree-graded Hermite
/// coefficients (and back). Both directions are exact basis changes.
Eigen::VectorXcd burnett_to_hermite(const IndexMap& map, const HermiteMap& hmap,
                                    const std::vector<Eigen::MatrixXcd>& blocks,
                                    const Eigen::VectorXcd& coef);
Eigen::VectorXcd hermite_to_burnett(const IndexMap& map, const HermiteMap& hmap,
                                    const std::vector<Eigen::MatrixXcd>& blocks,
                                    const Eigen::VectorXcd& hcoef);

}  // namespace burnett
