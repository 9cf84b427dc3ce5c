#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace burnett {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

/// Error categories surfaced by the library; the CLI maps these to exit codes.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct cache_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct calibration_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Global basis description: maximum total degree M, center u_bar and
/// velocity-space scale theta_bar of the weight exp(-|v-u_bar|^2 / 2 theta_bar).
struct BasisSpec {
  int M = 3;
  Vec3 u_bar{0.0, 0.0, 0.0};
  double theta_bar = 1.0;

  bool operator==(const BasisSpec&) const = default;
  void validate() const {
    if (M < 3) throw config_error("BasisSpec: M must be >= 3");
    if (!(theta_bar > 0.0)) throw config_error("BasisSpec: theta_bar must be > 0");
  }
};

/// One member of the Laguerre x spherical-harmonic index set.
/// Total polynomial degree of the member is l + 2n.
struct BasisIndex {
  int l = 0;
  int m = 0;
  int n = 0;

  int degree() const { return l + 2 * n; }
  bool operator==(const BasisIndex&) const = default;
};

/// Number of indices (l, m, n) with l + 2n <= M.
inline long index_count(int M) {
  return static_cast<long>(M + 1) * (M + 2) * (M + 3) / 6;
}

/// Canonically ordered index set: l ascending, then n ascending, then m ascending.
std::vector<BasisIndex> basis_index_set(int M);

/// Bidirectional map between BasisIndex and the canonical flat position.
class IndexMap {
 public:
  IndexMap() = default;
  explicit IndexMap(int M);

  int M() const { return M_; }
  int size() const { return static_cast<int>(list_.size()); }
  const std::vector<BasisIndex>& list() const { return list_; }
  const BasisIndex& operator[](int i) const { return list_[i]; }

  /// Flat position of (l, m, n); -1 if out of range.
  int find(int l, int m, int n) const;
  int find(const BasisIndex& b) const { return find(b.l, b.m, b.n); }

  /// First flat position with total degree > d (positions are not sorted by
  /// degree, so this is a per-(l,n) helper; see degree_ordered()).
  int nmax(int l) const { return (M_ - l) / 2; }

 private:
  int M_ = -1;
  std::vector<BasisIndex> list_;
  std::vector<int> offset_l_;  // start of each l block
};

/// Coefficient vector over the canonical index set of one BasisSpec.
struct SpectralField {
  BasisSpec spec;
  Eigen::VectorXcd coef;

  SpectralField() = default;
  explicit SpectralField(const BasisSpec& s)
      : spec(s), coef(Eigen::VectorXcd::Zero(index_count(s.M))) {}

  int size() const { return static_cast<int>(coef.size()); }
};

/// Max deviation from the conjugate symmetry f_{l,-m,n} = (-1)^m conj(f_{l,m,n})
/// that physically meaningful fields satisfy.
double conjugate_symmetry_residual(const SpectralField& f);

}  // namespace burnett
