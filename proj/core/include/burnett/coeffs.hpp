#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "burnett/types.hpp"

namespace burnett {

/// Generalized binomial coefficient (s choose k) via the Gamma-ratio
/// definition, with the poles of Gamma(s - k + 1) giving exact zeros
/// (e.g. k > s for integer s >= 0).
double generalized_binomial(double s, int k);

enum class SignFamily { plus, minus };

/// Closed form of the VHS chi/radial integral (plus family):
///   (-1)^{n2+n2'} 2^{nu+1} (delta_{0,l2} + 1) Gamma(l2 + 1 + (nu+1)/2)
///   * sum_k (nu/2 choose n2-k)(nu/2 choose n2'-k)(k + l2 + (nu+1)/2 choose k),
/// with the theta_bar^{nu/2} prefactor omitted. At nu = 0 this reduces to
/// 2 (delta_{0,l2} + 1) Gamma(n2 + l2 + 3/2) / n2! * delta_{n2,n2'}.
double radial_vhs_integral(int l2, int n2, int n2p, double nu);

/// Same with the Legendre-mode constant (delta_{0,l2} - 1) of the true
/// collision operator (minus family) in place of (delta_{0,l2} + 1).
double radial_vhs_integral_family(int l2, int n2, int n2p, double nu, SignFamily family);

/// Packed sparse key for one product-expansion entry (l1, l2, m2, n2).
std::uint64_t product_key(int l1, int l2, int m2, int n2);

/// One (l, n, n') table of product-expansion coefficients A, sparse over
/// (l1, l2, m2, n2), sorted by packed key.
struct ProductLayer {
  std::vector<std::pair<std::uint64_t, double>> entries;

  double get(int l1, int l2, int m2, int n2) const;
};

/// All product-expansion tables (l, n, n') with l + 2n <= M and n' <= N0.
class ProductCoeffTable {
 public:
  ProductCoeffTable() = default;

  int M() const { return M_; }
  int N0() const { return N0_; }
  bool has_layer(int l, int n, int np) const { return layer_index(l, n, np) >= 0; }
  const ProductLayer& layer(int l, int n, int np) const;
  double get(int l, int n, int np, int l1, int l2, int m2, int n2) const;

 private:
  friend ProductCoeffTable product_coeffs(int, int, int);
  friend void cache_read_products(ProductCoeffTable&, int, int,
                                  std::vector<ProductLayer>&&);
  int layer_index(int l, int n, int np) const;

  int M_ = -1;
  int N0_ = -1;
  std::vector<ProductLayer> layers_;
  std::vector<int> layer_pos_;  // dense (l, n, np) -> index into layers_
};

/// Build all product-expansion tables: the n' = 0 layers exactly via the
/// Hermite pair-transform factorization, higher n' by the recurrence.
ProductCoeffTable product_coeffs(int M, int N0, int workers = 1);

/// Independent validation path for one (l, n, n') layer: direct 6-D
/// tensorized Gauss-Hermite quadrature of the defining orthogonality
/// integral, with the Maxwellian-product weight in the (sqrt2 h, g/sqrt2)
/// variables. Exact up to roundoff; intended for l + 2(n + n') <= 12.
ProductLayer product_coeffs_oracle(int l, int n, int np);

/// Linear-kernel coefficients a_{lnn1}^{n'} for one sign family.
/// Index roles follow the defining integral: n is the test (output) index,
/// n1 the trial (input) index; n' <= N0 = ceil(M/2).
struct LinearKernelTable {
  SignFamily family = SignFamily::plus;
  double nu = 0.0;
  int M = 0;
  int N0 = 0;
  std::vector<std::vector<double>> a;  // per l: [(n * (nmax+1) + n1) * (N0+1) + np]

  int nmax(int l) const { return (M - l) / 2; }
  double get(int l, int n, int n1, int np) const {
    return a[l][(n * (nmax(l) + 1) + n1) * (N0 + 1) + np];
  }
};

LinearKernelTable linear_kernel_tables(int M, double nu, SignFamily family,
                                       const ProductCoeffTable& products);

/// Projection coefficients s_{ln}^{n'} of |radial basis part| onto the
/// isotropic members.
struct ShapeCoeffTable {
  int M = 0;
  int N0 = 0;
  std::vector<std::vector<std::vector<double>>> s;  // s[l][n][np]
};

ShapeCoeffTable shape_coeffs(int M);

/// nu[m0] for m0 in [3, M_cap] (indices < 3 are zero): the max over l <= m0
/// of the spectral radius of the minus-family n'=0 block restricted to
/// n, n1 <= (m0 - l)/2, at unit density and theta_bar = 1.
std::vector<double> relaxation_rates(int M_cap, const LinearKernelTable& minus_family);

/// One symmetrized Galerkin entry integral p+_out Q[phi_in1, phi_in2] dv;
/// indices are canonical flat positions, stored with in1 <= in2.
struct TensorEntry {
  std::int32_t out, in1, in2;
  double value;
};

struct CollisionTensor {
  int M_cap = 0;
  double nu = 0.0;
  std::vector<TensorEntry> entries;        // sorted by bucket = max degree of the 3 indices
  std::vector<std::int64_t> degree_offset; // size M_cap+2; bucket <= d ends at degree_offset[d+1]
};

/// Assemble the quadratic collision tensor at theta_bar = 1, u_bar = 0
/// (Galilean invariance; runtime scaling is theta^(nu/2)).
CollisionTensor collision_tensor(int M_cap, double nu, int workers = 1);

/// out += Q_{m0} : sym(f (x) g), contracting only entries whose three indices
/// all have degree <= m0.
void tensor_apply(const CollisionTensor& Q, int m0, const Eigen::VectorXcd& f,
                  const Eigen::VectorXcd& g, Eigen::VectorXcd& out);

/// Galerkin advection matrices <phi_a, v_k phi_b>_omega, stored in the unit
/// frame (u_bar = 0, theta_bar = 1). For k = 0, 2 the unit matrix is real;
/// for k = 1 it is i * A[1] with A[1] real (the complex spherical-harmonic
/// y-coupling is purely imaginary), flagged by imaginary[k]. In an arbitrary
/// frame the action of multiplication by v_k is
///   u_bar_k * I + sqrt(theta_bar) * (i if imaginary[k] else 1) * A[k].
struct AdvectionMatrices {
  int M = 0;
  std::array<Eigen::SparseMatrix<double>, 3> A;
  std::array<bool, 3> imaginary{false, true, false};
};

AdvectionMatrices advection_matrices(int M);

/// Aggregate of every precomputed table a run needs, immutable after build.
struct CoeffTables {
  int M = 0;
  int m0_cap = 0;
  double nu = 0.0;
  ProductCoeffTable products;
  LinearKernelTable a_plus;
  LinearKernelTable a_minus;
  ShapeCoeffTable shapes;
  std::vector<double> nu_m0;
  CollisionTensor tensor;         // assembled to degree tensor_cap
  AdvectionMatrices advection;    // unit frame (u_bar = 0, theta_bar = 1)
};

/// Build everything. tensor_cap (<= 12) bounds the quadratic-tensor degree;
/// pass M itself when full-degree reference right-hand sides are needed.
CoeffTables build_coeff_tables(int M, int m0_cap, double nu, int tensor_cap,
                               int workers = 1);

namespace detail {
/// integral_0^inf L_n^a(x) L_n'^a(x) x^(a+s) e^-x dx
///   = (-1)^(n+n') Gamma(a+s+1) sum_k (s choose n-k)(s choose n'-k)(k+a+s choose k).
double laguerre_exp_integral(double a, double s, int n, int np);
/// Angular coupling factor gamma_lm^mu of the recurrence, by the unified
/// closed form; returns 0 when the radicand is negative (out-of-range modes).
double gamma_lm(int l, int m, int mu);
}  // namespace detail

/// Persist / restore the aggregate. The format is little-endian with a magic
/// string, a format version, a convention hash, and a CRC64 checksum; corrupt
/// files, version mismatches, and checksum failures raise distinct
/// cache_error messages ("cache: missing/corrupt", "cache: version mismatch",
/// "cache: checksum failure", "cache: header mismatch").
void cache_save(const CoeffTables& tables, const std::string& path);
CoeffTables cache_load(const std::string& path);

}  // namespace burnett
