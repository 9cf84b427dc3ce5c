#pragma once

#include "burnett/coeffs.hpp"
#include "burnett/hermite.hpp"
#include "burnett/types.hpp"

namespace burnett {

/// First thirteen velocity moments of a distribution: density, bulk velocity,
/// temperature, heat flux, and the symmetric traceless stress deviator.
struct MomentSet {
  double rho = 0.0;
  Vec3 u{0.0, 0.0, 0.0};
  double theta = 0.0;
  Vec3 q{0.0, 0.0, 0.0};
  Eigen::Matrix3d sigma = Eigen::Matrix3d::Zero();
};

/// Extract (rho, u, theta, q, sigma) from the low-degree coefficients.
/// Throws numerical_error when rho <= 0 or theta <= 0.
MomentSet moments(const SpectralField& f);

/// Coefficient vector of the degree-M projection of the Maxwellian with the
/// given density, bulk velocity, and temperature; exact (the projection
/// integrals are closed-form), and the first five moments of the result
/// equal (rho, u, theta) exactly. Throws config_error unless rho, theta > 0.
SpectralField maxwellian_projection(double rho, const Vec3& u, double theta,
                                    const BasisSpec& spec);

/// Lossless split at degree m0: `low` holds exactly the coefficients of total
/// degree <= m0, `high` the complement; low.coef + high.coef == f.coef.
struct SplitField {
  SpectralField low;
  SpectralField high;
  int m0 = 0;
};

SplitField split(const SpectralField& f, int m0);

/// Collision right-hand side of the hybrid model: quadratic collisions on the
/// degree <= m0 block (evaluated in micro-macro form around the local
/// Maxwellian), relaxation at the state-scaled rate nu_{m0} toward the local
/// Maxwellian on the complement, the whole scaled by 1/kn.
SpectralField hybrid_rhs(const SpectralField& f, int m0, const CoeffTables& tables,
                         double kn);

/// Full quadratic collision right-hand side (1/kn) Q : (f (x) f) at degree M;
/// requires the tensor to cover degree M.
SpectralField full_rhs(const SpectralField& f, const CoeffTables& tables, double kn);

namespace detail {

/// Shared per-M basis machinery at the unit frame, built once and cached.
struct BasisWorkspace {
  explicit BasisWorkspace(int M) : map(M), hmap(M) {}
  IndexMap map;
  HermiteMap hmap;
  std::vector<Eigen::MatrixXcd> blocks;     // Hermite <-> Burnett, per degree
  std::vector<std::vector<int>> degpos;     // flat positions per degree
};

const BasisWorkspace& basis_workspace(int M);

/// Flat positions in IndexMap(M) of the members of IndexMap(M_cap), in
/// M_cap-canonical order (the tensor's index convention).
const std::vector<int>& tensor_permutation(int M, int M_cap);

}  // namespace detail

}  // namespace burnett
