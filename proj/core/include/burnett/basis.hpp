#pragma once

#include "burnett/quadrature.hpp"
#include "burnett/types.hpp"

namespace burnett {

/// Generalized Laguerre polynomial L_n^(alpha)(x) by the three-term recurrence.
double laguerre(int n, double alpha, double x);

/// All of L_0..L_nmax^(alpha)(x) in one pass.
void laguerre_all(int nmax, double alpha, double x, double* out);

/// Orthonormal complex spherical harmonic with Condon-Shortley phase.
/// Throws config_error if n_hat is not unit length within 1e-12.
cplx spherical_harmonic(int l, int m, const Vec3& n_hat);

/// Table of Y_l^m for all l <= L, |m| <= l at one direction; layout
/// out[l*(l+1) + m] (no degree gaps). No unit-length check (internal hot path).
void spherical_harmonic_all(int L, const Vec3& n_hat, cplx* out);

/// Normalization constant N_{ln} = sqrt(2^{1-l} pi^{3/2} n! / Gamma(n+l+3/2)).
double basis_norm(int l, int n);

/// Radial factor of the basis function (the full phi is radial * Y_l^m):
///   N_{ln} L_n^{(l+1/2)}(r^2/(2 theta)) (r/sqrt(theta))^l (2 pi theta)^{-3/2} exp(-r^2/(2 theta)).
double phi_radial(int l, int n, double r, double theta_bar);

/// phi_{lmn}(v) = phi0_{lmn}(v - u_bar) for the given spec.
cplx phi_eval(const BasisSpec& spec, const BasisIndex& idx, const Vec3& v);

/// Polynomial part p_{lmn}(v) = phi_{lmn}(v) / Maxwellian(v); degree l+2n.
cplx p_eval(const BasisSpec& spec, const BasisIndex& idx, const Vec3& v);

/// Evaluate all p_{lmn}(v) over the canonical index set in one pass.
void p_eval_all(const BasisSpec& spec, const IndexMap& map, const Vec3& v, cplx* out);

/// Unit-mass Maxwellian density (2 pi theta)^{-3/2} exp(-|v-u|^2/(2 theta)).
double maxwellian_value(const Vec3& u, double theta, const Vec3& v);

/// Real value of the truncated series sum f_{lmn} phi_{lmn}(v).
/// Throws numerical_error when the imaginary residue exceeds
/// 1e-10 * |real| + 1e-14 (violated conjugate symmetry).
double field_eval(const SpectralField& f, const Vec3& v);

}  // namespace burnett
