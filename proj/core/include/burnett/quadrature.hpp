#pragma once

#include <vector>

#include "burnett/types.hpp"

namespace burnett {

/// Nodes/weights of a 1-D rule. gauss_hermite weights include the Gaussian
/// density, i.e. sum w_i f(x_i) ~ integral f(x) exp(-x^2/2)/sqrt(2 pi) dx.
struct Quad1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Points on the unit sphere with weights; weights sum to 4*pi (surface measure).
struct SphereRule {
  std::vector<Vec3> nodes;
  std::vector<double> weights;
};

/// Probabilists' Gauss-Hermite rule with n nodes (exact through degree 2n-1
/// against the standard Gaussian density).
Quad1D gauss_hermite(int n);

/// Generalized Gauss-Laguerre rule: sum w_i f(x_i) ~ integral_0^inf f(x) x^alpha e^-x dx.
Quad1D gauss_laguerre(int n, double alpha);

/// Gauss-Legendre rule on [a, b].
Quad1D gauss_legendre(int n, double a, double b);

/// The standard 50-point Lebedev rule (order-11 exactness).
const SphereRule& lebedev_50();

/// k quasi-uniform (Fibonacci spiral) sphere points, equal weights; oracle use.
SphereRule uniform_sphere_dense(int k);

/// Product Gauss-Legendre(cos theta) x uniform(phi) sphere rule, exact for
/// spherical polynomials of degree <= 2*n_theta - 1 (with n_phi >= 2*n_theta).
SphereRule sphere_product_rule(int n_theta, int n_phi);

/// Largest zero of the probabilists' Hermite polynomial of given degree.
double hermite_largest_zero(int deg);

}  // namespace burnett
