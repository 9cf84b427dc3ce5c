#include <cmath>
#include <numbers>

#include "burnett/quadrature.hpp"
#include "doctest.h"

using namespace burnett;

namespace {

double gaussian_moment(int k) {  // E[x^k] for x ~ N(0,1)
  if (k % 2 == 1) return 0.0;
  double m = 1.0;
  for (int j = k - 1; j > 1; j -= 2) m *= j;
  return m;
}

double sphere_monomial(int a, int b, int c) {
  // Integral of x^a y^b z^c over the unit sphere (surface measure).
  if (a % 2 || b % 2 || c % 2) return 0.0;
  auto dfac = [](int k) {
    double r = 1.0;
    for (int j = k; j > 1; j -= 2) r *= j;
    return r;
  };
  return 4.0 * std::numbers::pi * dfac(a - 1) * dfac(b - 1) * dfac(c - 1) /
         dfac(a + b + c + 1);
}

double apply(const SphereRule& r, int a, int b, int c) {
  double s = 0.0;
  for (size_t i = 0; i < r.nodes.size(); ++i)
    s += r.weights[i] * std::pow(r.nodes[i][0], a) * std::pow(r.nodes[i][1], b) *
         std::pow(r.nodes[i][2], c);
  return s;
}

}  // namespace

TEST_CASE("gauss_hermite integrates Gaussian moments exactly") {
  Quad1D q3 = gauss_hermite(3);
  double x4 = 0.0;
  for (int i = 0; i < 3; ++i) x4 += q3.weights[i] * std::pow(q3.nodes[i], 4);
  CHECK(x4 == doctest::Approx(3.0).epsilon(1e-13));

  for (int n : {1, 2, 5, 12, 25}) {
    Quad1D q = gauss_hermite(n);
    double wsum = 0.0;
    for (double w : q.weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-13));
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0, scale = 1.0;
      for (int i = 0; i < n; ++i) {
        const double t = q.weights[i] * std::pow(q.nodes[i], k);
        s += t;
        scale += std::abs(t);
      }
      CHECK(std::abs(s - gaussian_moment(k)) < 1e-12 * scale);
    }
    // exact +/- symmetry
    for (int i = 0; i < n / 2; ++i) {
      CHECK(q.nodes[i] == -q.nodes[n - 1 - i]);
      CHECK(q.weights[i] == q.weights[n - 1 - i]);
    }
  }
}

TEST_CASE("gauss_laguerre matches Gamma-function moments") {
  for (double alpha : {0.0, 0.5, 2.5}) {
    const int n = 8;
    Quad1D q = gauss_laguerre(n, alpha);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += q.weights[i] * std::pow(q.nodes[i], k);
      const double exact = std::tgamma(alpha + k + 1.0);
      CHECK(s == doctest::Approx(exact).epsilon(1e-11));
    }
  }
}

TEST_CASE("gauss_legendre on an interval") {
  Quad1D q = gauss_legendre(4, 0.0, 2.0);
  double s3 = 0.0, s7 = 0.0;
  for (int i = 0; i < 4; ++i) {
    s3 += q.weights[i] * std::pow(q.nodes[i], 3);
    s7 += q.weights[i] * std::pow(q.nodes[i], 7);
  }
  CHECK(s3 == doctest::Approx(4.0).epsilon(1e-13));       // 2^4/4
  CHECK(s7 == doctest::Approx(32.0).epsilon(1e-13));      // 2^8/8
}

TEST_CASE("lebedev_50 is exact through polynomial degree 11") {
  const SphereRule& r = lebedev_50();
  CHECK(r.nodes.size() == 50);
  double wsum = 0.0;
  for (double w : r.weights) wsum += w;
  CHECK(wsum == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-14));
  for (int a = 0; a <= 11; ++a)
    for (int b = 0; a + b <= 11; ++b)
      for (int c = 0; a + b + c <= 11; ++c)
        CHECK(std::abs(apply(r, a, b, c) - sphere_monomial(a, b, c)) < 1e-12);
}

TEST_CASE("sphere_product_rule exactness and dense rule sanity") {
  SphereRule pr = sphere_product_rule(8, 17);
  for (int a = 0; a <= 10; ++a)
    for (int b = 0; a + b <= 10; ++b)
      for (int c = 0; a + b + c <= 10; ++c)
        CHECK(std::abs(apply(pr, a, b, c) - sphere_monomial(a, b, c)) < 1e-11);

  SphereRule ur = uniform_sphere_dense(4000);
  double wsum = 0.0;
  for (double w : ur.weights) wsum += w;
  CHECK(wsum == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-13));
  CHECK(apply(ur, 0, 0, 2) ==
        doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-3));
}

TEST_CASE("hermite_largest_zero") {
  CHECK(hermite_largest_zero(1) == 0.0);
  CHECK(hermite_largest_zero(2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hermite_largest_zero(3) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  double prev = 0.0;
  for (int d = 1; d <= 15; ++d) {
    double z = hermite_largest_zero(d);
    CHECK(z >= prev);
    prev = z;
  }
}
