#include "burnett/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace burnett {

namespace {

/// Golub-Welsch: nodes/weights for the orthogonal polynomials with Jacobi
/// recurrence coefficients (diag a_i, offdiag b_i), total weight mass mu0.
Quad1D golub_welsch(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double mu0) {
  const int n = static_cast<int>(a.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = a[i];
    if (i + 1 < n) J(i, i + 1) = J(i + 1, i) = b[i + 1];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Quad1D q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    q.nodes[i] = es.eigenvalues()[i];
    const double v0 = es.eigenvectors()(0, i);
    q.weights[i] = mu0 * v0 * v0;
  }
  return q;
}

}  // namespace

namespace {

/// He_n(x) and He_{n-1}(x) (monic, probabilists') by the three-term recurrence.
std::pair<double, double> hermite_pair(int n, double x) {
  double prev = 0.0, cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

}  // namespace

Quad1D gauss_hermite(int n) {
  if (n < 1) throw config_error("gauss_hermite: n must be >= 1");
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n), b = Eigen::VectorXd::Zero(n);
  for (int i = 1; i < n; ++i) b[i] = std::sqrt(static_cast<double>(i));
  Quad1D q = golub_welsch(a, b, 1.0);
  // Polish each eigenvalue with Newton on He_n (He_n' = n He_{n-1}); the raw
  // eigensolve is only ~1e-14 accurate, which high-degree moments amplify.
  // Weights from the monic closed form w_i = (n-1)! / (n He_{n-1}(x_i)^2),
  // normalized so they sum to exactly 1.
  const double log_nm1_fac = std::lgamma(static_cast<double>(n));
  double wsum = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = q.nodes[i];
    for (int it = 0; it < 4; ++it) {
      auto [hn, hnm1] = hermite_pair(n, x);
      const double dx = hn / (n * hnm1);
      x -= dx;
      if (std::abs(dx) < 1e-15 * (1.0 + std::abs(x))) break;
    }
    q.nodes[i] = x;
    const double hnm1 = hermite_pair(n, x).second;
    q.weights[i] = std::exp(log_nm1_fac - std::log(static_cast<double>(n)) -
                            2.0 * std::log(std::abs(hnm1)));
    wsum += q.weights[i];
  }
  for (double& w : q.weights) w /= wsum;
  // Enforce exact +/- symmetry (bitwise reproducible, unbiased odd moments).
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double x = 0.5 * (q.nodes[j] - q.nodes[i]);
    const double w = 0.5 * (q.weights[i] + q.weights[j]);
    q.nodes[i] = -x;
    q.nodes[j] = x;
    q.weights[i] = q.weights[j] = w;
  }
  if (n % 2 == 1) q.nodes[n / 2] = 0.0;
  return q;
}

Quad1D gauss_laguerre(int n, double alpha) {
  if (n < 1) throw config_error("gauss_laguerre: n must be >= 1");
  if (!(alpha > -1.0)) throw config_error("gauss_laguerre: alpha must be > -1");
  Eigen::VectorXd a(n), b = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) a[i] = 2.0 * i + alpha + 1.0;
  for (int i = 1; i < n; ++i) b[i] = std::sqrt(i * (i + alpha));
  return golub_welsch(a, b, std::tgamma(alpha + 1.0));
}

Quad1D gauss_legendre(int n, double lo, double hi) {
  if (n < 1) throw config_error("gauss_legendre: n must be >= 1");
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n), b = Eigen::VectorXd::Zero(n);
  for (int i = 1; i < n; ++i) b[i] = i / std::sqrt(4.0 * i * i - 1.0);
  Quad1D q = golub_welsch(a, b, 2.0);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (int i = 0; i < n; ++i) {
    q.nodes[i] = mid + half * q.nodes[i];
    q.weights[i] *= half;
  }
  return q;
}

namespace {

void add_point(SphereRule& r, double x, double y, double z, double w) {
  r.nodes.push_back({x, y, z});
  r.weights.push_back(w);
}

SphereRule build_lebedev_50() {
  // Standard order-11 Lebedev set: 6 vertex points, 12 edge-midpoint points,
  // 8 cube-corner points and one 24-point (a,a,b) orbit with a = 1/sqrt(11).
  // Weights below are the exact rationals over the unit measure; the rule is
  // returned with weights scaled to sum to 4*pi.
  SphereRule r;
  const double w1 = 4.0 / 315.0;
  const double w2 = 64.0 / 2835.0;
  const double w3 = 27.0 / 1280.0;
  const double w4 = 14641.0 / 725760.0;
  for (int s = -1; s <= 1; s += 2) {
    add_point(r, s, 0, 0, w1);
    add_point(r, 0, s, 0, w1);
    add_point(r, 0, 0, s, w1);
  }
  const double e = 1.0 / std::numbers::sqrt2;
  for (int s1 = -1; s1 <= 1; s1 += 2)
    for (int s2 = -1; s2 <= 1; s2 += 2) {
      add_point(r, s1 * e, s2 * e, 0, w2);
      add_point(r, s1 * e, 0, s2 * e, w2);
      add_point(r, 0, s1 * e, s2 * e, w2);
    }
  const double c = 1.0 / std::sqrt(3.0);
  for (int s1 = -1; s1 <= 1; s1 += 2)
    for (int s2 = -1; s2 <= 1; s2 += 2)
      for (int s3 = -1; s3 <= 1; s3 += 2) add_point(r, s1 * c, s2 * c, s3 * c, w3);
  const double a = 1.0 / std::sqrt(11.0);
  const double b = 3.0 / std::sqrt(11.0);
  for (int s1 = -1; s1 <= 1; s1 += 2)
    for (int s2 = -1; s2 <= 1; s2 += 2)
      for (int s3 = -1; s3 <= 1; s3 += 2) {
        add_point(r, s1 * a, s2 * a, s3 * b, w4);
        add_point(r, s1 * a, s3 * b, s2 * a, w4);
        add_point(r, s3 * b, s1 * a, s2 * a, w4);
      }
  const double four_pi = 4.0 * std::numbers::pi;
  for (double& w : r.weights) w *= four_pi;
  return r;
}

}  // namespace

const SphereRule& lebedev_50() {
  static const SphereRule rule = build_lebedev_50();
  return rule;
}

SphereRule uniform_sphere_dense(int k) {
  if (k < 1) throw config_error("uniform_sphere_dense: k must be >= 1");
  SphereRule r;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double w = 4.0 * std::numbers::pi / k;
  for (int i = 0; i < k; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / k;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    add_point(r, rho * std::cos(phi), rho * std::sin(phi), z, w);
  }
  return r;
}

SphereRule sphere_product_rule(int n_theta, int n_phi) {
  SphereRule r;
  Quad1D gl = gauss_legendre(n_theta, -1.0, 1.0);
  const double wphi = 2.0 * std::numbers::pi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double ct = gl.nodes[i];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = (2.0 * std::numbers::pi * j) / n_phi;
      add_point(r, st * std::cos(phi), st * std::sin(phi), ct, gl.weights[i] * wphi);
    }
  }
  return r;
}

double hermite_largest_zero(int deg) {
  if (deg < 1) throw config_error("hermite_largest_zero: deg must be >= 1");
  if (deg == 1) return 0.0;
  Quad1D q = gauss_hermite(deg);
  return q.nodes.back();
}

}  // namespace burnett
