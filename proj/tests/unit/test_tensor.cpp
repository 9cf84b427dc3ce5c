#include <cmath>
#include <random>

#include "doctest.h"

#include "burnett/basis.hpp"
#include "burnett/coeffs.hpp"

using namespace burnett;

namespace {

/// Conjugate-symmetric random field with decaying coefficient magnitudes.
Eigen::VectorXcd random_state(const IndexMap& map, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(map.size());
  for (int i = 0; i < map.size(); ++i) {
    const BasisIndex& b = map[i];
    if (b.m < 0) continue;
    const double decay = std::pow(0.4, b.degree());
    const cplx v = b.m == 0 ? cplx(g(rng), 0.0) : cplx(g(rng), g(rng));
    f(i) = decay * v;
    if (b.m > 0) {
      const double sign = (b.m % 2 == 0) ? 1.0 : -1.0;
      f(map.find(b.l, -b.m, b.n)) = sign * std::conj(v) * decay;
    }
  }
  f(map.find(0, 0, 0)) = 1.0;
  return f;
}

}  // namespace

TEST_CASE("collision tensor: invariants, symmetry, and fixed point") {
  const int M = 6;
  const IndexMap map(M);
  std::mt19937 rng(77);

  for (double nu : {0.0, 1.0}) {
    CAPTURE(nu);
    const CollisionTensor T = collision_tensor(M, nu, 2);

    // Ordering contract: entries grouped by max participating degree.
    REQUIRE(static_cast<int>(T.degree_offset.size()) == M + 2);
    for (int b = 0; b <= M; ++b)
      for (std::int64_t i = T.degree_offset[b]; i < T.degree_offset[b + 1]; ++i) {
        const TensorEntry& e = T.entries[i];
        const int bucket = std::max({map[e.out].degree(), map[e.in1].degree(),
                                     map[e.in2].degree()});
        CHECK(bucket == b);
        CHECK(e.in1 <= e.in2);
      }

    // The global Maxwellian is a fixed point: Q(M, M) = 0 entry-wise.
    Eigen::VectorXcd m0 = Eigen::VectorXcd::Zero(map.size());
    m0(map.find(0, 0, 0)) = 1.0;
    Eigen::VectorXcd qm = Eigen::VectorXcd::Zero(map.size());
    tensor_apply(T, M, m0, m0, qm);
    CHECK(qm.cwiseAbs().maxCoeff() <= 1e-13);

    const Eigen::VectorXcd f = random_state(map, rng);
    const Eigen::VectorXcd g = random_state(map, rng);
    Eigen::VectorXcd qfg = Eigen::VectorXcd::Zero(map.size());
    Eigen::VectorXcd qgf = Eigen::VectorXcd::Zero(map.size());
    tensor_apply(T, M, f, g, qfg);
    tensor_apply(T, M, g, f, qgf);
    CHECK((qfg - qgf).cwiseAbs().maxCoeff() <= 1e-13);

    // Mass, momentum, and energy are conserved by the full quadratic term.
    Eigen::VectorXcd qff = Eigen::VectorXcd::Zero(map.size());
    tensor_apply(T, M, f, f, qff);
    const double scale = qff.cwiseAbs().maxCoeff();
    CHECK(std::abs(qff(map.find(0, 0, 0))) <= 1e-10 * scale);
    for (int m = -1; m <= 1; ++m)
      CHECK(std::abs(qff(map.find(1, m, 0))) <= 1e-10 * scale);
    CHECK(std::abs(qff(map.find(0, 0, 1))) <= 1e-10 * scale);

    // The collision term of a conjugate-symmetric state is itself
    // conjugate-symmetric (the operator maps real functions to real ones).
    SpectralField qf;
    qf.spec = BasisSpec{M, {0, 0, 0}, 1.0};
    qf.coef = qff;
    CHECK(conjugate_symmetry_residual(qf) <= 1e-11 * (1.0 + scale));
  }
}

TEST_CASE("collision tensor agrees with the independently built kernel tables") {
  const int M = 6;
  const IndexMap map(M);
  const ProductCoeffTable products = product_coeffs(M, (M + 1) / 2, 2);
  std::mt19937 rng(99);
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (double nu : {0.0, 1.0}) {
    CAPTURE(nu);
    const CollisionTensor T = collision_tensor(M, nu, 2);
    const LinearKernelTable minus =
        linear_kernel_tables(M, nu, SignFamily::minus, products);

    // Isotropic states: the projected quadratic collision term must match the
    // double contraction of the radial kernel table.
    Eigen::VectorXcd f = Eigen::VectorXcd::Zero(map.size());
    std::vector<double> c(map.nmax(0) + 1);
    for (int n = 0; n <= map.nmax(0); ++n) {
      c[n] = gauss(rng) * std::pow(0.5, n);
      f(map.find(0, 0, n)) = c[n];
    }
    Eigen::VectorXcd q = Eigen::VectorXcd::Zero(map.size());
    tensor_apply(T, M, f, f, q);

    for (int k = 0; k <= map.nmax(0); ++k) {
      double want = 0.0;
      for (int n = 0; n <= map.nmax(0); ++n)
        for (int np = 0; np <= std::min(map.nmax(0), minus.N0); ++np)
          want += c[n] * c[np] * minus.get(0, k, n, np);
      CHECK(std::abs(q(map.find(0, 0, k)) - want) <= 1e-10 * (1.0 + std::abs(want)));
    }
    // Rotational invariance: isotropic in, isotropic out.
    for (int i = 0; i < map.size(); ++i)
      if (map[i].l != 0) CHECK(std::abs(q(i)) <= 1e-12);

    // Contracting one basis mode against the unit-Maxwellian background in
    // the symmetric slots reproduces the n' = 0 kernel-table entries exactly:
    // both are projections of the same symmetrized weak form.
    Eigen::VectorXcd bg = Eigen::VectorXcd::Zero(map.size());
    bg(map.find(0, 0, 0)) = 1.0;
    for (const auto& [l, n1] : std::vector<std::pair<int, int>>{{2, 0}, {1, 1}, {3, 0}}) {
      Eigen::VectorXcd d = Eigen::VectorXcd::Zero(map.size());
      d(map.find(l, 0, n1)) = 1.0;
      Eigen::VectorXcd lin = Eigen::VectorXcd::Zero(map.size());
      tensor_apply(T, M, d, bg, lin);  // symmetric slots: (Q(d,bg)+Q(bg,d))/2
      for (int n = 0; n <= map.nmax(l); ++n) {
        const double want = minus.get(l, n, n1, 0);
        CAPTURE(l);
        CAPTURE(n);
        CAPTURE(n1);
        CHECK(std::abs(lin(map.find(l, 0, n)) - want)
              <= 1e-9 * (1.0 + std::abs(want)));
      }
    }
  }
}
