#include <cmath>
#include <random>

#include "doctest.h"

#include "burnett/basis.hpp"
#include "burnett/collision.hpp"
#include "burnett/quadrature.hpp"
#include "support/fields.hpp"

using namespace burnett;
using testsupport::five_invariants;
using testsupport::random_field;

namespace {

const CoeffTables& shared_tables() {
  static const CoeffTables tables = build_coeff_tables(6, 6, 5.0 / 9.0, 6, 4);
  return tables;
}

MomentSet quadrature_moments(const SpectralField& f) {
  const int nq = f.spec.M + 4;
  const Quad1D gh = gauss_hermite(nq);
  const double c = std::sqrt(f.spec.theta_bar);
  double r0 = 0.0;
  Vec3 r1{}, r3{};
  Eigen::Matrix3d r2 = Eigen::Matrix3d::Zero();
  for (int i = 0; i < nq; ++i)
    for (int j = 0; j < nq; ++j)
      for (int k = 0; k < nq; ++k) {
        const Vec3 v{f.spec.u_bar[0] + c * gh.nodes[i],
                     f.spec.u_bar[1] + c * gh.nodes[j],
                     f.spec.u_bar[2] + c * gh.nodes[k]};
        // field value relative to the Maxwellian weight: f = poly * Mbar, and
        // the folded GH weights already integrate against Mbar.
        const double poly =
            field_eval(f, v) / maxwellian_value(f.spec.u_bar, f.spec.theta_bar, v);
        const double w = gh.weights[i] * gh.weights[j] * gh.weights[k] * poly;
        const double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        r0 += w;
        for (int d = 0; d < 3; ++d) {
          r1[d] += w * v[d];
          r3[d] += w * v[d] * v2;
          for (int e = 0; e < 3; ++e) r2(d, e) += w * v[d] * v[e];
        }
      }
  MomentSet out;
  out.rho = r0;
  for (int d = 0; d < 3; ++d) out.u[d] = r1[d] / r0;
  const double u2 = out.u[0] * out.u[0] + out.u[1] * out.u[1] + out.u[2] * out.u[2];
  out.theta = (r2.trace() - r0 * u2) / (3.0 * r0);
  for (int d = 0; d < 3; ++d) {
    double ur2 = 0.0;
    for (int e = 0; e < 3; ++e) {
      out.sigma(d, e) = r2(d, e) - r0 * out.u[d] * out.u[e] -
                        (d == e ? r0 * out.theta : 0.0);
      ur2 += out.u[e] * r2(d, e);
    }
    out.q[d] = 0.5 * (r3[d] - 2.0 * ur2 + 2.0 * r0 * u2 * out.u[d] -
                      out.u[d] * r2.trace());
  }
  return out;
}

}  // namespace

TEST_CASE("moments: unit Maxwellian, round trip, quadrature oracle") {
  BasisSpec spec;
  spec.M = 6;
  spec.u_bar = {0.2, -0.1, 0.05};
  spec.theta_bar = 1.3;

  SUBCASE("pure phi_000 carries the frame moments") {
    SpectralField f(spec);
    f.coef[IndexMap(spec.M).find(0, 0, 0)] = 2.5;
    const MomentSet m = moments(f);
    CHECK(m.rho == doctest::Approx(2.5).epsilon(1e-14));
    for (int d = 0; d < 3; ++d) {
      CHECK(m.u[d] == doctest::Approx(spec.u_bar[d]).epsilon(1e-14));
      CHECK(std::abs(m.q[d]) <= 1e-13);
    }
    CHECK(m.theta == doctest::Approx(spec.theta_bar).epsilon(1e-14));
    CHECK(m.sigma.cwiseAbs().maxCoeff() <= 1e-13);
  }

  SUBCASE("projection round trip") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ur(0.5, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
      const double rho = ur(rng);
      const Vec3 u{ur(rng) - 1.25, ur(rng) - 1.25, ur(rng) - 1.25};
      const double theta = ur(rng);
      const MomentSet m = moments(maxwellian_projection(rho, u, theta, spec));
      CHECK(std::abs(m.rho - rho) <= 1e-12);
      for (int d = 0; d < 3; ++d) CHECK(std::abs(m.u[d] - u[d]) <= 1e-12);
      CHECK(std::abs(m.theta - theta) <= 1e-12);
      CHECK(m.q[0] * m.q[0] + m.q[1] * m.q[1] + m.q[2] * m.q[2] <= 1e-24);
      CHECK(m.sigma.cwiseAbs().maxCoeff() <= 1e-12);
    }
  }

  SUBCASE("random field matches the quadrature oracle") {
    std::mt19937 rng(23);
    const SpectralField f = random_field(spec, rng, 0.2);
    const MomentSet a = moments(f);
    const MomentSet b = quadrature_moments(f);
    CHECK(std::abs(a.rho - b.rho) <= 1e-10);
    CHECK(std::abs(a.theta - b.theta) <= 1e-10);
    for (int d = 0; d < 3; ++d) {
      CHECK(std::abs(a.u[d] - b.u[d]) <= 1e-10);
      CHECK(std::abs(a.q[d] - b.q[d]) <= 1e-10);
    }
    CHECK((a.sigma - b.sigma).cwiseAbs().maxCoeff() <= 1e-10);
  }

  SUBCASE("non-physical state is rejected") {
    SpectralField f(spec);
    f.coef[IndexMap(spec.M).find(0, 0, 0)] = -1.0;
    CHECK_THROWS_AS(moments(f), numerical_error);
  }
}

TEST_CASE("maxwellian_projection: frame fixed point and pointwise accuracy") {
  BasisSpec spec;
  spec.M = 8;

  SUBCASE("frame-matched Maxwellian projects onto the leading basis member") {
    const SpectralField f = maxwellian_projection(1.7, spec.u_bar, spec.theta_bar, spec);
    const IndexMap map(spec.M);
    for (int i = 0; i < map.size(); ++i) {
      const double expect = (i == map.find(0, 0, 0)) ? 1.7 : 0.0;
      CHECK(std::abs(f.coef[i] - expect) <= 1e-14);
    }
  }

  SUBCASE("pointwise convergence toward the analytic Maxwellian") {
    const Vec3 u{0.3, 0.0, 0.0};
    const double theta = 1.2;
    BasisSpec spec16 = spec;
    spec16.M = 16;
    const SpectralField f8 = maxwellian_projection(1.0, u, theta, spec);
    const SpectralField f16 = maxwellian_projection(1.0, u, theta, spec16);
    double err8 = 0.0, err16 = 0.0;
    for (double x : {-1.5, -0.5, 0.0, 0.7, 1.4})
      for (double y : {-1.0, 0.3, 1.1}) {
        const Vec3 v{x, y, 0.25};
        const double exact = maxwellian_value(u, theta, v);
        err8 = std::max(err8, std::abs(field_eval(f8, v) - exact));
        err16 = std::max(err16, std::abs(field_eval(f16, v) - exact));
      }
    CHECK(err16 <= err8);
    CHECK(err8 <= 1e-3);
    CHECK(err16 <= 1e-6);
  }

  SUBCASE("invalid inputs rejected") {
    CHECK_THROWS_AS(maxwellian_projection(-1.0, {0, 0, 0}, 1.0, spec), config_error);
    CHECK_THROWS_AS(maxwellian_projection(1.0, {0, 0, 0}, 0.0, spec), config_error);
  }
}

TEST_CASE("split: losslessness and counting") {
  BasisSpec spec;
  spec.M = 4;
  std::mt19937 rng(5);
  const SpectralField f = random_field(spec, rng);

  SUBCASE("m0 = M leaves the high block empty") {
    const SplitField s = split(f, 4);
    CHECK(s.high.coef.cwiseAbs().maxCoeff() == 0.0);
    CHECK((s.low.coef - f.coef).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("m0 = 3 keeps exactly the 20 coefficients of degree <= 3") {
    const SplitField s = split(f, 3);
    int low_nonzero_slots = 0;
    const IndexMap map(spec.M);
    for (int i = 0; i < map.size(); ++i) {
      if (map[i].degree() <= 3) {
        ++low_nonzero_slots;
        CHECK(s.low.coef[i] == f.coef[i]);
        CHECK(s.high.coef[i] == cplx(0.0, 0.0));
      } else {
        CHECK(s.high.coef[i] == f.coef[i]);
        CHECK(s.low.coef[i] == cplx(0.0, 0.0));
      }
    }
    CHECK(low_nonzero_slots == 20);
    // Bitwise reassembly (complementary zero patterns make + exact).
    CHECK((s.low.coef + s.high.coef - f.coef).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("out-of-range m0 rejected") {
    CHECK_THROWS_AS(split(f, 2), config_error);
    CHECK_THROWS_AS(split(f, 5), config_error);
  }
}

TEST_CASE("hybrid_rhs: fixed point, conservation, micro-macro equivalence") {
  const CoeffTables& tables = shared_tables();
  BasisSpec spec;
  spec.M = 6;
  const double kn = 0.5;
  std::mt19937 rng(31);

  SUBCASE("projected Maxwellians are fixed points") {
    std::uniform_real_distribution<double> ur(0.6, 1.6);
    for (int trial = 0; trial < 20; ++trial) {
      const SpectralField f = maxwellian_projection(
          ur(rng), {ur(rng) - 1.1, ur(rng) - 1.1, ur(rng) - 1.1}, ur(rng), spec);
      for (int m0 : {3, 4, 6}) {
        const SpectralField rhs = hybrid_rhs(f, m0, tables, kn);
        CHECK(rhs.coef.cwiseAbs().maxCoeff() <= 1e-12);
      }
    }
  }

  SUBCASE("five invariants vanish for random states") {
    for (int trial = 0; trial < 100; ++trial) {
      const SpectralField f = random_field(spec, rng, 0.15);
      const double scale = std::max(1.0, f.coef.cwiseAbs().maxCoeff());
      for (int m0 = 3; m0 <= 6; ++m0) {
        const SpectralField rhs = hybrid_rhs(f, m0, tables, kn);
        const auto inv = five_invariants(rhs);
        CHECK(inv.cwiseAbs().maxCoeff() <= 1e-10 * scale);
      }
    }
  }

  SUBCASE("micro-macro form agrees with the direct difference of contractions") {
    const SpectralField f = random_field(spec, rng, 0.1);
    const MomentSet mom = moments(f);
    const SpectralField mx = maxwellian_projection(mom.rho, mom.u, mom.theta, spec);
    for (int m0 : {3, 5, 6}) {
      const SpectralField rhs = hybrid_rhs(f, m0, tables, kn);
      // Direct form: Q:(f1 (x) f1) - Q:(M1 (x) M1) on the low block.
      const IndexMap map(spec.M);
      Eigen::VectorXcd f1 = f.coef, m1 = mx.coef;
      for (int i = 0; i < map.size(); ++i)
        if (map[i].degree() > m0) f1[i] = m1[i] = 0.0;
      Eigen::VectorXcd direct = Eigen::VectorXcd::Zero(map.size());
      tensor_apply(tables.tensor, m0, f1, f1, direct);
      Eigen::VectorXcd mm = Eigen::VectorXcd::Zero(map.size());
      tensor_apply(tables.tensor, m0, m1, m1, mm);
      direct -= mm;
      direct /= kn;
      double low_diff = 0.0;
      for (int i = 0; i < map.size(); ++i)
        if (map[i].degree() <= m0)
          low_diff = std::max(low_diff, std::abs(rhs.coef[i] - direct[i]));
      CHECK(low_diff <= 1e-12);
    }
  }

  SUBCASE("near-equilibrium model error decreases with m0") {
    // Frame-matched base so the quadratic contraction annihilates the local
    // Maxwellian to roundoff and the m0 = M limit recovers the full operator.
    const SpectralField base = maxwellian_projection(1.0, spec.u_bar, spec.theta_bar, spec);
    SpectralField f = random_field(spec, rng, 1e-3);
    f.coef = base.coef + (f.coef - Eigen::VectorXcd::Unit(f.size(), 0));
    const SpectralField ref = full_rhs(f, tables, kn);
    double prev = std::numeric_limits<double>::infinity();
    for (int m0 = 3; m0 <= 6; ++m0) {
      const double err = (hybrid_rhs(f, m0, tables, kn).coef - ref.coef).norm();
      CHECK(err <= prev * (1.0 + 1e-12));
      prev = err;
    }
    CHECK(prev <= 1e-8);  // m0 = M: residue is the truncated-Maxwellian tail
  }

  SUBCASE("anisotropic Gaussian at m0 = M matches full_rhs") {
    // Anisotropic temperatures averaging to the frame temperature, so the
    // local Maxwellian is exactly the leading basis member.
    const auto& ws = detail::basis_workspace(spec.M);
    Eigen::VectorXcd h = Eigen::VectorXcd::Zero(ws.hmap.size());
    const Vec3 th{1.3, 0.9, 0.8};
    std::array<std::vector<double>, 3> r;
    for (int d = 0; d < 3; ++d) {
      r[d].assign(spec.M + 1, 0.0);
      r[d][0] = 1.0;
      for (int k = 2; k <= spec.M; ++k)
        r[d][k] = (th[d] - 1.0) * (k - 1) * r[d][k - 2];
    }
    for (int i = 0; i < ws.hmap.size(); ++i) {
      const auto& g = ws.hmap[i];
      double fact = 1.0;
      for (int d = 0; d < 3; ++d)
        for (int k = 1; k <= g[d]; ++k) fact *= k;
      h[i] = r[0][g[0]] * r[1][g[1]] * r[2][g[2]] / std::sqrt(fact);
    }
    SpectralField f(spec);
    f.coef = hermite_to_burnett(ws.map, ws.hmap, ws.blocks, h);
    const SpectralField hyb = hybrid_rhs(f, spec.M, tables, kn);
    const SpectralField ful = full_rhs(f, tables, kn);
    CHECK((hyb.coef - ful.coef).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("full_rhs: annihilation, rotation, and isotropic relaxation") {
  const CoeffTables& tables = shared_tables();
  BasisSpec spec;
  spec.M = 6;
  const double kn = 1.0;
  const IndexMap map(spec.M);

  SUBCASE("projected Maxwellian annihilated") {
    // Small offsets keep the degree > M tail of the projection below 1e-9;
    // the contraction residual is of the same order as that tail.
    const SpectralField f = maxwellian_projection(1.4, {0.01, -0.005, 0.0}, 1.0025, spec);
    CHECK(full_rhs(f, tables, kn).coef.cwiseAbs().maxCoeff() <= 1e-8);
  }

  SUBCASE("rotation about the frame axis commutes with the operator") {
    std::mt19937 rng(47);
    const SpectralField f = random_field(spec, rng, 0.2);
    const double alpha = 0.7;
    auto rotate = [&](const Eigen::VectorXcd& c) {
      Eigen::VectorXcd out(c.size());
      for (int i = 0; i < map.size(); ++i)
        out[i] = c[i] * std::polar(1.0, map[i].m * alpha);
      return out;
    };
    SpectralField fr(spec);
    fr.coef = rotate(f.coef);
    const Eigen::VectorXcd a = rotate(full_rhs(f, tables, kn).coef);
    const Eigen::VectorXcd b = full_rhs(fr, tables, kn).coef;
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10);
  }

  SUBCASE("isotropic fourth-moment perturbation decays monotonically") {
    SpectralField f(spec);
    f.coef[map.find(0, 0, 0)] = 1.0;
    f.coef[map.find(0, 0, 2)] = 0.3;
    const int pos = map.find(0, 0, 2);
    const double dt = 1e-3;
    double prev = std::abs(f.coef[pos]);
    for (int s = 0; s < 200; ++s) {
      f.coef += dt * full_rhs(f, tables, kn).coef;
      const double cur = std::abs(f.coef[pos]);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}
