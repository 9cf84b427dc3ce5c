#include <algorithm>
#include <cmath>

#include "burnett/basis.hpp"
#include "burnett/coeffs.hpp"
#include "burnett/hermite.hpp"
#include "burnett/parallel.hpp"

namespace burnett {

namespace {

/// Column offset of the (l, m = -l) member inside a degree-d block of the
/// change-of-basis matrices (columns are ordered l ascending, m ascending).
int degree_col_base(int d, int l) {
  int c = 0;
  for (int lp = d % 2; lp < l; lp += 2) c += 2 * lp + 1;
  return c;
}

}  // namespace

CollisionTensor collision_tensor(int M_cap, double nu, int workers) {
  if (M_cap < 3) throw config_error("collision_tensor: degree cap must be >= 3");
  if (M_cap > 12)
    throw config_error("collision_tensor: degree cap above 12 is not supported");

  const int M2 = 2 * M_cap;
  const HermiteMap hmap(M2);
  const PairTransform t1(M_cap);
  const std::vector<Eigen::MatrixXcd> U = burnett_hermite_blocks(M2);
  const IndexMap map(M_cap);
  const std::vector<std::vector<int>> degpos = burnett_degree_positions(map);

  // Relative-velocity kernel matrix: rows are test-side Hermite indices of
  // degree <= M_cap, columns trial-side indices of degree <= 2 M_cap. Each
  // same-(l, m) mode pair couples through the isotropic scattering factor
  // kappa(l) (zero for l = 0 and odd l, -8 pi for even l >= 2) and the
  // radial speed-power integral.
  const int nrow = hmap.degree_offset(M_cap + 1);
  const int ncol = hmap.degree_offset(M2 + 1);
  Eigen::MatrixXd Xi = Eigen::MatrixXd::Zero(nrow, ncol);
  const double pref_r = std::pow(2.0 * M_PI, -1.5);
  for (int d2 = 0; d2 <= M_cap; d2 += 2)
    for (int e2 = 0; e2 <= M2; e2 += 2) {
      const int o2 = hmap.degree_offset(d2), n2 = hmap.degree_offset(d2 + 1) - o2;
      const int oe = hmap.degree_offset(e2), ne = hmap.degree_offset(e2 + 1) - oe;
      Eigen::MatrixXcd blk = Eigen::MatrixXcd::Zero(n2, ne);
      for (int l = 2; l <= std::min(d2, e2); l += 2) {
        const int n = (d2 - l) / 2, np = (e2 - l) / 2;
        const double R = basis_norm(l, n) * basis_norm(l, np) * pref_r *
                         std::pow(2.0, l + 0.5 * (nu + 1.0)) *
                         detail::laguerre_exp_integral(l + 0.5, 0.5 * nu, n, np);
        blk.noalias() += (-8.0 * M_PI * R) *
                         U[d2].middleCols(degree_col_base(d2, l), 2 * l + 1).conjugate() *
                         U[e2].middleCols(degree_col_base(e2, l), 2 * l + 1).transpose();
      }
      if (blk.imag().cwiseAbs().maxCoeff() > 1e-10)
        throw numerical_error("collision_tensor: non-real kernel block");
      Xi.block(o2, oe, n2, ne) = blk.real();
    }

  CollisionTensor T;
  T.M_cap = M_cap;
  T.nu = nu;
  std::vector<std::vector<TensorEntry>> by_bucket(M_cap + 1);
  const double c_sym = 0.5 * std::pow(2.0, 0.5 * nu);

  for (int da = 0; da <= M_cap; ++da)
    for (int db = da; db <= M_cap; ++db) {
      const int oa = hmap.degree_offset(da), na = hmap.degree_offset(da + 1) - oa;
      const int ob = hmap.degree_offset(db), nb = hmap.degree_offset(db + 1) - ob;
      const int ng = hmap.degree_offset(M_cap + 1);

      // Hermite-side tensor for this trial degree pair: TH(gamma, (a, b)) is
      // the weak-form value with test function q~_gamma and trial pair
      // q~_alpha q~_beta. Split both sides into center-of-mass and relative
      // coordinates with the pair transform; the center-of-mass legs collapse
      // by orthonormality onto a shared split index gamma1.
      Eigen::MatrixXd TH = Eigen::MatrixXd::Zero(ng, na * nb);
      parallel_for(static_cast<std::int64_t>(na) * nb, workers, [&](std::int64_t j) {
        const int ia = static_cast<int>(j / nb), ib = static_cast<int>(j % nb);
        const auto& al = hmap[oa + ia];
        const auto& be = hmap[ob + ib];
        double* col = TH.col(j).data();
        for (int k0 = 0; k0 <= al[0] + be[0]; ++k0)
          for (int k1 = 0; k1 <= al[1] + be[1]; ++k1)
            for (int k2 = 0; k2 <= al[2] + be[2]; ++k2) {
              const double w1 = t1.coef(al[0], be[0], k0) *
                                t1.coef(al[1], be[1], k1) *
                                t1.coef(al[2], be[2], k2);
              const int e0 = al[0] + be[0] - k0, e1 = al[1] + be[1] - k1,
                        e2 = al[2] + be[2] - k2;
              if ((e0 + e1 + e2) % 2 != 0) continue;  // kernel column is zero
              const int ecol = hmap.find(e0, e1, e2);
              // gamma >= gamma1 componentwise with per-axis parity matched to
              // the relative-velocity trial index.
              for (int g0 = k0 + e0 % 2; g0 <= M_cap; g0 += 2)
                for (int g1 = k1 + e1 % 2; g0 + g1 <= M_cap; g1 += 2)
                  for (int g2 = k2 + e2 % 2; g0 + g1 + g2 <= M_cap; g2 += 2) {
                    const double w2 = t1.coef(g0, 0, k0) * t1.coef(g1, 0, k1) *
                                      t1.coef(g2, 0, k2);
                    col[hmap.find(g0, g1, g2)] +=
                        c_sym * w1 * w2 *
                        Xi(hmap.find(g0 - k0, g1 - k1, g2 - k2), ecol);
                  }
            }
      });

      for (int dout = (da + db) % 2; dout <= M_cap; dout += 2) {
        const int oo = hmap.degree_offset(dout);
        const int no = hmap.degree_offset(dout + 1) - oo;
        Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(no, na * nb);
        for (int gl = 0; gl < no; ++gl) {
          Eigen::Map<const Eigen::MatrixXd, 0, Eigen::Stride<Eigen::Dynamic, Eigen::Dynamic>>
              THg(TH.data() + (oo + gl), na, nb,
                  Eigen::Stride<Eigen::Dynamic, Eigen::Dynamic>(
                      ng, static_cast<Eigen::Index>(nb) * ng));
          const Eigen::MatrixXcd Y = U[da].transpose() * THg * U[db];
          Eigen::Map<const Eigen::VectorXcd> vecY(Y.data(), Y.size());
          // Y is column-major (a, b); vec index = ia + nA * ib.
          Z.noalias() += U[dout].row(gl).adjoint() * vecY.transpose();
        }

        const int bucket = std::max(dout, db);
        for (int oc = 0; oc < no; ++oc)
          for (int ia = 0; ia < na; ++ia)
            for (int ib = 0; ib < nb; ++ib) {
              const cplx v = Z(oc, ia + static_cast<std::int64_t>(na) * ib);
              const int po = degpos[dout][oc];
              const int pa = degpos[da][ia];
              const int pb = degpos[db][ib];
              if (da == db && pa > pb) continue;
              const BasisIndex& go = map[po];
              const BasisIndex& ga = map[pa];
              const BasisIndex& gb = map[pb];
              if (go.m != ga.m + gb.m) {
                if (std::abs(v) > 1e-10)
                  throw numerical_error("collision_tensor: angular selection rule violated");
                continue;
              }
              if (std::abs(v.imag()) > 1e-10)
                throw numerical_error("collision_tensor: non-real entry");
              if (std::abs(v.real()) < 1e-14) continue;
              if (da == db && pa < pb) {
                const cplx vt = Z(oc, ib + static_cast<std::int64_t>(na) * ia);
                if (std::abs(v - vt) > 1e-10)
                  throw numerical_error("collision_tensor: asymmetric entry pair");
              }
              by_bucket[bucket].push_back(
                  {po, std::min(pa, pb), std::max(pa, pb), v.real()});
            }
      }
    }

  T.degree_offset.assign(M_cap + 2, 0);
  for (int b = 0; b <= M_cap; ++b) {
    T.entries.insert(T.entries.end(), by_bucket[b].begin(), by_bucket[b].end());
    T.degree_offset[b + 1] = static_cast<std::int64_t>(T.entries.size());
  }
  return T;
}

void tensor_apply(const CollisionTensor& Q, int m0, const Eigen::VectorXcd& f,
                  const Eigen::VectorXcd& g, Eigen::VectorXcd& out) {
  if (m0 < 0 || m0 > Q.M_cap)
    throw config_error("tensor_apply: m0 outside the assembled degree range");
  const std::int64_t end = Q.degree_offset[m0 + 1];
  for (std::int64_t i = 0; i < end; ++i) {
    const TensorEntry& e = Q.entries[i];
    if (e.in1 == e.in2)
      out(e.out) += e.value * f(e.in1) * g(e.in1);
    else
      out(e.out) += e.value * (f(e.in1) * g(e.in2) + f(e.in2) * g(e.in1));
  }
}

}  // namespace burnett
