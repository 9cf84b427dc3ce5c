#pragma once

#include "burnett/coeffs.hpp"
#include "burnett/quadrature.hpp"
#include "burnett/types.hpp"

namespace burnett {

/// Coefficients of an isotropic bounding function on the radial members,
/// h(v) = sum_{n'=0}^{N0} h_{n'} phi_{00n'}(v), N0 = ceil(M/2).
struct BoundingFunction {
  std::vector<double> h;

  int N0() const { return static_cast<int>(h.size()) - 1; }
};

/// The two contributions to the modeling-error indicator and their sum.
struct IndicatorReport {
  double term1 = 0.0;
  double term2 = 0.0;
  double total = 0.0;
  int m0_used = 0;
};

/// Per-(l, n) directional maxima g_ln = max over the rule's directions of
/// |sum_m f_{lmn} Y_l^m(n_hat)|. Defaults to the 50-point Lebedev set; a
/// denser rule may be supplied for validation runs.
struct DirectionalMax {
  int M = 0;
  std::vector<std::vector<double>> g;  // g[l][n]
};

DirectionalMax directional_max(const SpectralField& f);
DirectionalMax directional_max(const SpectralField& f, const SphereRule& rule);

/// h_{n'} = sum_{l,n} g_ln s_ln^{n'}.
BoundingFunction bounding_function(const DirectionalMax& g, const ShapeCoeffTable& s);

/// Coefficient block of the positive-part collision operator applied to
/// (f, h): first contracts the kernel tables with h, then the per-(l, m)
/// matrix-vector products over the radial index.
Eigen::VectorXcd qabs_apply(const SpectralField& f, const BoundingFunction& h,
                            const LinearKernelTable& a_plus);

/// Isotropic-pair block: out[n1] = sum_{n,n'} h1_n h2_{n'} a^{n'}_{0nn1}.
Eigen::VectorXd qabs_isotropic_pair(const BoundingFunction& h1,
                                    const BoundingFunction& h2,
                                    const LinearKernelTable& a_plus);

/// Full modeling-error indicator at splitting degree m0: normalizes f to unit
/// mass, bounds the three difference fields, and sums the weighted-L2 norms
/// of the two operator blocks.
IndicatorReport indicator(const SpectralField& f, int m0, const CoeffTables& tables);
IndicatorReport indicator(const SpectralField& f, int m0, const CoeffTables& tables,
                          const SphereRule& rule);

}  // namespace burnett
