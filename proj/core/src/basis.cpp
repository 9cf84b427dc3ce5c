#include "burnett/basis.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace burnett {

std::vector<BasisIndex> basis_index_set(int M) {
  if (M < 0) throw config_error("basis_index_set: M must be >= 0");
  std::vector<BasisIndex> out;
  out.reserve(static_cast<size_t>(index_count(M)));
  for (int l = 0; l <= M; ++l)
    for (int n = 0; 2 * n + l <= M; ++n)
      for (int m = -l; m <= l; ++m) out.push_back({l, m, n});
  return out;
}

IndexMap::IndexMap(int M) : M_(M), list_(basis_index_set(M)) {
  offset_l_.assign(M + 2, 0);
  for (int i = 0; i < static_cast<int>(list_.size()); ++i)
    if (i == 0 || list_[i].l != list_[i - 1].l) offset_l_[list_[i].l] = i;
  offset_l_[M + 1] = static_cast<int>(list_.size());
}

int IndexMap::find(int l, int m, int n) const {
  if (l < 0 || l > M_ || n < 0 || l + 2 * n > M_ || m < -l || m > l) return -1;
  // Within the l block: n-major, each n holding 2l+1 consecutive m values.
  return offset_l_[l] + n * (2 * l + 1) + (m + l);
}

double conjugate_symmetry_residual(const SpectralField& f) {
  IndexMap map(f.spec.M);
  double worst = 0.0;
  for (int i = 0; i < map.size(); ++i) {
    const BasisIndex& b = map[i];
    if (b.m < 0) continue;
    const int j = map.find(b.l, -b.m, b.n);
    const double sign = (b.m % 2 == 0) ? 1.0 : -1.0;
    worst = std::max(worst, std::abs(f.coef[j] - sign * std::conj(f.coef[i])));
  }
  return worst;
}

double laguerre(int n, double alpha, double x) {
  if (n < 0) throw config_error("laguerre: n must be >= 0");
  if (n == 0) return 1.0;
  double prev = 1.0, cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

void laguerre_all(int nmax, double alpha, double x, double* out) {
  out[0] = 1.0;
  if (nmax == 0) return;
  out[1] = 1.0 + alpha - x;
  for (int k = 1; k < nmax; ++k)
    out[k + 1] = ((2.0 * k + 1.0 + alpha - x) * out[k] - (k + alpha) * out[k - 1]) / (k + 1.0);
}

namespace {

/// Fully normalized associated Legendre table: leg[l][m] for 0 <= m <= l <= L,
/// with Condon-Shortley phase, so Y_l^m = leg * exp(i m phi). ct = cos(theta),
/// st = sin(theta) >= 0. Flat layout leg[l*(l+1)/2 + m].
void normalized_legendre_table(int L, double ct, double st, double* leg) {
  leg[0] = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  for (int m = 1; m <= L; ++m) {
    const int d = m * (m + 1) / 2 + m, dp = (m - 1) * m / 2 + (m - 1);
    leg[d] = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * st * leg[dp];
  }
  for (int m = 0; m < L; ++m) {
    const int d = m * (m + 1) / 2 + m;
    leg[(m + 1) * (m + 2) / 2 + m] = std::sqrt(2.0 * m + 3.0) * ct * leg[d];
  }
  for (int m = 0; m <= L; ++m)
    for (int l = m + 2; l <= L; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
      const double lp = l - 1.0;
      const double b = std::sqrt((lp * lp - m * m) / (4.0 * lp * lp - 1.0));
      leg[l * (l + 1) / 2 + m] =
          a * (ct * leg[(l - 1) * l / 2 + m] - b * leg[(l - 2) * (l - 1) / 2 + m]);
    }
}

}  // namespace

void spherical_harmonic_all(int L, const Vec3& n_hat, cplx* out) {
  const double ct = n_hat[2];
  const double rho = std::hypot(n_hat[0], n_hat[1]);
  // exp(i phi); arbitrary when rho == 0 (all m != 0 harmonics vanish there).
  const cplx eip = rho > 0.0 ? cplx(n_hat[0] / rho, n_hat[1] / rho) : cplx(1.0, 0.0);

  std::vector<double> leg((L + 1) * (L + 2) / 2);
  normalized_legendre_table(L, ct, rho, leg.data());

  std::vector<cplx> eimp(L + 1);
  eimp[0] = 1.0;
  for (int m = 1; m <= L; ++m) eimp[m] = eimp[m - 1] * eip;

  for (int l = 0; l <= L; ++l)
    for (int m = 0; m <= l; ++m) {
      const cplx y = leg[l * (l + 1) / 2 + m] * eimp[m];
      out[l * (l + 1) + m] = y;
      if (m > 0) out[l * (l + 1) - m] = (m % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
    }
}

cplx spherical_harmonic(int l, int m, const Vec3& n_hat) {
  if (l < 0 || std::abs(m) > l) throw config_error("spherical_harmonic: need |m| <= l");
  const double len2 =
      n_hat[0] * n_hat[0] + n_hat[1] * n_hat[1] + n_hat[2] * n_hat[2];
  if (std::abs(len2 - 1.0) > 1e-12)
    throw config_error("spherical_harmonic: direction is not unit length");
  std::vector<cplx> table((l + 1) * (l + 1));
  spherical_harmonic_all(l, n_hat, table.data());
  return table[l * (l + 1) + m];
}

double basis_norm(int l, int n) {
  const double log_n =
      0.5 * ((1.0 - l) * std::numbers::ln2 + 1.5 * std::log(std::numbers::pi) +
             std::lgamma(n + 1.0) - std::lgamma(n + l + 1.5));
  return std::exp(log_n);
}

double maxwellian_value(const Vec3& u, double theta, const Vec3& v) {
  const double dx = v[0] - u[0], dy = v[1] - u[1], dz = v[2] - u[2];
  const double r2 = dx * dx + dy * dy + dz * dz;
  return std::exp(-0.5 * r2 / theta) /
         std::pow(2.0 * std::numbers::pi * theta, 1.5);
}

double phi_radial(int l, int n, double r, double theta_bar) {
  const double x = r * r / (2.0 * theta_bar);
  return basis_norm(l, n) * laguerre(n, l + 0.5, x) *
         std::pow(r / std::sqrt(theta_bar), l) *
         std::exp(-x) / std::pow(2.0 * std::numbers::pi * theta_bar, 1.5);
}

namespace {

struct Polar {
  double r;
  Vec3 dir;
};

Polar to_polar(const BasisSpec& spec, const Vec3& v) {
  const Vec3 c{v[0] - spec.u_bar[0], v[1] - spec.u_bar[1], v[2] - spec.u_bar[2]};
  const double r = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
  if (r == 0.0) return {0.0, {0.0, 0.0, 1.0}};
  return {r, {c[0] / r, c[1] / r, c[2] / r}};
}

}  // namespace

cplx phi_eval(const BasisSpec& spec, const BasisIndex& idx, const Vec3& v) {
  spec.validate();
  const Polar pc = to_polar(spec, v);
  return phi_radial(idx.l, idx.n, pc.r, spec.theta_bar) *
         spherical_harmonic(idx.l, idx.m, pc.dir);
}

cplx p_eval(const BasisSpec& spec, const BasisIndex& idx, const Vec3& v) {
  spec.validate();
  const Polar pc = to_polar(spec, v);
  const double x = pc.r * pc.r / (2.0 * spec.theta_bar);
  return basis_norm(idx.l, idx.n) * laguerre(idx.n, idx.l + 0.5, x) *
         std::pow(pc.r / std::sqrt(spec.theta_bar), idx.l) *
         spherical_harmonic(idx.l, idx.m, pc.dir);
}

void p_eval_all(const BasisSpec& spec, const IndexMap& map, const Vec3& v, cplx* out) {
  const int M = map.M();
  const Polar pc = to_polar(spec, v);
  const double x = pc.r * pc.r / (2.0 * spec.theta_bar);
  const double rs = pc.r / std::sqrt(spec.theta_bar);

  std::vector<cplx> ylm((M + 1) * (M + 1));
  spherical_harmonic_all(M, pc.dir, ylm.data());

  std::vector<double> lag(M / 2 + 1);
  int i = 0;
  double rl = 1.0;  // rs^l
  for (int l = 0; l <= M; ++l) {
    const int nmax = (M - l) / 2;
    laguerre_all(nmax, l + 0.5, x, lag.data());
    for (int n = 0; n <= nmax; ++n) {
      const double radial = basis_norm(l, n) * lag[n] * rl;
      for (int m = -l; m <= l; ++m) out[i++] = radial * ylm[l * (l + 1) + m];
    }
    rl *= rs;
  }
}

double field_eval(const SpectralField& f, const Vec3& v) {
  IndexMap map(f.spec.M);
  std::vector<cplx> p(map.size());
  p_eval_all(f.spec, map, v, p.data());
  cplx acc = 0.0;
  for (int i = 0; i < map.size(); ++i) acc += f.coef[i] * p[i];
  acc *= maxwellian_value(f.spec.u_bar, f.spec.theta_bar, v);
  if (std::abs(acc.imag()) > 1e-10 * std::abs(acc.real()) + 1e-14)
    throw numerical_error("field_eval: field violates conjugate symmetry");
  return acc.real();
}

}  // namespace burnett
