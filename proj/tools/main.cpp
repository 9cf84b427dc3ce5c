// Command-line front end: coefficient precomputation, scenario runs,
// threshold calibration, and the invariant validation suite.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "burnett/adapt.hpp"
#include "burnett/basis.hpp"
#include "burnett/coeffs.hpp"
#include "burnett/collision.hpp"
#include "burnett/config.hpp"
#include "burnett/report.hpp"
#include "burnett/solver.hpp"
#include "burnett/types.hpp"

namespace {

using namespace burnett;

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

/// FNV-1a over raw bytes, used for the per-table checksums printed by
/// precompute (stable across runs because assembly is deterministic).
struct Hash64 {
  std::uint64_t h = 0xcbf29ce484222325ull;
  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= c[i];
      h *= 0x100000001b3ull;
    }
  }
  void f64(double v) { bytes(&v, sizeof(v)); }
  void i64(std::int64_t v) { bytes(&v, sizeof(v)); }
};

std::uint64_t checksum_products(const ProductCoeffTable& t) {
  Hash64 h;
  for (int l = 0; l <= t.M(); ++l)
    for (int n = 0; n <= (t.M() - l) / 2; ++n)
      for (int np = 0; np <= t.N0(); ++np)
        for (const auto& [key, val] : t.layer(l, n, np).entries) {
          h.i64(static_cast<std::int64_t>(key));
          h.f64(val);
        }
  return h.h;
}

std::uint64_t checksum_kernel(const LinearKernelTable& t) {
  Hash64 h;
  for (const auto& row : t.a)
    for (double v : row) h.f64(v);
  return h.h;
}

std::uint64_t checksum_shapes(const ShapeCoeffTable& t) {
  Hash64 h;
  for (const auto& per_l : t.s)
    for (const auto& per_n : per_l)
      for (double v : per_n) h.f64(v);
  return h.h;
}

std::uint64_t checksum_vec(const std::vector<double>& v) {
  Hash64 h;
  for (double x : v) h.f64(x);
  return h.h;
}

std::uint64_t checksum_tensor(const CollisionTensor& t) {
  Hash64 h;
  for (const TensorEntry& e : t.entries) {
    h.i64(e.out);
    h.i64(e.in1);
    h.i64(e.in2);
    h.f64(e.value);
  }
  return h.h;
}

std::uint64_t checksum_advection(const AdvectionMatrices& adv) {
  Hash64 h;
  for (int k = 0; k < 3; ++k)
    for (int o = 0; o < adv.A[k].outerSize(); ++o)
      for (Eigen::SparseMatrix<double>::InnerIterator it(adv.A[k], o); it;
           ++it) {
        h.i64(it.row());
        h.i64(it.col());
        h.f64(it.value());
      }
  return h.h;
}

std::uint64_t checksum_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Hash64 h;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
    h.bytes(buf, static_cast<std::size_t>(in.gcount()));
  return h.h;
}

CoeffTables load_or_build_tables(const ScenarioConfig& config) {
  if (!config.cache_path.empty()) return cache_load(config.cache_path);
  std::fprintf(stderr, "no cache given; assembling tables for M = %d...\n",
               config.M);
  return build_coeff_tables(config.M, config.m0_cap, config.nu,
                            config.effective_tensor_cap(), config.workers);
}

ScenarioConfig load_config(const std::string& config_path,
                           const std::string& cache_flag,
                           const std::string& out_flag, int workers_flag) {
  ScenarioConfig config = parse_config(config_path);
  if (!cache_flag.empty()) config.cache_path = cache_flag;
  if (!out_flag.empty()) config.out_dir = out_flag;
  if (workers_flag > 0) config.workers = workers_flag;
  validate_config(config);
  return config;
}

int cmd_precompute(int M, int m0_cap, int tensor_cap, double nu, int workers,
                   const std::string& out_path) {
  if (M < 3 || M > 12)
    throw config_error("precompute: M must be in [3, 12] "
                       "(quadrature-assembled tensor bound)");
  if (m0_cap < 0) m0_cap = M;
  if (tensor_cap < 0) tensor_cap = m0_cap;
  if (m0_cap < 3 || m0_cap > M)
    throw config_error("precompute: m0_cap must be in [3, M]");
  if (tensor_cap < m0_cap || tensor_cap > M)
    throw config_error("precompute: tensor_cap must be in [m0_cap, M]");
  if (!(nu >= 0.0 && nu <= 1.0))
    throw config_error("precompute: nu must be in [0, 1]");

  CoeffTables t;
  t.M = M;
  t.m0_cap = m0_cap;
  t.nu = nu;
  const int N0 = (M + 1) / 2;

  const auto timed = [](const char* name, std::uint64_t checksum, double dt) {
    std::printf("%-22s %8.3f s   checksum %016llx\n", name, dt,
                static_cast<unsigned long long>(checksum));
  };

  double t0 = now_seconds();
  t.products = product_coeffs(M, N0, workers);
  timed("product coefficients", checksum_products(t.products),
        now_seconds() - t0);

  t0 = now_seconds();
  t.a_plus = linear_kernel_tables(M, nu, SignFamily::plus, t.products);
  timed("kernel (plus family)", checksum_kernel(t.a_plus), now_seconds() - t0);

  t0 = now_seconds();
  t.a_minus = linear_kernel_tables(M, nu, SignFamily::minus, t.products);
  timed("kernel (minus family)", checksum_kernel(t.a_minus),
        now_seconds() - t0);

  t0 = now_seconds();
  t.shapes = shape_coeffs(M);
  timed("shape coefficients", checksum_shapes(t.shapes), now_seconds() - t0);

  t0 = now_seconds();
  t.nu_m0 = relaxation_rates(m0_cap, t.a_minus);
  timed("relaxation rates", checksum_vec(t.nu_m0), now_seconds() - t0);

  t0 = now_seconds();
  t.tensor = collision_tensor(tensor_cap, nu, workers);
  timed("collision tensor", checksum_tensor(t.tensor), now_seconds() - t0);

  t0 = now_seconds();
  t.advection = advection_matrices(M);
  timed("advection matrices", checksum_advection(t.advection),
        now_seconds() - t0);

  cache_save(t, out_path);
  std::printf("%-22s %8s     checksum %016llx\n", out_path.c_str(), "",
              static_cast<unsigned long long>(checksum_file(out_path)));
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& cache_flag,
            const std::string& out_flag, const std::string& reference_dir,
            int workers_flag) {
  const ScenarioConfig config =
      load_config(config_path, cache_flag, out_flag, workers_flag);
  const CoeffTables tables = load_or_build_tables(config);

  const RunResult result = run_scenario(config, tables);

  std::vector<std::string> files;
  if (!reference_dir.empty()) {
    const LoadedRun reference = read_run_report(reference_dir, config.grid);
    files = write_run_report(config, result, config.out_dir, &reference);
  } else {
    files = write_run_report(config, result, config.out_dir);
  }

  std::printf("scenario %s: %lld steps to t = %.6g%s\n",
              scenario_name(config.scenario).c_str(), result.steps,
              result.t_end,
              config.steady
                  ? (result.steady_reached ? " (steady)" : " (horizon hit)")
                  : "");
  std::printf("max indicator seen: %.6g\n", result.eps_seen_max);
  std::printf("wrote %zu files to %s\n", files.size(),
              config.out_dir.c_str());
  return 0;
}

int cmd_calibrate(const std::string& config_path, const std::string& cache_flag,
                  const std::string& out_flag, int workers_flag) {
  const ScenarioConfig config =
      load_config(config_path, cache_flag, out_flag, workers_flag);
  const CoeffTables tables = load_or_build_tables(config);

  const CalibrationResult result = calibrate(config, tables);
  const std::string report = calibration_report(result);
  std::fputs(report.c_str(), stdout);
  std::printf("eps_max = %.17g\ncalibrated eps1 = %.17g, eps2 = %.17g\n",
              result.eps_max, result.eps1, result.eps2);

  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  std::ofstream out(fs::path(config.out_dir) / "calibration.txt");
  out << report << "eps_max = " << csv_num(result.eps_max)
      << "\neps1 = " << csv_num(result.eps1)
      << "\neps2 = " << csv_num(result.eps2) << "\n";
  return 0;
}

int cmd_validate(const std::string& cache_flag, int workers) {
  const CoeffTables tables =
      cache_flag.empty()
          ? build_coeff_tables(6, 6, 5.0 / 9.0, 5, workers)
          : cache_load(cache_flag);

  int failures = 0;
  const auto check = [&](const char* name, bool ok, double residual) {
    std::printf("%s  %-46s (residual %.3e)\n", ok ? "PASS" : "FAIL", name,
                residual);
    if (!ok) ++failures;
  };

  // Conservation rows of the linearized (minus-family) kernel: the density,
  // momentum, and energy test functions are annihilated.
  {
    double worst = 0.0;
    const int pairs[3][2] = {{0, 0}, {1, 0}, {0, 1}};
    for (const auto& p : pairs) {
      const int l = p[0], n = p[1];
      for (int n1 = 0; n1 <= tables.a_minus.nmax(l); ++n1)
        for (int np = 0; np <= tables.a_minus.N0; ++np)
          worst = std::max(worst, std::abs(tables.a_minus.get(l, n, n1, np)));
    }
    check("linearized-kernel conservation rows vanish", worst < 1e-10, worst);
  }

  // nu = 0 radial integrals collapse to the Laguerre-orthogonality closed
  // form.
  {
    double worst = 0.0;
    for (int l2 = 0; l2 <= 6; ++l2)
      for (int n2 = 0; n2 <= 6; ++n2)
        for (int n2p = 0; n2p <= 6; ++n2p) {
          double fact = 1.0;
          for (int k = 2; k <= n2; ++k) fact *= k;
          const double closed =
              n2 == n2p ? 2.0 * ((l2 == 0) + 1.0) *
                              std::tgamma(n2 + l2 + 1.5) / fact
                        : 0.0;
          const double got = radial_vhs_integral(l2, n2, n2p, 0.0);
          const double scale = std::max(1.0, std::abs(closed));
          worst = std::max(worst, std::abs(got - closed) / scale);
        }
    check("nu = 0 radial integrals match closed form", worst < 1e-12, worst);
  }

  // Product-expansion recurrence vs the direct-quadrature oracle on a few
  // low-degree layers.
  {
    double worst = 0.0;
    const int picks[4][3] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 1}, {2, 1, 0}};
    for (const auto& p : picks) {
      const ProductLayer oracle = product_coeffs_oracle(p[0], p[1], p[2]);
      const ProductLayer& fast = tables.products.layer(p[0], p[1], p[2]);
      for (const auto& [key, val] : oracle.entries) {
        double have = 0.0;
        for (const auto& [k2, v2] : fast.entries)
          if (k2 == key) have = v2;
        worst = std::max(worst, std::abs(have - val));
      }
    }
    check("product coefficients match quadrature oracle", worst < 1e-8, worst);
  }

  // Probe degree for hybrid-operator checks: limited by the assembled
  // quadratic-tensor degree.
  const int probe_m0 = std::min(tables.m0_cap, tables.tensor.M_cap);

  // The reference Maxwellian is an exact fixed point of the hybrid operator.
  {
    const BasisSpec spec{tables.M, {0.0, 0.0, 0.0}, 1.0};
    const SpectralField eq = maxwellian_projection(1.0, {0.0, 0.0, 0.0}, 1.0,
                                                   spec);
    const SpectralField r = hybrid_rhs(eq, probe_m0, tables, 1.0);
    const double res = r.coef.cwiseAbs().maxCoeff();
    check("equilibrium annihilated by hybrid operator", res < 1e-10, res);
  }

  // Collision invariants (density, momentum, energy rows) of the hybrid
  // right-hand side vanish on a two-stream field.
  {
    const BasisSpec spec{tables.M, {0.0, 0.0, 0.0}, 1.0};
    SpectralField f = maxwellian_projection(0.6, {0.3, -0.1, 0.2}, 1.1, spec);
    const SpectralField g =
        maxwellian_projection(0.4, {-0.4, 0.2, 0.0}, 0.85, spec);
    f.coef += g.coef;
    const SpectralField r = hybrid_rhs(f, probe_m0, tables, 0.7);
    const IndexMap map(tables.M);
    double worst = std::abs(r.coef[map.find(0, 0, 0)]);
    worst = std::max(worst, std::abs(r.coef[map.find(0, 0, 1)]));
    for (int m = -1; m <= 1; ++m)
      worst = std::max(worst, std::abs(r.coef[map.find(1, m, 0)]));
    check("hybrid operator conserves the five invariants", worst < 1e-10,
          worst);
  }

  // Advection matrices: unit-frame diagonals vanish and the z-aligned linear
  // mode couples to the constant with unit weight.
  {
    const IndexMap map(tables.M);
    double worst = 0.0;
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < tables.advection.A[k].rows(); ++i)
        worst = std::max(worst, std::abs(tables.advection.A[k].coeff(i, i)));
    const double z = tables.advection.A[2].coeff(map.find(1, 0, 0),
                                                 map.find(0, 0, 0));
    worst = std::max(worst, std::abs(z - 1.0));
    check("advection matrices: diagonal and z-mode entries", worst < 1e-12,
          worst);
  }

  // Collision-tensor storage invariants: canonical (in1 <= in2) pairs and a
  // monotone degree index.
  {
    bool ok = true;
    for (const TensorEntry& e : tables.tensor.entries)
      ok = ok && e.in1 <= e.in2;
    for (std::size_t d = 1; d < tables.tensor.degree_offset.size(); ++d)
      ok = ok && tables.tensor.degree_offset[d - 1] <=
                     tables.tensor.degree_offset[d];
    ok = ok && tables.tensor.degree_offset.back() ==
                   static_cast<std::int64_t>(tables.tensor.entries.size());
    check("collision-tensor storage invariants", ok, ok ? 0.0 : 1.0);
  }

  if (failures > 0) {
    std::fprintf(stderr, "validate: %d check(s) failed\n", failures);
    throw numerical_error("validation suite failed");
  }
  std::printf("all validation checks passed\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive Burnett-spectral Boltzmann solver"};
  app.require_subcommand(1);

  std::string config_path, cache_path, out_dir, reference_dir;
  int workers = 0;

  int pre_M = 10, pre_m0 = -1, pre_tensor = -1, pre_workers = 1;
  double pre_nu = 5.0 / 9.0;
  std::string pre_out;
  CLI::App* pre = app.add_subcommand(
      "precompute", "Assemble all coefficient tables and write a cache file");
  pre->add_option("--M", pre_M, "Basis degree (3..12)");
  pre->add_option("--m0-cap", pre_m0, "Max splitting degree (default: M)");
  pre->add_option("--tensor-cap", pre_tensor,
                  "Quadratic-tensor degree bound (default: m0-cap)");
  pre->add_option("--nu", pre_nu, "VHS exponent in [0, 1]");
  pre->add_option("--workers", pre_workers, "Assembly worker threads");
  pre->add_option("--cache", pre_out, "Output cache path")->required();

  CLI::App* run = app.add_subcommand("run", "Run a scenario and write CSVs");
  run->add_option("--config", config_path, "Scenario config (INI)")
      ->required();
  run->add_option("--cache", cache_path, "Coefficient cache file");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--reference", reference_dir,
                  "Previously written report to compare against");
  run->add_option("--workers", workers, "Worker threads");

  CLI::App* cal = app.add_subcommand(
      "calibrate", "Calibrate the adaptation thresholds for a scenario");
  cal->add_option("--config", config_path, "Scenario config (INI)")
      ->required();
  cal->add_option("--cache", cache_path, "Coefficient cache file");
  cal->add_option("--out", out_dir, "Output directory");
  cal->add_option("--workers", workers, "Worker threads");

  CLI::App* val = app.add_subcommand(
      "validate", "Run the coefficient/operator invariant suite");
  val->add_option("--cache", cache_path,
                  "Cache to validate (default: assemble M = 6 tables)");
  val->add_option("--workers", workers, "Worker threads");

  try {
    app.parse(argc, argv);
    if (pre->parsed())
      return cmd_precompute(pre_M, pre_m0, pre_tensor, pre_nu, pre_workers,
                            pre_out);
    if (run->parsed())
      return cmd_run(config_path, cache_path, out_dir, reference_dir, workers);
    if (cal->parsed())
      return cmd_calibrate(config_path, cache_path, out_dir, workers);
    return cmd_validate(cache_path, workers > 0 ? workers : 1);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const burnett::config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const burnett::cache_error& e) {
    std::fprintf(stderr, "cache error: %s\n", e.what());
    return 3;
  } catch (const burnett::calibration_error& e) {
    std::fprintf(stderr, "calibration failure: %s\n", e.what());
    return 5;
  } catch (const burnett::numerical_error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
}
