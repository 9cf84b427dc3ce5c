#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "burnett/coeffs.hpp"
#include "burnett/types.hpp"

using namespace burnett;

namespace {

const CoeffTables& shared_tables() {
  static const CoeffTables tables = build_coeff_tables(6, 6, 5.0 / 9.0, 5, 4);
  return tables;
}

std::string temp_path(const char* stem) {
  return std::string("/tmp/burnett_cache_test_") + stem + ".bin";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

void check_kernel_equal(const LinearKernelTable& a, const LinearKernelTable& b) {
  CHECK(a.family == b.family);
  CHECK(a.nu == b.nu);
  CHECK(a.M == b.M);
  CHECK(a.N0 == b.N0);
  REQUIRE(a.a.size() == b.a.size());
  for (std::size_t l = 0; l < a.a.size(); ++l) CHECK(a.a[l] == b.a[l]);
}

}  // namespace

TEST_CASE("save/load round trip is bitwise") {
  const CoeffTables& t = shared_tables();
  const std::string path = temp_path("roundtrip");
  cache_save(t, path);
  const CoeffTables r = cache_load(path);

  CHECK(r.M == t.M);
  CHECK(r.m0_cap == t.m0_cap);
  CHECK(r.nu == t.nu);

  REQUIRE(r.products.M() == t.products.M());
  REQUIRE(r.products.N0() == t.products.N0());
  for (int l = 0; l <= t.products.M(); ++l)
    for (int n = 0; n <= (t.products.M() - l) / 2; ++n)
      for (int np = 0; np <= t.products.N0(); ++np) {
        const auto& a = t.products.layer(l, n, np).entries;
        const auto& b = r.products.layer(l, n, np).entries;
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
          CHECK(a[k].first == b[k].first);
          CHECK(a[k].second == b[k].second);
        }
      }

  check_kernel_equal(r.a_plus, t.a_plus);
  check_kernel_equal(r.a_minus, t.a_minus);

  CHECK(r.shapes.M == t.shapes.M);
  CHECK(r.shapes.N0 == t.shapes.N0);
  CHECK(r.shapes.s == t.shapes.s);
  CHECK(r.nu_m0 == t.nu_m0);

  CHECK(r.tensor.M_cap == t.tensor.M_cap);
  CHECK(r.tensor.nu == t.tensor.nu);
  CHECK(r.tensor.degree_offset == t.tensor.degree_offset);
  REQUIRE(r.tensor.entries.size() == t.tensor.entries.size());
  for (std::size_t k = 0; k < t.tensor.entries.size(); ++k) {
    CHECK(r.tensor.entries[k].out == t.tensor.entries[k].out);
    CHECK(r.tensor.entries[k].in1 == t.tensor.entries[k].in1);
    CHECK(r.tensor.entries[k].in2 == t.tensor.entries[k].in2);
    CHECK(r.tensor.entries[k].value == t.tensor.entries[k].value);
  }

  CHECK(r.advection.M == t.advection.M);
  for (int k = 0; k < 3; ++k) {
    CHECK(r.advection.imaginary[k] == t.advection.imaginary[k]);
    const auto& A = t.advection.A[k];
    const auto& B = r.advection.A[k];
    REQUIRE(A.rows() == B.rows());
    REQUIRE(A.cols() == B.cols());
    REQUIRE(A.nonZeros() == B.nonZeros());
    CHECK((Eigen::MatrixXd(A) - Eigen::MatrixXd(B)).cwiseAbs().maxCoeff() == 0.0);
  }

  // Saving the loaded copy reproduces the first file byte for byte.
  const std::string path2 = temp_path("roundtrip2");
  cache_save(r, path2);
  CHECK(slurp(path) == slurp(path2));
  std::remove(path.c_str());
  std::remove(path2.c_str());
}

TEST_CASE("failure modes are distinct") {
  const CoeffTables& t = shared_tables();
  const std::string path = temp_path("failures");
  cache_save(t, path);
  const std::string good = slurp(path);

  SUBCASE("missing file") {
    CHECK_THROWS_WITH_AS(cache_load("/tmp/burnett_no_such_cache.bin"),
                         doctest::Contains("cache: missing/corrupt"),
                         cache_error);
  }
  SUBCASE("wrong magic") {
    std::string bad = good;
    bad[0] = 'X';
    spit(path, bad);
    CHECK_THROWS_WITH_AS(cache_load(path),
                         doctest::Contains("cache: missing/corrupt"),
                         cache_error);
  }
  SUBCASE("truncated file") {
    spit(path, good.substr(0, good.size() / 2));
    CHECK_THROWS_WITH_AS(cache_load(path),
                         doctest::Contains("cache: checksum failure"),
                         cache_error);
  }
  SUBCASE("single flipped payload byte") {
    std::string bad = good;
    bad[good.size() / 3] ^= 0x40;
    spit(path, bad);
    CHECK_THROWS_WITH_AS(cache_load(path),
                         doctest::Contains("cache: checksum failure"),
                         cache_error);
  }
  SUBCASE("version bump") {
    // Byte 8 is the low byte of the little-endian format version; a future
    // version must be rejected even when the checksum is recomputed to match.
    std::string bad = good;
    bad[8] = 2;
    // Recompute the trailing CRC64 (ECMA-182, MSB-first) over the body so the
    // only defect left is the version number.
    std::uint64_t table[256];
    for (std::uint64_t i = 0; i < 256; ++i) {
      std::uint64_t c = i << 56;
      for (int k = 0; k < 8; ++k)
        c = (c & 0x8000000000000000ull) ? (c << 1) ^ 0x42F0E1EBA9EA3693ull
                                        : (c << 1);
      table[i] = c;
    }
    std::uint64_t c = 0;
    for (std::size_t i = 8; i < bad.size() - 8; ++i)
      c = table[((c >> 56) ^ static_cast<unsigned char>(bad[i])) & 0xff] ^
          (c << 8);
    for (int b = 0; b < 8; ++b)
      bad[bad.size() - 8 + b] = static_cast<char>((c >> (8 * b)) & 0xff);
    spit(path, bad);
    CHECK_THROWS_WITH_AS(cache_load(path),
                         doctest::Contains("cache: version mismatch"),
                         cache_error);
  }
  std::remove(path.c_str());
}
