#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "burnett/coeffs.hpp"
#include "burnett/types.hpp"

static_assert(std::endian::native == std::endian::little,
              "cache format is little-endian; big-endian hosts need byte swaps");

namespace burnett {
namespace {

constexpr char kMagic[8] = {'B', 'U', 'R', 'N', 'C', 'O', 'E', 'F'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kEndianTag = 0x01020304u;

// Identifiers of every repo-wide convention the tables depend on. Changing
// any of them invalidates existing caches through the header hash.
constexpr const char kConvention[] =
    "ordering=l,n,m-lexicographic;"
    "harmonics=complex,condon-shortley;"
    "radial=normalized-laguerre;"
    "hermite=probabilists-unit-norm;"
    "N0=ceil(M/2)";

std::uint64_t fnv1a64(const char* s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (; *s; ++s) {
    h ^= static_cast<unsigned char>(*s);
    h *= 0x100000001b3ull;
  }
  return h;
}

// CRC64/ECMA-182, MSB-first, table-driven.
const std::array<std::uint64_t, 256>& crc64_table() {
  static const std::array<std::uint64_t, 256> table = [] {
    std::array<std::uint64_t, 256> t{};
    for (std::uint64_t i = 0; i < 256; ++i) {
      std::uint64_t c = i << 56;
      for (int k = 0; k < 8; ++k)
        c = (c & 0x8000000000000000ull) ? (c << 1) ^ 0x42F0E1EBA9EA3693ull
                                        : (c << 1);
      t[i] = c;
    }
    return t;
  }();
  return table;
}

std::uint64_t crc64(const char* data, std::size_t n) {
  const auto& t = crc64_table();
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i)
    c = t[((c >> 56) ^ static_cast<unsigned char>(data[i])) & 0xff] ^ (c << 8);
  return c;
}

struct Writer {
  std::string buf;

  void raw(const void* p, std::size_t n) {
    buf.append(static_cast<const char*>(p), n);
  }
  void u8(std::uint8_t v) { raw(&v, 1); }
  void u32(std::uint32_t v) { raw(&v, 4); }
  void u64(std::uint64_t v) { raw(&v, 8); }
  void i32(std::int32_t v) { raw(&v, 4); }
  void i64(std::int64_t v) { raw(&v, 8); }
  void f64(double v) { raw(&v, 8); }
  void vec_f64(const std::vector<double>& v) {
    u64(v.size());
    raw(v.data(), v.size() * sizeof(double));
  }
  void vec_i64(const std::vector<std::int64_t>& v) {
    u64(v.size());
    raw(v.data(), v.size() * sizeof(std::int64_t));
  }
};

struct Reader {
  const char* p;
  const char* end;

  void raw(void* out, std::size_t n) {
    if (static_cast<std::size_t>(end - p) < n)
      throw cache_error("cache: header mismatch (payload shorter than declared)");
    std::memcpy(out, p, n);
    p += n;
  }
  std::uint8_t u8() { std::uint8_t v; raw(&v, 1); return v; }
  std::uint32_t u32() { std::uint32_t v; raw(&v, 4); return v; }
  std::uint64_t u64() { std::uint64_t v; raw(&v, 8); return v; }
  std::int32_t i32() { std::int32_t v; raw(&v, 4); return v; }
  std::int64_t i64() { std::int64_t v; raw(&v, 8); return v; }
  double f64() { double v; raw(&v, 8); return v; }
  std::size_t count() {
    const std::uint64_t n = u64();
    if (n > static_cast<std::uint64_t>(end - p))
      throw cache_error("cache: header mismatch (element count overflows payload)");
    return static_cast<std::size_t>(n);
  }
  std::vector<double> vec_f64() {
    std::vector<double> v(count());
    raw(v.data(), v.size() * sizeof(double));
    return v;
  }
  std::vector<std::int64_t> vec_i64() {
    std::vector<std::int64_t> v(count());
    raw(v.data(), v.size() * sizeof(std::int64_t));
    return v;
  }
};

void write_kernel(Writer& w, const LinearKernelTable& t) {
  w.u8(t.family == SignFamily::minus ? 1 : 0);
  w.f64(t.nu);
  w.i32(t.M);
  w.i32(t.N0);
  w.u64(t.a.size());
  for (const auto& row : t.a) w.vec_f64(row);
}

LinearKernelTable read_kernel(Reader& r) {
  LinearKernelTable t;
  t.family = r.u8() ? SignFamily::minus : SignFamily::plus;
  t.nu = r.f64();
  t.M = r.i32();
  t.N0 = r.i32();
  t.a.resize(r.count());
  for (auto& row : t.a) row = r.vec_f64();
  return t;
}

void write_sparse(Writer& w, const Eigen::SparseMatrix<double>& A) {
  w.i32(static_cast<std::int32_t>(A.rows()));
  w.i32(static_cast<std::int32_t>(A.cols()));
  w.u64(static_cast<std::uint64_t>(A.nonZeros()));
  for (int k = 0; k < A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it) {
      w.i32(static_cast<std::int32_t>(it.row()));
      w.i32(static_cast<std::int32_t>(it.col()));
      w.f64(it.value());
    }
}

Eigen::SparseMatrix<double> read_sparse(Reader& r) {
  const int rows = r.i32();
  const int cols = r.i32();
  const std::size_t nnz = r.count();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(nnz);
  for (std::size_t k = 0; k < nnz; ++k) {
    const int i = r.i32();
    const int j = r.i32();
    const double v = r.f64();
    trip.emplace_back(i, j, v);
  }
  Eigen::SparseMatrix<double> A(rows, cols);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  return A;
}

}  // namespace

void cache_save(const CoeffTables& tables, const std::string& path) {
  Writer w;
  w.u32(kVersion);
  w.u32(kEndianTag);
  w.u64(fnv1a64(kConvention));
  w.i32(tables.M);
  w.i32(tables.m0_cap);
  w.f64(tables.nu);

  // Product-expansion layers, sorted-key sparse records.
  w.i32(tables.products.M());
  w.i32(tables.products.N0());
  const int pM = tables.products.M();
  const int pN0 = tables.products.N0();
  std::uint64_t nlayers = 0;
  for (int l = 0; l <= pM; ++l) nlayers += ((pM - l) / 2 + 1) * (pN0 + 1);
  w.u64(nlayers);
  for (int l = 0; l <= pM; ++l)
    for (int n = 0; n <= (pM - l) / 2; ++n)
      for (int np = 0; np <= pN0; ++np) {
        const ProductLayer& layer = tables.products.layer(l, n, np);
        w.u64(layer.entries.size());
        for (const auto& [key, val] : layer.entries) {
          w.u64(key);
          w.f64(val);
        }
      }

  write_kernel(w, tables.a_plus);
  write_kernel(w, tables.a_minus);

  w.i32(tables.shapes.M);
  w.i32(tables.shapes.N0);
  w.u64(tables.shapes.s.size());
  for (const auto& per_l : tables.shapes.s) {
    w.u64(per_l.size());
    for (const auto& per_n : per_l) w.vec_f64(per_n);
  }

  w.vec_f64(tables.nu_m0);

  w.i32(tables.tensor.M_cap);
  w.f64(tables.tensor.nu);
  w.u64(tables.tensor.entries.size());
  for (const TensorEntry& e : tables.tensor.entries) {
    w.i32(e.out);
    w.i32(e.in1);
    w.i32(e.in2);
    w.f64(e.value);
  }
  w.vec_i64(tables.tensor.degree_offset);

  w.i32(tables.advection.M);
  for (int k = 0; k < 3; ++k) {
    w.u8(tables.advection.imaginary[k] ? 1 : 0);
    write_sparse(w, tables.advection.A[k]);
  }

  const std::uint64_t sum = crc64(w.buf.data(), w.buf.size());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw cache_error("cache: cannot open for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  out.write(w.buf.data(), static_cast<std::streamsize>(w.buf.size()));
  out.write(reinterpret_cast<const char*>(&sum), 8);
  out.flush();
  if (!out) throw cache_error("cache: write failed: " + path);
}

CoeffTables cache_load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cache_error("cache: missing/corrupt (" + path + ")");
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (data.size() < sizeof(kMagic) + 8 ||
      std::memcmp(data.data(), kMagic, sizeof(kMagic)) != 0)
    throw cache_error("cache: missing/corrupt (" + path + ")");

  const std::size_t body = data.size() - sizeof(kMagic) - 8;
  std::uint64_t stored;
  std::memcpy(&stored, data.data() + sizeof(kMagic) + body, 8);
  if (crc64(data.data() + sizeof(kMagic), body) != stored)
    throw cache_error("cache: checksum failure (" + path + ")");

  Reader r{data.data() + sizeof(kMagic), data.data() + sizeof(kMagic) + body};
  if (r.u32() != kVersion)
    throw cache_error("cache: version mismatch (" + path + ")");
  if (r.u32() != kEndianTag)
    throw cache_error("cache: header mismatch (byte order, " + path + ")");
  if (r.u64() != fnv1a64(kConvention))
    throw cache_error("cache: header mismatch (convention hash, " + path + ")");

  CoeffTables t;
  t.M = r.i32();
  t.m0_cap = r.i32();
  t.nu = r.f64();

  const int pM = r.i32();
  const int pN0 = r.i32();
  std::vector<ProductLayer> layers(r.count());
  for (ProductLayer& layer : layers) {
    layer.entries.resize(r.count());
    for (auto& [key, val] : layer.entries) {
      key = r.u64();
      val = r.f64();
    }
  }
  cache_read_products(t.products, pM, pN0, std::move(layers));

  t.a_plus = read_kernel(r);
  t.a_minus = read_kernel(r);

  t.shapes.M = r.i32();
  t.shapes.N0 = r.i32();
  t.shapes.s.resize(r.count());
  for (auto& per_l : t.shapes.s) {
    per_l.resize(r.count());
    for (auto& per_n : per_l) per_n = r.vec_f64();
  }

  t.nu_m0 = r.vec_f64();

  t.tensor.M_cap = r.i32();
  t.tensor.nu = r.f64();
  t.tensor.entries.resize(r.count());
  for (TensorEntry& e : t.tensor.entries) {
    e.out = r.i32();
    e.in1 = r.i32();
    e.in2 = r.i32();
    e.value = r.f64();
  }
  t.tensor.degree_offset = r.vec_i64();

  t.advection.M = r.i32();
  for (int k = 0; k < 3; ++k) {
    t.advection.imaginary[k] = r.u8() != 0;
    t.advection.A[k] = read_sparse(r);
  }

  if (r.p != r.end)
    throw cache_error("cache: header mismatch (trailing bytes, " + path + ")");
  return t;
}

}  // namespace burnett
