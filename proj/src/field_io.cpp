#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>

#include "bilap/errors.hpp"
#include "bilap/spectral_core.hpp"

namespace bilap {
namespace {

constexpr char kMagic[5] = {'B', 'L', 'A', 'P', '1'};

static_assert(std::endian::native == std::endian::little, "field IO assumes a little-endian host");

template <class T>
void put(std::ofstream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::ifstream& in, const std::string& path) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw IoError(path + ": truncated field file");
  return value;
}

}  // namespace

void write_field(const std::string& path, const SpectralField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path + ": cannot open for writing");
  const auto& g = f.grid();
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, std::uint32_t(g.dim()));
  for (int a = 0; a < g.dim(); ++a) put<std::uint32_t>(out, std::uint32_t(g.n()));
  put<double>(out, g.period());
  for (auto v : values_of(f)) {
    put<double>(out, v.real());
    put<double>(out, v.imag());
  }
  if (!out) throw IoError(path + ": write failed");
}

SpectralField read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open for reading");
  char magic[5];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw IoError(path + ": bad magic, expected BLAP1");
  const auto dim = get<std::uint32_t>(in, path);
  if (dim != 1 && dim != 2) throw IoError(path + ": unsupported dimension " + std::to_string(dim));
  std::uint32_t n = get<std::uint32_t>(in, path);
  if (dim == 2 && get<std::uint32_t>(in, path) != n) throw IoError(path + ": axes must have equal length");
  const double period = get<double>(in, path);
  TorusGrid grid(int(dim), int(n), period);
  std::vector<cplx> values(grid.size());
  for (auto& v : values) {
    const double re = get<double>(in, path);
    const double im = get<double>(in, path);
    v = {re, im};
  }
  return SpectralField::from_space(grid, std::move(values));
}

void write_field_csv(const std::string& path, const SpectralField& f) {
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  const auto& g = f.grid();
  out << (g.dim() == 1 ? "i,re,im\n" : "i0,i1,re,im\n");
  out << std::setprecision(17);
  auto v = values_of(f);
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto s = g.axis_slots(i);
    out << s[0] << ',';
    if (g.dim() == 2) out << s[1] << ',';
    out << v[i].real() << ',' << v[i].imag() << '\n';
  }
  if (!out) throw IoError(path + ": write failed");
}

}  // namespace bilap
