#include "bilap/phi_transform.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>

#include "bilap/errors.hpp"
#include "bilap/function_norms.hpp"

namespace bilap {

CoefficientTree::CoefficientTree(const LPFamily& generator, std::vector<Scale> scales)
    : generator_(generator), scales_(std::move(scales)) {}

int CoefficientTree::j_min() const { return scales_.empty() ? 0 : scales_.front().j; }
int CoefficientTree::j_max() const { return scales_.empty() ? -1 : scales_.back().j; }

const CoefficientTree::Scale& CoefficientTree::scale(int j) const {
  for (const auto& s : scales_) {
    if (s.j == j) return s;
  }
  throw ScaleRangeError("CoefficientTree: no scale " + std::to_string(j));
}

cplx CoefficientTree::coefficient(const DyadicCube& q) const {
  const auto& s = scale(q.j);
  if (q.corner[0] < 0 || q.corner[0] >= s.count || q.corner[1] < 0 || q.corner[1] >= s.count) {
    throw DomainError("CoefficientTree: cube corner out of range");
  }
  return s.coefficients[std::size_t(q.corner[0]) * s.count + std::size_t(q.corner[1])];
}

double CoefficientTree::energy() const {
  double e = 0.0;
  for (const auto& s : scales_) {
    for (auto c : s.coefficients) e += std::norm(c);
  }
  return e;
}

CoefficientTree CoefficientTree::single(const DyadicCube& q, cplx value) const {
  coefficient(q);  // range check
  auto scales = scales_;
  for (auto& s : scales) {
    std::fill(s.coefficients.begin(), s.coefficients.end(), cplx());
    if (s.j == q.j) s.coefficients[std::size_t(q.corner[0]) * s.count + std::size_t(q.corner[1])] = value;
  }
  return CoefficientTree(generator_, std::move(scales));
}

CoefficientTree CoefficientTree::scaled(cplx c) const {
  auto scales = scales_;
  for (auto& s : scales) {
    for (auto& v : s.coefficients) v *= c;
  }
  return CoefficientTree(generator_, std::move(scales));
}

int finest_cube_scale(const TorusGrid& grid) {
  const double e = std::log2(grid.spacing());
  if (std::abs(e - std::round(e)) > 1e-12) throw DomainError("phi transform: grid spacing must be a power of two");
  return -int(std::lround(e));
}

CoefficientTree analyze(const SpectralField& f, const LPFamily& generator) {
  const auto& grid = f.grid();
  if (grid.dim() != 2) throw DimensionError("analyze: needs a two-dimensional grid");
  if (!(grid == generator.grid())) throw DimensionError("analyze: field and generator grids differ");
  if (generator.normalization() != LPFamily::Normalization::Energy) {
    throw DomainError("analyze: generator must be energy-normalized");
  }
  const int top = finest_cube_scale(grid);
  const int bottom = generator.j_min();
  if (top < bottom) throw ScaleRangeError("analyze: grid too coarse for any cube scale");

  auto c = spectrum_of(f);
  double peak = 0.0;
  for (auto v : c) peak = std::max(peak, std::abs(v));
  const double cover = std::ldexp(1.0, top);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (std::abs(c[i]) <= 1e-12 * peak) continue;
    const double r = length(grid.frequency(i));
    if (r == 0.0 || r > cover) {
      throw ScaleRangeError("analyze: spectrum outside the scales " + std::to_string(bottom) + ".." +
                            std::to_string(top));
    }
  }

  std::vector<CoefficientTree::Scale> scales;
  for (int j = bottom; j <= top; ++j) {
    CoefficientTree::Scale s;
    s.j = j;
    s.stride = 1 << (top - j);
    s.count = grid.n() / s.stride;
    const double root_volume = std::ldexp(1.0, -j);  // |Q|^{1/2} = side^{d/2} with d = 2
    const auto piece = lp_piece(f, j, generator);
    auto v = piece.space();
    s.coefficients.resize(std::size_t(s.count) * s.count);
    for (int a = 0; a < s.count; ++a) {
      for (int b = 0; b < s.count; ++b) {
        s.coefficients[std::size_t(a) * s.count + b] = root_volume * v[grid.flat(a * s.stride, b * s.stride)];
      }
    }
    scales.push_back(std::move(s));
  }
  return CoefficientTree(generator, std::move(scales));
}

SpectralField synthesize(const CoefficientTree& tree) {
  const auto& grid = tree.grid();
  const auto& gen = tree.generator();
  std::vector<cplx> total(grid.size());
  const double cell = grid.cell_volume();
  for (const auto& s : tree.scales()) {
    // Point masses |Q|^{1/2} c_Q at the corners, then the scale-j multiplier.
    const double root_volume = std::ldexp(1.0, -s.j);
    std::vector<cplx> masses(grid.size());
    bool any = false;
    for (int a = 0; a < s.count; ++a) {
      for (int b = 0; b < s.count; ++b) {
        const cplx c = s.coefficients[std::size_t(a) * s.count + b];
        if (c == cplx()) continue;
        masses[grid.flat(a * s.stride, b * s.stride)] = root_volume * c / cell;
        any = true;
      }
    }
    if (!any) continue;
    auto spec = spectrum_of(SpectralField::from_space(grid, std::move(masses)));
    for (std::size_t i = 0; i < spec.size(); ++i) total[i] += spec[i] * gen.weight(s.j, grid.frequency(i));
  }
  total[0] = cplx();
  return synchronized(SpectralField::from_frequency(grid, std::move(total)));
}

SpectralField discrete_square_function(const CoefficientTree& tree) {
  const auto& grid = tree.grid();
  const int n = grid.n();
  std::vector<double> acc(grid.size(), 0.0);
  for (const auto& s : tree.scales()) {
    const double inv_volume = std::ldexp(1.0, 2 * s.j);  // |Q|^{-1}
    for (int t = 0; t < n; ++t) {
      for (int x = 0; x < n; ++x) {
        const cplx c = s.coefficients[std::size_t(t / s.stride) * s.count + std::size_t(x / s.stride)];
        acc[grid.flat(t, x)] += inv_volume * std::norm(c);
      }
    }
  }
  std::vector<cplx> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(acc[i]);
  return SpectralField::from_space(grid, std::move(out));
}

double embedding_ratio(const SpectralField& f, double p, double q, const LPFamily& fam) {
  const double hardy = hardy_mixed_norm(f, p, q, fam);
  if (!(hardy >= 1e-14)) throw DegenerateInput("embedding_ratio: Hardy norm vanishes");
  return mixed_norm(f, p, q) / hardy;
}

void write_tree_csv(const std::string& path, const CoefficientTree& tree) {
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << "j,corner_t,corner_x,re,im\n" << std::setprecision(17);
  for (const auto& s : tree.scales()) {
    for (int a = 0; a < s.count; ++a) {
      for (int b = 0; b < s.count; ++b) {
        const cplx c = s.coefficients[std::size_t(a) * s.count + b];
        out << s.j << ',' << a << ',' << b << ',' << c.real() << ',' << c.imag() << '\n';
      }
    }
  }
  if (!out) throw IoError(path + ": write failed");
}

}  // namespace bilap
