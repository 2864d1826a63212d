#include "bilap/littlewood_paley.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numbers>

#include "bilap/errors.hpp"
#include "fft.hpp"

namespace bilap {
namespace {

double glue(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// 0 for t <= 0, 1 for t >= 1, smooth in between.
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = glue(t);
  return a / (a + glue(1.0 - t));
}

double pow2(int j) { return std::ldexp(1.0, j); }

// Every j with psi(2^-j r) != 0 lies in this window.
std::pair<int, int> active_scales(double r) {
  const int top = int(std::floor(std::log2(r)));
  return {top - 1, top + 2};
}

double partition_weight(double r_xi, double r_eta) {
  // sum_j psi(2^-j xi) phi(2^{3-j} eta)
  if (r_xi == 0.0) return 0.0;
  auto [lo, hi] = active_scales(r_xi);
  double w = 0.0;
  for (int j = lo; j <= hi; ++j) w += psi_profile(r_xi / pow2(j)) * phi_profile(r_eta * pow2(3 - j));
  return w;
}

double diagonal_weight(double r_xi, double r_eta) {
  if (r_xi == 0.0) return 0.0;
  auto [lo, hi] = active_scales(r_xi);
  double w = 0.0;
  for (int j = lo; j <= hi; ++j) w += psi_profile(r_xi / pow2(j)) * psi_tilde_profile(r_eta / pow2(j));
  return w;
}

}  // namespace

double phi_profile(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double a = glue(2.0 - r);
  return a / (a + glue(r - 1.0));
}

double psi_profile(double r) { return phi_profile(r) - phi_profile(2.0 * r); }

double psi_tilde_profile(double r) {
  double w = 0.0;
  for (int l = -2; l <= 2; ++l) w += psi_profile(r * pow2(l));
  return w;
}

double widened_profile(double r) {
  const double inner = 1.0 / widened_radius;
  if (r >= 2.0) return 1.0 - smooth_step((r - 2.0) / (widened_radius - 2.0));
  return smooth_step((r - inner) / (0.5 - inner));
}

LPFamily::LPFamily(const TorusGrid& grid, Normalization norm) : grid_(grid), norm_(norm) {
  const double step = grid.frequency_step();
  const double top = step * (grid.n() / 2) * std::sqrt(double(grid.dim()));
  j_min_ = int(std::floor(std::log2(step)));
  j_max_ = int(std::ceil(std::log2(top))) + 1;

  certificate_ = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const FreqVec xi = grid.frequency(i);
    double total = 0.0;
    for (int j = j_min_; j <= j_max_; ++j) {
      const double w = weight(j, xi);
      total += norm_ == Normalization::Energy ? w * w : w;
    }
    certificate_ = std::max(certificate_, std::abs(total - 1.0));
  }
}

double LPFamily::generator(double r) const {
  const double p = psi_profile(r);
  return norm_ == Normalization::Energy ? std::sqrt(p) : p;
}

double LPFamily::weight(int j, const FreqVec& xi) const { return generator(length(xi) / pow2(j)); }

LPFamily build_lp_family(const TorusGrid& grid) { return LPFamily(grid); }

SpectralField lp_piece(const SpectralField& f, int j, const LPFamily& fam) {
  return translated_lp_piece(f, j, TranslationIndex{}, fam);
}

SpectralField translated_lp_piece(const SpectralField& f, int j, const TranslationIndex& m, const LPFamily& fam) {
  const auto& grid = f.grid();
  if (!(grid == fam.grid())) throw DimensionError("lp_piece: field and family grids differ");
  auto c = spectrum_of(f);
  const double scale = pow2(-j);
  const double phase = 2.0 * std::numbers::pi / m.c0 * scale;
  const bool shifted = m.m[0] != 0 || m.m[1] != 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == cplx()) continue;
    const FreqVec xi = grid.frequency(i);
    const double w = fam.weight(j, xi);
    if (w == 0.0) {
      c[i] = cplx();
      continue;
    }
    c[i] *= w;
    if (shifted) c[i] *= std::polar(1.0, phase * (xi[0] * m.m[0] + xi[1] * m.m[1]));
  }
  return synchronized(SpectralField::from_frequency(grid, std::move(c)));
}

SpectralField square_function(const SpectralField& f, const LPFamily& fam, const TranslationIndex& m,
                              double weight_s) {
  const auto& grid = f.grid();
  std::vector<double> acc(grid.size(), 0.0);
  for (int j = fam.j_min(); j <= fam.j_max(); ++j) {
    const auto piece = translated_lp_piece(f, j, m, fam);
    const double w = std::pow(2.0, 2.0 * j * weight_s);
    auto v = piece.space();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * std::norm(v[i]);
  }
  std::vector<cplx> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(acc[i]);
  return SpectralField::from_space(grid, std::move(out));
}

ParaproductSymbols paraproduct_split(const BilinearSymbol& m, double s, double nu, const LPFamily& fam) {
  (void)fam;  // the profiles are fixed; the family only pins the grid band
  auto outer = [s](const FreqVec& xi, const FreqVec& eta) {
    const FreqVec zeta{xi[0] + eta[0], xi[1] + eta[1]};
    const double r = length(zeta);
    return r == 0.0 ? 0.0 : std::pow(r, s);
  };
  const double lift = s - nu;
  auto low_high = [m, outer, lift](const FreqVec& xi, const FreqVec& eta) -> cplx {
    const double rx = length(xi);
    if (rx == 0.0) return 0.0;
    const double w = partition_weight(rx, length(eta));
    if (w == 0.0) return 0.0;
    return m(xi, eta) * (outer(xi, eta) * std::pow(rx, -lift) * w);
  };
  auto high_low = [m, outer, lift](const FreqVec& xi, const FreqVec& eta) -> cplx {
    const double ry = length(eta);
    if (ry == 0.0) return 0.0;
    const double w = partition_weight(ry, length(xi));
    if (w == 0.0) return 0.0;
    return m(xi, eta) * (outer(xi, eta) * std::pow(ry, -lift) * w);
  };
  auto high_high = [m, outer, lift](const FreqVec& xi, const FreqVec& eta) -> cplx {
    const double ry = length(eta);
    if (ry == 0.0) return 0.0;
    const double w = diagonal_weight(length(xi), ry);
    if (w == 0.0) return 0.0;
    return m(xi, eta) * (outer(xi, eta) * std::pow(ry, -lift) * w);
  };
  const std::string tag = "[" + m.label() + "]";
  return {BilinearSymbol("low_high" + tag, 0.0, low_high, cplx()),
          BilinearSymbol("high_low" + tag, 0.0, high_low, cplx()),
          BilinearSymbol("high_high" + tag, 0.0, high_high, cplx())};
}

double weighted_cutoff(double s, const FreqVec& zeta, int dim) {
  const double r = dim == 1 ? std::abs(zeta[0]) : length(zeta);
  if (r == 0.0) return s == 0.0 ? 1.0 : 0.0;
  return std::pow(r, s) * phi_profile(r);
}

cplx CoefficientTable::reconstruct(const FreqVec& xi) const {
  cplx total = 0.0;
  const double k = 2.0 * std::numbers::pi / c0;
  for (const auto& e : entries) total += e.value * std::polar(1.0, k * (xi[0] * e.m[0] + xi[1] * e.m[1]));
  return total;
}

double CoefficientTable::magnitude_at(int radius) const {
  double best = 0.0;
  for (const auto& e : entries) {
    const double r = std::hypot(double(e.m[0]), double(e.m[1]));
    if (std::lround(r) == radius) best = std::max(best, std::abs(e.value));
  }
  return best;
}

CoefficientTable fourier_coefficients(double s, double c0, int m_max, const LPFamily& fam) {
  const int d = fam.grid().dim();
  constexpr double support = 32.0;  // phi(xi/16) vanishes for |xi| >= 32
  if (!(0.5 * c0 >= support)) throw DomainError("fourier_coefficients: cutoff support exceeds the cube");
  if (!(s >= 0.0)) throw DomainError("fourier_coefficients: weight exponent must be nonnegative");
  // Riemann sum of the periodized integrand; the aliasing error of C_m is
  // driven by the |zeta|^s kink and falls like (m/Q)^{s+d}.
  const int q = d == 1 ? (1 << 20) : (1 << 11);
  if (m_max < 0 || m_max > q / 16) throw DomainError("fourier_coefficients: M_max too large for the quadrature");

  const std::size_t total = d == 1 ? std::size_t(q) : std::size_t(q) * q;
  std::vector<cplx> samples(total);
  auto coord = [q](int i) { return (i < q / 2 ? i : i - q) / double(q); };
  for (std::size_t i = 0; i < total; ++i) {
    const int i0 = d == 1 ? int(i) : int(i / std::size_t(q));
    const int i1 = d == 1 ? 0 : int(i % std::size_t(q));
    const FreqVec xi{c0 * coord(i0), d == 1 ? 0.0 : c0 * coord(i1)};
    samples[i] = weighted_cutoff(s, {xi[0] / 16.0, xi[1] / 16.0}, d);
  }
  detail::fft_in_place(d, q, -1, samples);
  const double norm = 1.0 / double(total);

  CoefficientTable table;
  table.s = s;
  table.c0 = c0;
  table.dim = d;
  auto slot = [q](int m) { return m >= 0 ? m : m + q; };
  for (int a = -m_max; a <= m_max; ++a) {
    if (d == 1) {
      table.entries.push_back({{a, 0}, norm * samples[std::size_t(slot(a))]});
      continue;
    }
    for (int b = -m_max; b <= m_max; ++b) {
      table.entries.push_back({{a, b}, norm * samples[std::size_t(slot(a)) * q + std::size_t(slot(b))]});
    }
  }
  return table;
}

void write_coefficients_csv(const std::string& path, const CoefficientTable& table) {
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << (table.dim == 1 ? "m,re,im,abs_m\n" : "m0,m1,re,im,abs_m\n") << std::setprecision(17);
  for (const auto& e : table.entries) {
    out << e.m[0] << ',';
    if (table.dim == 2) out << e.m[1] << ',';
    out << e.value.real() << ',' << e.value.imag() << ',' << std::hypot(double(e.m[0]), double(e.m[1])) << '\n';
  }
  if (!out) throw IoError(path + ": write failed");
}

void write_profile_csv(const std::string& path, int samples) {
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << "r,phi,psi,psi_tilde\n" << std::setprecision(17);
  for (int i = 0; i < samples; ++i) {
    const double r = 4.0 * i / std::max(1, samples - 1);
    out << r << ',' << phi_profile(r) << ',' << psi_profile(r) << ',' << psi_tilde_profile(r) << '\n';
  }
  if (!out) throw IoError(path + ": write failed");
}

}  // namespace bilap
