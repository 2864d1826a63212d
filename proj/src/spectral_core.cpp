#include "bilap/spectral_core.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "bilap/errors.hpp"
#include "fft.hpp"

namespace bilap {
namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require_same_grid(const SpectralField& f, const SpectralField& g, const char* what) {
  if (!(f.grid() == g.grid())) throw DimensionError(std::string(what) + ": fields live on different grids");
}

}  // namespace

TorusGrid::TorusGrid(int dim, int n, double period) : dim_(dim), n_(n), period_(period) {
  if (dim != 1 && dim != 2) throw DomainError("TorusGrid: dim must be 1 or 2");
  if (n < 8 || !is_power_of_two(n)) throw DomainError("TorusGrid: N must be a power of two >= 8");
  if (!(period > 0.0)) throw DomainError("TorusGrid: period must be positive");
  size_ = dim == 1 ? std::size_t(n) : std::size_t(n) * std::size_t(n);
}

double TorusGrid::cell_volume() const { return std::pow(spacing(), dim_); }

double TorusGrid::frequency_step() const { return 2.0 * std::numbers::pi / period_; }

std::array<int, 2> TorusGrid::axis_slots(std::size_t flat) const {
  if (dim_ == 1) return {int(flat), 0};
  return {int(flat / std::size_t(n_)), int(flat % std::size_t(n_))};
}

std::size_t TorusGrid::flat(int slot0, int slot1) const {
  return dim_ == 1 ? std::size_t(slot0) : std::size_t(slot0) * std::size_t(n_) + std::size_t(slot1);
}

std::array<int, 2> TorusGrid::wavenumbers(std::size_t flat) const {
  auto s = axis_slots(flat);
  return {wavenumber(s[0]), dim_ == 1 ? 0 : wavenumber(s[1])};
}

FreqVec TorusGrid::frequency(std::size_t flat) const {
  auto k = wavenumbers(flat);
  const double step = frequency_step();
  return {step * k[0], step * k[1]};
}

FreqVec TorusGrid::position(std::size_t flat) const {
  auto s = axis_slots(flat);
  return {spacing() * s[0], dim_ == 1 ? 0.0 : spacing() * s[1]};
}

SpectralField SpectralField::from_space(const TorusGrid& grid, std::vector<cplx> values) {
  if (values.size() != grid.size()) throw DimensionError("SpectralField: value count does not match grid");
  SpectralField f(grid);
  f.space_ = std::move(values);
  f.space_valid_ = true;
  return f;
}

SpectralField SpectralField::from_frequency(const TorusGrid& grid, std::vector<cplx> coefficients) {
  if (coefficients.size() != grid.size()) throw DimensionError("SpectralField: coefficient count does not match grid");
  SpectralField f(grid);
  f.mean_projected_ = coefficients[0] == cplx(0.0, 0.0);
  f.freq_ = std::move(coefficients);
  f.freq_valid_ = true;
  return f;
}

SpectralField SpectralField::zeros(const TorusGrid& grid) {
  SpectralField f(grid);
  f.space_.assign(grid.size(), cplx());
  f.freq_.assign(grid.size(), cplx());
  f.space_valid_ = f.freq_valid_ = f.mean_projected_ = true;
  return f;
}

std::span<const cplx> SpectralField::space() const {
  if (!space_valid_) throw std::logic_error("SpectralField: space representation not valid");
  return space_;
}

std::span<const cplx> SpectralField::frequency() const {
  if (!freq_valid_) throw std::logic_error("SpectralField: frequency representation not valid");
  return freq_;
}

SpectralField forward_transform(SpectralField f) {
  if (f.freq_valid_) return f;
  const auto& g = f.grid_;
  f.freq_ = f.space_;
  detail::fft_in_place(g.dim(), g.n(), -1, f.freq_);
  const double scale = 1.0 / double(g.size());
  for (auto& c : f.freq_) c *= scale;
  f.freq_valid_ = true;
  return f;
}

SpectralField inverse_transform(SpectralField f) {
  if (f.space_valid_) return f;
  const auto& g = f.grid_;
  f.space_ = f.freq_;
  detail::fft_in_place(g.dim(), g.n(), +1, f.space_);
  f.space_valid_ = true;
  return f;
}

SpectralField synchronized(SpectralField f) { return inverse_transform(forward_transform(std::move(f))); }

std::vector<cplx> spectrum_of(const SpectralField& f) {
  if (f.has_frequency()) return {f.frequency().begin(), f.frequency().end()};
  auto t = forward_transform(f);
  return {t.frequency().begin(), t.frequency().end()};
}

std::vector<cplx> values_of(const SpectralField& f) {
  if (f.has_space()) return {f.space().begin(), f.space().end()};
  auto t = inverse_transform(f);
  return {t.space().begin(), t.space().end()};
}

SpectralField project_mean(SpectralField f) {
  f = forward_transform(std::move(f));
  if (f.freq_[0] != cplx()) {
    const cplx mean = f.freq_[0];
    f.freq_[0] = cplx();
    if (f.space_valid_) {
      for (auto& v : f.space_) v -= mean;
    }
  }
  f.mean_projected_ = true;
  return f;
}

SpectralField band_project(const SpectralField& f, int kmax) {
  auto c = spectrum_of(f);
  const auto& g = f.grid();
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto k = g.wavenumbers(i);
    if (std::abs(k[0]) > kmax || std::abs(k[1]) > kmax) c[i] = cplx();
  }
  return SpectralField::from_frequency(g, std::move(c));
}

double band_excess(const SpectralField& f) {
  auto c = spectrum_of(f);
  const auto& g = f.grid();
  // |k_i| < N/3 on every axis counts as in band.
  const double cutoff = g.n() / 3.0;
  double total = 0.0, outside = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double e = std::norm(c[i]);
    total += e;
    auto k = g.wavenumbers(i);
    if (std::abs(k[0]) >= cutoff || std::abs(k[1]) >= cutoff) outside += e;
  }
  return total > 0.0 ? outside / total : 0.0;
}

void require_band_limited(const SpectralField& f, const char* what) {
  const double excess = band_excess(f);
  if (excess > 1e-10) {
    throw BandLimitExceeded(std::string(what) + ": energy fraction " + std::to_string(excess) +
                            " above the N/3 cutoff");
  }
}

namespace {

// Spectrum of f placed on a grid with `factor` times more points per axis.
std::vector<cplx> pad_spectrum(const TorusGrid& from, std::span<const cplx> c, const TorusGrid& to) {
  std::vector<cplx> out(to.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto k = from.wavenumbers(i);
    out[to.flat(to.slot(k[0]), to.dim() == 1 ? 0 : to.slot(k[1]))] = c[i];
  }
  return out;
}

}  // namespace

SpectralField dealiased_product(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g, "dealiased_product");
  require_band_limited(f, "dealiased_product");
  require_band_limited(g, "dealiased_product");
  const auto& grid = f.grid();
  const TorusGrid big(grid.dim(), 2 * grid.n(), grid.period());

  auto fb = pad_spectrum(grid, spectrum_of(f), big);
  auto gb = pad_spectrum(grid, spectrum_of(g), big);
  detail::fft_in_place(big.dim(), big.n(), +1, fb);
  detail::fft_in_place(big.dim(), big.n(), +1, gb);
  for (std::size_t i = 0; i < fb.size(); ++i) fb[i] *= gb[i];
  detail::fft_in_place(big.dim(), big.n(), -1, fb);
  const double scale = 1.0 / double(big.size());

  std::vector<cplx> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto k = grid.wavenumbers(i);
    out[i] = scale * fb[big.flat(big.slot(k[0]), big.dim() == 1 ? 0 : big.slot(k[1]))];
  }
  return synchronized(SpectralField::from_frequency(grid, std::move(out)));
}

SpectralField refine(const SpectralField& f, int factor) {
  const auto& grid = f.grid();
  const TorusGrid fine(grid.dim(), grid.n() * factor, grid.period());
  auto c = spectrum_of(f);
  // The Nyquist slot -N/2 has no symmetric partner; splitting is not needed
  // for band-limited inputs, which never populate it.
  return synchronized(SpectralField::from_frequency(fine, pad_spectrum(grid, c, fine)));
}

SpectralField combine(cplx a, const SpectralField& f, cplx b, const SpectralField& g) {
  require_same_grid(f, g, "combine");
  if (f.has_frequency() && g.has_frequency()) {
    std::vector<cplx> c(f.grid().size());
    auto fc = f.frequency();
    auto gc = g.frequency();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a * fc[i] + b * gc[i];
    return SpectralField::from_frequency(f.grid(), std::move(c));
  }
  auto fv = values_of(f);
  auto gv = values_of(g);
  for (std::size_t i = 0; i < fv.size(); ++i) fv[i] = a * fv[i] + b * gv[i];
  return SpectralField::from_space(f.grid(), std::move(fv));
}

SpectralField modulus(const SpectralField& f, double power) {
  auto v = values_of(f);
  for (auto& x : v) x = power == 1.0 ? std::abs(x) : std::pow(std::abs(x), power);
  return SpectralField::from_space(f.grid(), std::move(v));
}

double max_abs_difference(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g, "max_abs_difference");
  auto fv = values_of(f);
  auto gv = values_of(g);
  double m = 0.0;
  for (std::size_t i = 0; i < fv.size(); ++i) m = std::max(m, std::abs(fv[i] - gv[i]));
  return m;
}

double max_abs(const SpectralField& f) {
  double m = 0.0;
  for (auto v : values_of(f)) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace bilap
