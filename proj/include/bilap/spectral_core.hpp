#pragma once

// Periodic grids and fields carried in both space and frequency form.
//
// Conventions: the torus is [0,L)^d with N points per axis, stored row-major
// (axis 0 first; in two dimensions axis 0 plays the time variable t).
// Frequency slot i holds wavenumber k = i for i < N/2 and k = i - N
// otherwise, at angular frequency xi = 2*pi*k/L. The forward transform is
// normalized so that the pure mode e^{i xi.x} has coefficient exactly 1:
//
//   c_k = N^{-d} sum_x f(x) e^{-i xi_k . x},   f(x) = sum_k c_k e^{i xi_k . x}.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bilap {

using cplx = std::complex<double>;

/// A point in frequency (or physical) space. One-dimensional grids leave the
/// second component at zero so Euclidean norms work uniformly.
using FreqVec = std::array<double, 2>;

inline double norm2(const FreqVec& v) { return v[0] * v[0] + v[1] * v[1]; }
inline double length(const FreqVec& v) { return std::sqrt(norm2(v)); }

class TorusGrid {
 public:
  /// Throws DomainError unless dim is 1 or 2, n >= 8 is a power of two and
  /// period > 0.
  TorusGrid(int dim, int n, double period);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double period() const { return period_; }
  double spacing() const { return period_ / n_; }
  double cell_volume() const;
  double frequency_step() const;
  std::size_t size() const { return size_; }

  /// Wavenumber stored at slot `slot` of one axis.
  int wavenumber(int slot) const { return slot < n_ / 2 ? slot : slot - n_; }
  /// Slot holding wavenumber k; requires -N/2 <= k < N/2.
  int slot(int k) const { return k >= 0 ? k : k + n_; }
  bool representable(int k) const { return k >= -n_ / 2 && k < n_ / 2; }

  std::array<int, 2> axis_slots(std::size_t flat) const;
  std::size_t flat(int slot0, int slot1 = 0) const;
  std::array<int, 2> wavenumbers(std::size_t flat) const;
  FreqVec frequency(std::size_t flat) const;
  FreqVec position(std::size_t flat) const;

  bool operator==(const TorusGrid& other) const = default;

 private:
  int dim_;
  int n_;
  double period_;
  std::size_t size_;
};

class SpectralField {
 public:
  static SpectralField from_space(const TorusGrid& grid, std::vector<cplx> values);
  static SpectralField from_frequency(const TorusGrid& grid, std::vector<cplx> coefficients);
  static SpectralField zeros(const TorusGrid& grid);

  const TorusGrid& grid() const { return grid_; }
  bool has_space() const { return space_valid_; }
  bool has_frequency() const { return freq_valid_; }
  bool mean_projected() const { return mean_projected_; }

  /// Throws std::logic_error if the representation is not valid.
  std::span<const cplx> space() const;
  std::span<const cplx> frequency() const;

 private:
  explicit SpectralField(const TorusGrid& grid) : grid_(grid) {}

  friend SpectralField forward_transform(SpectralField f);
  friend SpectralField inverse_transform(SpectralField f);
  friend SpectralField project_mean(SpectralField f);

  TorusGrid grid_;
  std::vector<cplx> space_;
  std::vector<cplx> freq_;
  bool space_valid_ = false;
  bool freq_valid_ = false;
  bool mean_projected_ = false;
};

/// Populates the frequency representation. Idempotent.
SpectralField forward_transform(SpectralField f);
/// Populates the space representation. Idempotent.
SpectralField inverse_transform(SpectralField f);
/// Both representations valid.
SpectralField synchronized(SpectralField f);

/// Copies of one representation, transforming when necessary.
std::vector<cplx> spectrum_of(const SpectralField& f);
std::vector<cplx> values_of(const SpectralField& f);

/// Zeroes the k = 0 coefficient exactly.
SpectralField project_mean(SpectralField f);

/// Zeroes every coefficient with some |k_i| > kmax.
SpectralField band_project(const SpectralField& f, int kmax);

/// Fraction of spectral energy sitting at |k_i| >= N/3 on some axis.
double band_excess(const SpectralField& f);
/// Throws BandLimitExceeded when band_excess(f) > 1e-10.
void require_band_limited(const SpectralField& f, const char* what);

/// Exact product of two band-limited fields: zero-pad to 2N per axis,
/// multiply in space, truncate back to the N-grid wavenumbers.
SpectralField dealiased_product(const SpectralField& f, const SpectralField& g);

/// The same trigonometric polynomial on a grid with factor*N points per axis.
SpectralField refine(const SpectralField& f, int factor = 2);

/// a*f + b*g on a common grid (frequency side when both have it).
SpectralField combine(cplx a, const SpectralField& f, cplx b, const SpectralField& g);

/// Field of |f(x)| (or |f(x)|^power) as a real-valued space field.
SpectralField modulus(const SpectralField& f, double power = 1.0);

double max_abs_difference(const SpectralField& f, const SpectralField& g);
double max_abs(const SpectralField& f);

// Serialization: "BLAP1" magic, u32 dim, u32 N per axis, f64 L, then N^d
// little-endian (re, im) f64 pairs of the space values in row-major order.
void write_field(const std::string& path, const SpectralField& f);
SpectralField read_field(const std::string& path);
/// CSV with one row per grid point: index columns, then re, im.
void write_field_csv(const std::string& path, const SpectralField& f);

}  // namespace bilap
