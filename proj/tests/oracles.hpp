#pragma once

// Brute-force references shared by the unit tests. Everything here is
// written directly from the definitions, without the library's FFT path.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "bilap/spectral_core.hpp"

namespace oracle {

using bilap::cplx;
using bilap::FreqVec;
using bilap::SpectralField;
using bilap::TorusGrid;

inline constexpr double kPi = 3.14159265358979323846;

/// c_k = N^-d sum_x f(x) e^{-i xi_k . x}, O(N^{2d}).
inline std::vector<cplx> dft(const TorusGrid& g, const std::vector<cplx>& v) {
  std::vector<cplx> out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const FreqVec xi = g.frequency(k);
    cplx acc = 0.0;
    for (std::size_t p = 0; p < g.size(); ++p) {
      const FreqVec x = g.position(p);
      acc += v[p] * std::polar(1.0, -(xi[0] * x[0] + xi[1] * x[1]));
    }
    out[k] = acc / double(g.size());
  }
  return out;
}

/// f(x) = sum_k c_k e^{i xi_k . x}.
inline std::vector<cplx> idft(const TorusGrid& g, const std::vector<cplx>& c) {
  std::vector<cplx> out(g.size());
  for (std::size_t p = 0; p < g.size(); ++p) {
    const FreqVec x = g.position(p);
    cplx acc = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const FreqVec xi = g.frequency(k);
      acc += c[k] * std::polar(1.0, xi[0] * x[0] + xi[1] * x[1]);
    }
    out[p] = acc;
  }
  return out;
}

/// Spectrum of the product: sum over k1 + k2 = k of a_k1 b_k2, keeping only
/// sums that land on the grid's wavenumber range.
inline std::vector<cplx> convolve(const TorusGrid& g, const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (a[i] == cplx()) continue;
    const auto ki = g.wavenumbers(i);
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (b[j] == cplx()) continue;
      const auto kj = g.wavenumbers(j);
      const int k0 = ki[0] + kj[0], k1 = ki[1] + kj[1];
      if (!g.representable(k0) || !g.representable(k1)) continue;
      out[g.flat(g.slot(k0), g.dim() == 1 ? 0 : g.slot(k1))] += a[i] * b[j];
    }
  }
  return out;
}

/// Random complex coefficients on |k_i| <= band, zero mean unless keep_mean.
inline std::vector<cplx> random_spectrum(const TorusGrid& g, int band, std::mt19937_64& rng, bool keep_mean = false) {
  std::normal_distribution<double> n;
  std::vector<cplx> c(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto k = g.wavenumbers(i);
    if (std::abs(k[0]) <= band && std::abs(k[1]) <= band) c[i] = {n(rng), n(rng)};
  }
  if (!keep_mean) c[0] = 0.0;
  return c;
}

inline SpectralField random_field(const TorusGrid& g, int band, std::mt19937_64& rng, bool keep_mean = false) {
  return bilap::synchronized(SpectralField::from_frequency(g, random_spectrum(g, band, rng, keep_mean)));
}

inline std::vector<cplx> random_values(const TorusGrid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  std::vector<cplx> v(g.size());
  for (auto& x : v) x = {n(rng), n(rng)};
  return v;
}

/// Pure mode e^{i xi . x} for wavenumbers (k0, k1).
inline SpectralField mode(const TorusGrid& g, int k0, int k1 = 0, cplx amplitude = 1.0) {
  std::vector<cplx> c(g.size());
  c[g.flat(g.slot(k0), g.dim() == 1 ? 0 : g.slot(k1))] = amplitude;
  return bilap::synchronized(SpectralField::from_frequency(g, std::move(c)));
}

inline double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Periodic Gaussian exp(-|x - c|^2 / (2 w^2)) on the grid (minimum image).
inline SpectralField gaussian(const TorusGrid& g, double w, FreqVec centre) {
  std::vector<cplx> v(g.size());
  const double L = g.period();
  for (std::size_t p = 0; p < g.size(); ++p) {
    const FreqVec x = g.position(p);
    double r2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      double u = std::remainder(x[a] - centre[a], L);
      r2 += u * u;
    }
    v[p] = std::exp(-0.5 * r2 / (w * w));
  }
  return bilap::synchronized(SpectralField::from_space(g, std::move(v)));
}

}  // namespace oracle
