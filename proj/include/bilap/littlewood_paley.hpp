#pragma once

// Dyadic frequency decomposition: the smooth radial cutoff, its annular
// differences, translated pieces, square functions, the three-term
// paraproduct split of a bilinear symbol, and the Fourier-series
// coefficients of the weighted cutoff.

#include <string>
#include <vector>

#include "bilap/operators.hpp"
#include "bilap/spectral_core.hpp"

namespace bilap {

/// Radial cutoff: 1 on [0,1], 0 on [2,inf), C-infinity in between.
double phi_profile(double r);
/// phi(r) - phi(2r), supported in [1/2, 2].
double psi_profile(double r);
/// Sum of psi(2^l r) over |l| <= 2; equals 1 on the support of psi.
double psi_tilde_profile(double r);
/// Smooth cutoff equal to 1 on [1/2, 2] and vanishing outside
/// [1/widened_radius, widened_radius]; psi * widened = psi.
double widened_profile(double r);
inline constexpr double widened_radius = 2.2;

class LPFamily {
 public:
  enum class Normalization {
    Partition,  // sum_j psi(2^-j xi) = 1
    Energy,     // sum_j |psi(2^-j xi)|^2 = 1 (square root of the partition profile)
  };

  LPFamily(const TorusGrid& grid, Normalization norm = Normalization::Partition);

  const TorusGrid& grid() const { return grid_; }
  Normalization normalization() const { return norm_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }

  /// Generator profile at radius r (psi, or sqrt(psi) for Energy).
  double generator(double r) const;
  /// generator(2^-j |xi|).
  double weight(int j, const FreqVec& xi) const;

  /// Max deviation of the partition (sum of weights, or of squared weights
  /// for Energy) from 1 over nonzero lattice frequencies.
  double certificate() const { return certificate_; }

 private:
  TorusGrid grid_;
  Normalization norm_;
  int j_min_;
  int j_max_;
  double certificate_;
};

LPFamily build_lp_family(const TorusGrid& grid);

/// Frequency-side multiplication by psi(2^-j xi).
SpectralField lp_piece(const SpectralField& f, int j, const LPFamily& fam);

struct TranslationIndex {
  std::array<int, 2> m{0, 0};
  double c0 = 64.0;
};

/// Frequency-side multiplication by exp(2 pi i 2^-j xi.m / c0) psi(2^-j xi).
SpectralField translated_lp_piece(const SpectralField& f, int j, const TranslationIndex& m, const LPFamily& fam);

/// (sum_j (2^{js} |translated piece j|)^2)^{1/2} as a real field.
SpectralField square_function(const SpectralField& f, const LPFamily& fam, const TranslationIndex& m = {},
                              double weight_s = 0.0);

struct ParaproductSymbols {
  BilinearSymbol low_high;   // high xi, low eta; derivative lands on f
  BilinearSymbol high_low;   // low xi, high eta; derivative lands on g
  BilinearSymbol high_high;  // comparable frequencies; derivative lands on g
};

/// Three symbols with
///   D^s T_m(f,g) = T_1(D^{s-nu} f, g) + T_2(f, D^{s-nu} g) + T_3(f, D^{s-nu} g).
/// Each vanishes where its singular denominator frequency is 0, and
/// |xi+eta|^s is taken as 0 at xi+eta = 0.
ParaproductSymbols paraproduct_split(const BilinearSymbol& m, double s, double nu, const LPFamily& fam);

struct CoefficientTable {
  double s = 0.0;
  double c0 = 64.0;
  int dim = 1;
  struct Entry {
    std::array<int, 2> m;
    cplx value;
  };
  std::vector<Entry> entries;  // all m with max |m_i| <= M_max

  /// Partial Fourier sum at xi (a point of the cube).
  cplx reconstruct(const FreqVec& xi) const;
  /// Largest |C_m| over entries with rounded |m| equal to radius.
  double magnitude_at(int radius) const;
};

/// |zeta|^s phi(zeta), the weighted cutoff being expanded.
double weighted_cutoff(double s, const FreqVec& zeta, int dim);

/// Coefficients C_m of the Fourier series of weighted_cutoff(s, xi/16) on
/// the cube [-c0/2, c0/2]^d. DomainError when the support radius 32 does
/// not fit the cube or M_max is too large for the quadrature.
CoefficientTable fourier_coefficients(double s, double c0, int m_max, const LPFamily& fam);

/// Rows: m components, re, im, |m|.
void write_coefficients_csv(const std::string& path, const CoefficientTable& table);
/// Rows: r, phi, psi, psi_tilde on [0, 4] with `samples` points.
void write_profile_csv(const std::string& path, int samples = 401);

}  // namespace bilap
