#pragma once

// Frame decomposition of two-dimensional fields over dyadic cubes:
// coefficients are cube-normalized samples of energy-normalized
// Littlewood-Paley pieces at the lower-left cube corners.

#include <string>
#include <vector>

#include "bilap/littlewood_paley.hpp"
#include "bilap/spectral_core.hpp"

namespace bilap {

struct DyadicCube {
  int j = 0;                     // side 2^-j
  std::array<int, 2> corner{};   // lower-left corner in units of the side, (t, x)
};

class CoefficientTree {
 public:
  struct Scale {
    int j = 0;
    int stride = 1;  // grid cells per cube side
    int count = 1;   // cubes per axis
    std::vector<cplx> coefficients;  // row-major over (corner_t, corner_x)
  };

  CoefficientTree(const LPFamily& generator, std::vector<Scale> scales);

  const LPFamily& generator() const { return generator_; }
  const TorusGrid& grid() const { return generator_.grid(); }
  const std::vector<Scale>& scales() const { return scales_; }
  int j_min() const;
  int j_max() const;

  cplx coefficient(const DyadicCube& q) const;
  /// Sum of |coefficient|^2 over all cubes.
  double energy() const;
  /// Copy with every coefficient zero except the given cube, set to value.
  CoefficientTree single(const DyadicCube& q, cplx value) const;
  /// Copy with all coefficients multiplied by c.
  CoefficientTree scaled(cplx c) const;

 private:
  const Scale& scale(int j) const;

  LPFamily generator_;
  std::vector<Scale> scales_;
};

/// Finest usable scale: cube sides 2^-j must be whole multiples of the grid
/// spacing. Requires a power-of-two period.
int finest_cube_scale(const TorusGrid& grid);

/// Coefficients |Q|^{1/2} (psi_{2^-j} * f)(corner of Q) for every dyadic cube
/// from the generator's j_min to the finest cube scale. The generator must
/// be energy-normalized. ScaleRangeError when f carries energy at the zero
/// mode or beyond |xi| = 2^{finest scale}.
CoefficientTree analyze(const SpectralField& f, const LPFamily& generator);

/// sum_Q <f, psi_Q> psi_Q.
SpectralField synthesize(const CoefficientTree& tree);

/// (sum_Q (|Q|^{-1/2} |c_Q|)^2 chi_Q)^{1/2} as a real field.
SpectralField discrete_square_function(const CoefficientTree& tree);

/// mixed_norm(f) / hardy_mixed_norm(f); DegenerateInput when the Hardy norm
/// is below 1e-14.
double embedding_ratio(const SpectralField& f, double p, double q, const LPFamily& fam);

/// Rows: j, corner_t, corner_x, re, im.
void write_tree_csv(const std::string& path, const CoefficientTree& tree);

}  // namespace bilap
