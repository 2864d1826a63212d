#pragma once

// Space-side evaluation of the bilinear fractional integral against a
// product of linear Riesz potentials, on R^d rather than the torus.
//
// Grid values are read as piecewise constant on cells centred at the grid
// points of [0,L)^d and zero outside, so both sides become finite sums of
// cell-integrated kernels.

#include <vector>

#include "bilap/spectral_core.hpp"

namespace bilap {

/// Normalizing constant of the Riesz potential of order a in dimension D,
/// i.e. the kernel of |xi|^-a is riesz_kernel_constant(D, a) |x|^(a-D).
double riesz_kernel_constant(int dim, double order);

/// Best constant K in I_nu(f,g) <= K I_{nu/2}f I_{nu/2}g for nonnegative f, g
/// under the kernel normalizations above.
double pointwise_bound_constant(int dim, double nu);

struct PointwiseBound {
  double constant = 0.0;      // K
  double max_ratio = 0.0;     // max over grid of lhs / rhs
  bool holds = false;         // lhs <= K rhs (1 + 1e-9) everywhere
  std::vector<double> lhs;    // |I_nu(f,g)|
  std::vector<double> rhs;    // I_{nu/2}|f| * I_{nu/2}|g|
};

/// Requires 0 < nu < 2d and fields on the same grid. Cost grows like N^{3d},
/// so keep N <= 128 for d = 1 and N <= 16 for d = 2.
PointwiseBound pointwise_potential_bound(double nu, const SpectralField& f, const SpectralField& g);

}  // namespace bilap
