#pragma once

#include <span>

#include "bilap/spectral_core.hpp"

namespace bilap::detail {

// Unnormalized in-place DFTs over a row-major array of extent n^dim,
// dim from 1 to 4.
// sign = -1 computes sum_x f(x) e^{-2 pi i k x / n}; sign = +1 the inverse sum.
void fft_in_place(int dim, int n, int sign, std::span<cplx> data);

}  // namespace bilap::detail
