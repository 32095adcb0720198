#pragma once

#include <vector>

#include "rst/common.hpp"

namespace rst {

/// In-place iterative radix-2 FFT; data.size() must be a power of two.
/// sign = -1 gives sum_j x_j e^{-2pi i jk/n}, sign = +1 the conjugate.
void fft_radix2(std::vector<cplx>& data, int sign);

/// Direct O(n^2) DFT with the same convention; correctness oracle and
/// fallback when n is not a power of two.
std::vector<cplx> dft_direct(const std::vector<cplx>& data, int sign);

/// Dispatch: radix-2 when the size is a power of two, direct otherwise.
std::vector<cplx> dft(const std::vector<cplx>& data, int sign);

}  // namespace rst
