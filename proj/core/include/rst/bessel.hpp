#pragma once

#include <cstddef>
#include <vector>

namespace rst {

/// J_0(x), J_1(x), ..., J_kmax(x) by Miller's downward recurrence,
/// normalized with J_0 + 2*sum_k J_2k = 1. Accurate to ~1e-14 relative
/// for the dominant orders. x may be negative (J_k(-x) = (-1)^k J_k(x)).
std::vector<double> bessel_j_array(std::size_t kmax, double x);

/// I_0(x), ..., I_kmax(x) scaled by e^{-|x|} (so entries stay bounded),
/// normalized with I_0 + 2*sum_k I_k = e^x. x may be negative
/// (I_k(-x) = (-1)^k I_k(x)).
std::vector<double> bessel_i_scaled_array(std::size_t kmax, double x);

}  // namespace rst
