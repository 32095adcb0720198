#pragma once

#include <Eigen/Dense>

#include "rst/operator.hpp"

namespace rst {

/// Materialize a matrix-free operator column by column (small dimensions
/// only; used by oracles and the fidelity module).
Eigen::MatrixXcd densify(const LinearOperator& op, std::size_t max_dim = 4096);

/// e^{zH} for Hermitian H via full diagonalization.
Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& h, cplx z);

}  // namespace rst
