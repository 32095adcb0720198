#include "rst/dense.hpp"

namespace rst {

Eigen::MatrixXcd densify(const LinearOperator& op, std::size_t max_dim) {
  const std::size_t d = op.dim();
  if (d > max_dim)
    throw ResourceError("densify: dimension " + std::to_string(d) +
                        " exceeds the dense cap of " + std::to_string(max_dim));
  Eigen::MatrixXcd m(d, d);
  std::vector<cplx> e(d), col(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::fill(e.begin(), e.end(), cplx{});
    e[j] = 1.0;
    op.apply(e, col);
    for (std::size_t i = 0; i < d; ++i) m(i, j) = col[i];
  }
  return m;
}

Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& h, cplx z) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success)
    throw NumericalError("expm_hermitian: eigendecomposition failed");
  const auto& w = es.eigenvalues();
  const auto& v = es.eigenvectors();
  Eigen::VectorXcd ph(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) ph(i) = std::exp(z * w(i));
  return v * ph.asDiagonal() * v.adjoint();
}

}  // namespace rst
