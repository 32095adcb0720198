#pragma once

#include <span>

#include "rst/common.hpp"
#include "rst/random_states.hpp"

namespace rst {

/// Matrix-free Hermitian operator: all estimators interact with models only
/// through dim(), apply(), and the cheap spectral-norm upper bound
/// norm_bound_1() (maximum absolute column sum, Gershgorin-type).
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual std::size_t dim() const = 0;

  /// out = A * in. `in` and `out` must not alias; `out` is overwritten.
  virtual void apply(std::span<const cplx> in, std::span<cplx> out) const = 0;

  /// Upper bound on the spectral norm (max absolute column sum).
  virtual double norm_bound_1() const = 0;

  StateVector operator()(const StateVector& psi) const {
    if (psi.dim != dim()) throw SpecError("operator/state dimension mismatch");
    StateVector out(dim());
    apply(psi.amps, out.amps);
    return out;
  }
};

/// Real diagonal operator given by its entries (the "custom-diagonal" tag).
class DiagonalOperator final : public LinearOperator {
 public:
  explicit DiagonalOperator(std::vector<double> entries)
      : d_(std::move(entries)) {
    if (d_.empty()) throw SpecError("DiagonalOperator: empty diagonal");
  }

  std::size_t dim() const override { return d_.size(); }

  void apply(std::span<const cplx> in, std::span<cplx> out) const override {
    for (std::size_t j = 0; j < d_.size(); ++j) out[j] = d_[j] * in[j];
  }

  double norm_bound_1() const override {
    double m = 0.0;
    for (double x : d_) m = std::max(m, std::abs(x));
    return m;
  }

  const std::vector<double>& entries() const { return d_; }

 private:
  std::vector<double> d_;
};

}  // namespace rst
