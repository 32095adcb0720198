#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rst {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = 0.5772156649015329;

/// Thrown when a model/estimator specification is inconsistent.
struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a request exceeds the configured resource caps.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a numerical procedure cannot reach its accuracy target.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Compensated (Kahan) accumulator.
class KahanSum {
 public:
  void add(double x) {
    double y = x - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double norm2_compensated(std::span<const cplx> v) {
  KahanSum s;
  for (const cplx& z : v) s.add(std::norm(z));
  return s.value();
}

inline cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  KahanSum re, im;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cplx t = std::conj(a[i]) * b[i];
    re.add(t.real());
    im.add(t.imag());
  }
  return {re.value(), im.value()};
}

}  // namespace rst
