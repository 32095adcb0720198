#include "rst/bessel.hpp"

#include <cmath>

#include "rst/common.hpp"

namespace rst {

namespace {

// Start the downward recurrence far enough above max(kmax, |x|) that the
// seeded minimal solution has converged at order kmax.
std::size_t start_order(std::size_t kmax, double ax) {
  std::size_t base = std::max<double>(double(kmax), ax);
  return base + 60 + static_cast<std::size_t>(2.0 * std::sqrt(base + 1.0));
}

}  // namespace

std::vector<double> bessel_j_array(std::size_t kmax, double x) {
  std::vector<double> out(kmax + 1, 0.0);
  const double ax = std::abs(x);
  if (ax == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const std::size_t m = start_order(kmax, ax);
  // downward: J_{k-1} = (2k/x) J_k - J_{k+1}
  double jp = 0.0, jc = 1e-300;
  double norm = 0.0;  // accumulates J_0 + 2*sum J_2k
  for (std::size_t k = m; k-- > 0;) {
    double jm = (2.0 * double(k + 1) / ax) * jc - jp;
    jp = jc;
    jc = jm;
    if (k <= kmax) out[k] = jc;
    if (k % 2 == 0) norm += (k == 0) ? jc : 2.0 * jc;
    if (std::abs(jc) > 1e250) {  // rescale to avoid overflow
      jc *= 1e-250;
      jp *= 1e-250;
      norm *= 1e-250;
      for (double& o : out) o *= 1e-250;
    }
  }
  if (norm == 0.0) throw NumericalError("bessel_j_array: normalization failed");
  for (double& o : out) o /= norm;
  if (x < 0.0)
    for (std::size_t k = 1; k <= kmax; k += 2) out[k] = -out[k];
  return out;
}

std::vector<double> bessel_i_scaled_array(std::size_t kmax, double x) {
  std::vector<double> out(kmax + 1, 0.0);
  const double ax = std::abs(x);
  if (ax == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const std::size_t m = start_order(kmax, ax);
  // downward: I_{k-1} = (2k/x) I_k + I_{k+1} (positive argument)
  double ip = 0.0, ic = 1e-300;
  double norm = 0.0;  // accumulates I_0 + 2*sum_{k>=1} I_k = e^{ax}
  for (std::size_t k = m; k-- > 0;) {
    double im = (2.0 * double(k + 1) / ax) * ic + ip;
    ip = ic;
    ic = im;
    if (k <= kmax) out[k] = ic;
    norm += (k == 0) ? ic : 2.0 * ic;
    if (std::abs(ic) > 1e250) {
      ic *= 1e-250;
      ip *= 1e-250;
      norm *= 1e-250;
      for (double& o : out) o *= 1e-250;
    }
  }
  if (norm == 0.0) throw NumericalError("bessel_i_scaled_array: normalization failed");
  // out/norm = I_k / e^{ax} = e^{-|x|} I_k(|x|)
  for (double& o : out) o /= norm;
  if (x < 0.0)
    for (std::size_t k = 1; k <= kmax; k += 2) out[k] = -out[k];
  return out;
}

}  // namespace rst
