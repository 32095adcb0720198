#include "rst/fft.hpp"

#include <bit>
#include <cmath>

namespace rst {

void fft_radix2(std::vector<cplx>& data, int sign) {
  const std::size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw SpecError("fft_radix2: size must be a power of two");
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * kPi / double(len);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        cplx u = data[i + k];
        cplx t = w * data[i + k + len / 2];
        data[i + k] = u + t;
        data[i + k + len / 2] = u - t;
        w *= wlen;
      }
    }
  }
}

std::vector<cplx> dft_direct(const std::vector<cplx>& data, int sign) {
  const std::size_t n = data.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    KahanSum re, im;
    for (std::size_t j = 0; j < n; ++j) {
      double ang = sign * 2.0 * kPi * double(j) * double(k) / double(n);
      cplx t = data[j] * cplx(std::cos(ang), std::sin(ang));
      re.add(t.real());
      im.add(t.imag());
    }
    out[k] = {re.value(), im.value()};
  }
  return out;
}

std::vector<cplx> dft(const std::vector<cplx>& data, int sign) {
  const std::size_t n = data.size();
  if (n != 0 && (n & (n - 1)) == 0) {
    std::vector<cplx> out = data;
    fft_radix2(out, sign);
    return out;
  }
  return dft_direct(data, sign);
}

}  // namespace rst
