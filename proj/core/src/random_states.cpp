#include "rst/random_states.hpp"

#include <cmath>

namespace rst {

double moment_m2(RandomStateKind, std::size_t dim) {
  return 1.0 / static_cast<double>(dim);
}

double moment_m22(RandomStateKind kind, std::size_t dim) {
  double d = static_cast<double>(dim);
  switch (kind) {
    case RandomStateKind::GaussianNormalized:
      return 1.0 / (d * (d + 1.0));
    case RandomStateKind::GaussianRaw:
    case RandomStateKind::RandomPhase:
      return 1.0 / (d * d);
  }
  return 0.0;
}

double moment_m4(RandomStateKind kind, std::size_t dim) {
  double d = static_cast<double>(dim);
  switch (kind) {
    case RandomStateKind::GaussianNormalized:
      return 2.0 / (d * (d + 1.0));
    case RandomStateKind::GaussianRaw:
      return 2.0 / (d * d);
    case RandomStateKind::RandomPhase:
      return 1.0 / (d * d);
  }
  return 0.0;
}

StateVector gen_gaussian_muller(std::size_t dim, SeedSpec seed, bool normalize) {
  if (dim == 0) throw SpecError("gen_gaussian_muller: dimension must be >= 1");
  Rng rng(seed);
  StateVector sv(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    sv.amps[j] = cplx(rng.normal(), rng.normal());
  }
  double scale;
  if (normalize) {
    scale = 1.0 / std::sqrt(norm2_compensated(sv.amps));
  } else {
    // real and imaginary parts are unit normals, so E|c_j|^2 = 1/D needs 1/sqrt(2D)
    scale = 1.0 / std::sqrt(2.0 * static_cast<double>(dim));
  }
  for (cplx& z : sv.amps) z *= scale;
  return sv;
}

StateVector gen_gaussian_octant(std::size_t dim, SeedSpec seed) {
  if (dim == 0) throw SpecError("gen_gaussian_octant: dimension must be >= 1");
  Rng rng(seed);
  StateVector sv(dim);
  if (dim == 1) {
    double phi = 2.0 * kPi * rng.uniform();
    sv.amps[0] = std::polar(1.0, phi);
    return sv;
  }
  // t_k = log(r_k)/k so that y_k^2 = exp(t_k); suffix sums give the modulus
  // products in log space.
  std::vector<double> t(dim);  // index k = 1..dim-1 used
  for (std::size_t k = 1; k < dim; ++k) {
    t[k] = std::log(rng.uniform_pos()) / static_cast<double>(k);
  }
  // s[j] = sum_{k=j}^{dim-1} t_k / 2 = log of tail product of y_k
  std::vector<double> s(dim + 1, 0.0);
  for (std::size_t k = dim - 1; k >= 1; --k) s[k] = s[k + 1] + 0.5 * t[k];
  std::vector<double> x(dim);
  // moduli: x_0 = sqrt(1-y_1^2) * tail(2), x_1 = y_1 * tail(2),
  //         x_j = sqrt(1-y_j^2) * tail(j+1) for j >= 2   (tail(m) = prod_{k>=m} y_k)
  auto one_minus_y2 = [&](std::size_t k) {
    // 1 - exp(t_k), guarded for |t_k/1| small
    return (std::abs(t[k]) < 1e-8) ? -t[k] : -std::expm1(t[k]);
  };
  x[0] = std::sqrt(one_minus_y2(1)) * std::exp(s[2]);
  x[1] = std::exp(s[1]);
  for (std::size_t j = 2; j < dim; ++j) {
    x[j] = std::sqrt(one_minus_y2(j)) * std::exp(s[j + 1]);
  }
  for (std::size_t j = 0; j < dim; ++j) {
    double phi = 2.0 * kPi * rng.uniform();
    sv.amps[j] = std::polar(x[j], phi);
  }
  return sv;
}

StateVector gen_random_phase(std::size_t dim, SeedSpec seed) {
  if (dim == 0) throw SpecError("gen_random_phase: dimension must be >= 1");
  Rng rng(seed);
  StateVector sv(dim);
  double mod = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t j = 0; j < dim; ++j) {
    sv.amps[j] = std::polar(mod, 2.0 * kPi * rng.uniform());
  }
  return sv;
}

StateVector generate_state(RandomStateKind kind, std::size_t dim, SeedSpec seed) {
  switch (kind) {
    case RandomStateKind::GaussianNormalized:
      return gen_gaussian_muller(dim, seed, true);
    case RandomStateKind::GaussianRaw:
      return gen_gaussian_muller(dim, seed, false);
    case RandomStateKind::RandomPhase:
      return gen_random_phase(dim, seed);
  }
  throw SpecError("generate_state: unknown kind");
}

double porter_thomas_pdf(double z, std::size_t dim) {
  if (dim < 2) throw SpecError("porter_thomas_pdf: dimension must be >= 2");
  if (z < 0.0 || z > 1.0) return 0.0;
  double d = static_cast<double>(dim);
  return (d - 1.0) * std::pow(1.0 - z, d - 2.0);
}

}  // namespace rst
