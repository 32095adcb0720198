#pragma once

#include <cstddef>
#include <vector>

#include "rst/common.hpp"
#include "rst/rng.hpp"

namespace rst {

/// Dense complex state vector of Hilbert-space dimension dim.
struct StateVector {
  std::size_t dim = 0;
  std::vector<cplx> amps;

  StateVector() = default;
  explicit StateVector(std::size_t d) : dim(d), amps(d) {}

  double squared_norm() const { return norm2_compensated(amps); }
};

/// The three random-state families and their exact low-order moments.
///
/// GaussianNormalized: complex Gaussian amplitudes normalized to the unit
/// sphere (Haar-uniform). GaussianRaw: same amplitudes divided by sqrt(D),
/// not exactly normalized. RandomPhase: equal moduli 1/sqrt(D), uniform
/// phases.
enum class RandomStateKind {
  GaussianNormalized,  // Case A
  GaussianRaw,         // Case B
  RandomPhase,         // Case C
};

/// E[|c|^2] = 1/D for every kind.
double moment_m2(RandomStateKind kind, std::size_t dim);
/// E[|c|^2 |c'|^2] for two distinct amplitudes.
double moment_m22(RandomStateKind kind, std::size_t dim);
/// E[|c|^4].
double moment_m4(RandomStateKind kind, std::size_t dim);

/// Gaussian state via Muller's method: 2D standard normals, then either
/// normalization to the unit sphere (Case A) or division by sqrt(D) (Case B).
StateVector gen_gaussian_muller(std::size_t dim, SeedSpec seed, bool normalize);

/// Haar-uniform state via octant coordinates: moduli from Y_k = r_k^{1/2k},
/// independent uniform phases. Statistically equivalent to Case A.
StateVector gen_gaussian_octant(std::size_t dim, SeedSpec seed);

/// Case C: c_j = e^{i a_j} / sqrt(D), a_j uniform on [0, 2pi).
StateVector gen_random_phase(std::size_t dim, SeedSpec seed);

StateVector generate_state(RandomStateKind kind, std::size_t dim, SeedSpec seed);

/// Density of z = |c_j|^2 for a Haar-uniform state: (D-1)(1-z)^{D-2} on [0,1].
double porter_thomas_pdf(double z, std::size_t dim);

}  // namespace rst
