#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rst/common.hpp"
#include "rst/rng.hpp"

namespace rst {

/// Quantum channel rho -> sum_a E_a rho E_a^dag given by dense operation
/// elements (desk scale, D <= 64). Need not be trace-preserving.
struct KrausChannel {
  std::size_t dim = 0;
  std::vector<Eigen::MatrixXcd> ops;

  /// ||sum E_a^dag E_a - I|| (Frobenius); trace-preserving iff < 1e-10.
  double completeness_defect() const;
  bool trace_preserving() const { return completeness_defect() < 1e-10; }
};

KrausChannel make_channel(std::vector<Eigen::MatrixXcd> ops);

/// F_ent = sum_a |Tr E_a|^2 / D^2.
double entanglement_fidelity(const KrausChannel& ch);

/// F_avg = sum_a (|Tr E_a|^2 + Tr E_a^dag E_a) / (D(D+1));
/// equals (D F_ent + 1)/(D+1) for trace-preserving channels.
double average_fidelity(const KrausChannel& ch);

struct McFidelity {
  double mean;
  double std_error;
};

/// Monte Carlo over Haar-random pure states:
/// F = E_psi[ sum_a |<psi|E_a|psi>|^2 ]; unbiased for average_fidelity.
McFidelity mc_average_fidelity(const KrausChannel& ch, std::size_t trials,
                               SeedSpec seed);

struct FourthMomentReport {
  double diag_all_equal;     // empirical E[|c_j|^4], expect 2/(D(D+1))
  double diag_pairs;         // empirical E[|c_j|^2 |c_k|^2], expect 1/(D(D+1))
  double off_diagonal_abs;   // |empirical E[c_j^* c_k c_l^* c_m]|, distinct indices
  std::size_t trials;
};

/// Empirical check of E[c_j^* c_k c_l^* c_m] = (d_jk d_lm + d_jm d_kl)/(D(D+1))
/// on Haar-random states.
FourthMomentReport fourth_moment_check(std::size_t dim, std::size_t trials,
                                       SeedSpec seed);

/// Random test channel: QR-orthonormalized Gaussian operation elements,
/// optionally rescaled so the channel is not trace-preserving.
KrausChannel random_channel(std::size_t dim, std::size_t n_ops, SeedSpec seed,
                            bool trace_preserving = true);

/// Depolarizing qubit channel {sqrt(1-p) I, sqrt(p/3) sx, sy, sz}.
KrausChannel depolarizing_channel(double p);

}  // namespace rst
