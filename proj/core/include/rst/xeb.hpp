#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rst/random_states.hpp"

namespace rst {

enum class SampleProvenance { SimulatedFromState, Uniform, ExternalFile };

struct BitstringSample {
  std::size_t qubits = 0;                // L
  std::vector<std::uint64_t> samples;    // m entries in [0, 2^L)
  SampleProvenance provenance = SampleProvenance::SimulatedFromState;
};

/// Born-rule probabilities |c_j|^2 of a state.
std::vector<double> probs_from_state(const StateVector& phi);

/// Draw m bitstrings from the Born distribution of a normalized state via
/// the cumulative distribution (compensated summation) and binary search.
BitstringSample sample_from_state(const StateVector& phi, std::size_t m,
                                  SeedSpec seed);

/// m uniform bitstrings over L qubits.
BitstringSample sample_uniform(std::size_t qubits, std::size_t m, SeedSpec seed);

/// c_U = -(1/m) sum_j log p(j), in nats. Probabilities below the double
/// underflow floor are clipped at log p = -745 (counted, not silently -inf).
double cross_entropy(std::span<const double> probs, const BitstringSample& sample,
                     std::size_t* clipped = nullptr);

/// alpha = log D + gamma + (1/m) sum log p(j), sample-estimated.
double alpha_metric(std::span<const double> probs, const BitstringSample& sample);

/// alpha = log D + gamma + sum_j p(j) log p(j), exact full-distribution form.
double alpha_metric_exact(std::span<const double> probs);

/// Standard deviation of the sampled alpha for m samples over dimension D.
/// For m < D the sample is treated as an index subset drawn without
/// replacement (depletion factor 1 - m/D); for m >= D the with-replacement
/// form is used.
double alpha_stddev(std::size_t dim, std::size_t m);

/// PolyGamma(0, x) for x > 0, accurate to ~1e-12.
double digamma(double x);

/// Unique mu > -1 with log D - digamma(mu+1) = c_u; residual < 1e-10.
double solve_mu(double c_u, std::size_t dim);

/// Tilted distribution p_V(j) = p_U(j)^mu / sum_k p_U(k)^mu (log-domain).
std::vector<double> maxent_distribution(std::span<const double> probs, double mu);

/// Observation counts per bitstring from a sample.
std::vector<std::pair<std::uint64_t, std::uint64_t>> counts_from_sample(
    const BitstringSample& sample);

/// psi_X = sum_j n_j log(n_j / (m p_X(j))) >= 0 over observed bins.
double hypothesis_psi(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counts,
    std::span<const double> probs, std::size_t m);

struct HaarEntropyStats {
  double cross_entropy_exact;    // digamma(D+mu) - digamma(mu+1)
  double cross_entropy_large_d;  // log D - digamma(mu+1)
  double entropy_variance;       // Var[sum p log p] = (pi^2-9)/(3D)
  double subset_variance;        // variance of the J-sample estimate
};

HaarEntropyStats haar_entropy_stats(std::size_t dim, double mu, std::size_t j_samples);

struct CrossEntropyReport {
  double c_u = 0.0;
  double alpha = 0.0;
  double mu = 0.0;
  double psi = 0.0;
  double alpha_sigma = 0.0;
  std::size_t m = 0;
  std::size_t dim = 0;
  std::size_t clipped = 0;
};

/// Full per-sample analytics: c_U, alpha, solved mu, hypothesis psi.
CrossEntropyReport xeb_report(std::span<const double> probs,
                              const BitstringSample& sample);

}  // namespace rst
