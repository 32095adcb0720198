#pragma once

#include <vector>

#include "rst/operator.hpp"
#include "rst/propagators.hpp"
#include "rst/random_states.hpp"

namespace rst {

enum class AverageMode { M1, M2 };

/// One random-state realization: x = D<Phi|X|Phi>, y = <Phi|Phi> (trace
/// estimation) or the analogous thermal pair.
struct RealizationRecord {
  cplx x;
  double y;
};

struct Combined {
  cplx value;
  double err;  // jackknife over realizations
};

/// M1 = (1/R) sum x_i/y_i; M2 = (sum x_i)/(sum y_i).
Combined combine_realizations(const std::vector<RealizationRecord>& records,
                              AverageMode mode);

struct TraceEstimate {
  cplx value;
  double err = 0.0;
  double predicted_variance = -1.0;  // single-realization variance; <0 if unknown
  std::size_t realizations = 0;
  AverageMode mode = AverageMode::M2;
  std::vector<RealizationRecord> records;
};

/// Exact traces of the target operator, for variance prediction.
struct OperatorTraces {
  cplx tr_x;
  double tr_xxdag = -1.0;     // Tr X X^dag, < 0 if unknown
  double sum_diag_sq = -1.0;  // sum_j |X_jj|^2, < 0 if unknown
};

/// Closed-form variance of D<Phi|X|Phi>/<Phi|Phi> for one realization:
/// (D TrXX^dag - |TrX|^2)/(D+1) for normalized Gaussian states,
/// (D TrXX^dag - |TrX|^2)/D for raw Gaussian states,
/// TrXX^dag - sum_j |X_jj|^2 for random-phase states.
double predicted_trace_variance(RandomStateKind kind, const OperatorTraces& tr,
                                std::size_t dim);

/// Tr X estimated from R random-state realizations.
TraceEstimate estimate_trace(const LinearOperator& x, RandomStateKind kind,
                             std::size_t realizations, AverageMode mode,
                             SeedSpec seed,
                             const OperatorTraces* traces = nullptr);

struct VarianceCheckReport {
  double empirical_variance;
  double predicted_variance;
  double ratio;           // empirical/predicted
  std::size_t trials;
};

/// Sample variance of D<Phi|X|Phi>/<Phi|Phi> vs the closed form.
VarianceCheckReport empirical_variance_check(const LinearOperator& x,
                                             RandomStateKind kind,
                                             std::size_t trials, SeedSpec seed,
                                             const OperatorTraces& traces);

// ---- ratio-of-random-variables predictions (three-term Taylor) ----

struct RatioMoments {
  double ex, ey;      // means of numerator and denominator
  double varx, vary;
  double covxy;
};

struct RatioStats {
  double mean, variance;
};

/// E[x/y] and Var[x/y] to second order in the fluctuations.
RatioStats predicted_ratio_stats(const RatioMoments& m);

/// Cov[<Phi|X|Phi>, <Phi|W|Phi>] from the exact second/fourth moments of
/// the chosen state family.
double bilinear_covariance(RandomStateKind kind, std::size_t dim, cplx tr_x,
                           cplx tr_w, double tr_xwdag, double sum_diag_xw);

/// RatioMoments for x = D<Phi|X|Phi>, y = <Phi|Phi>.
RatioMoments ratio_moments_for_kind(RandomStateKind kind,
                                    const OperatorTraces& tr, std::size_t dim);

// ---- spectra (DOS / LDOS / ESR) ----

struct SpectrumParams {
  std::size_t n_samples = 256;  // N; 2N frequency bins are produced
  double tau = 0.0;             // time step; 0 -> 0.8*pi/bound
  double sigma = 0.0;           // Gaussian window width; 0 -> T/3
  RandomStateKind kind = RandomStateKind::GaussianNormalized;
  std::size_t realizations = 1;
  SeedSpec seed{};
  std::size_t substeps = 5;     // Trotter refinement l
};

struct SpectrumResult {
  std::vector<double> omega;  // omega_k = k*pi/T for k = -N..N-1
  std::vector<double> value;
  std::size_t n_samples = 0;
  double t_total = 0.0, tau = 0.0, sigma = 0.0;
  std::size_t realizations = 0;
};

/// Resolve tau against the Nyquist criterion tau < pi/bound; throws a
/// SpecError naming the largest admissible step when violated.
double resolve_tau(double tau, double bound);

/// Window + symmetric extension f(-t) = f(t)^* + DFT of survival samples
/// f[j], j = 0..N. prefactor multiplies every bin.
SpectrumResult spectrum_from_survival(const std::vector<cplx>& f, double tau,
                                      double sigma, double prefactor);

/// Density of states from Trotterized survival amplitudes of random states,
/// averaged over realizations in the amplitude domain.
SpectrumResult dos(const Trotter2& u, double norm_bound, std::size_t dim,
                   const SpectrumParams& p);

/// Local density of states of a given (normalized) state.
SpectrumResult ldos(const Trotter2& u, double norm_bound, const StateVector& psi,
                    const SpectrumParams& p);

// ---- thermal estimators ----

TraceEstimate thermal_expectation(const LinearOperator& h,
                                  const LinearOperator& y, double beta,
                                  RandomStateKind kind, std::size_t realizations,
                                  AverageMode mode, SeedSpec seed);

struct ThermalSeries {
  std::vector<double> beta;
  std::vector<double> energy, energy_err;          // <H>
  std::vector<double> energy2, energy2_err;        // <H^2>
  std::vector<double> specific_heat, specific_heat_err;
};

/// C(beta) = beta^2 (<H^2> - <H>^2) / n_sites, with <H> and <H^2> sharing
/// the same thermal states; errors by jackknife over realizations.
ThermalSeries specific_heat(const LinearOperator& h,
                            const std::vector<double>& beta_grid,
                            std::size_t n_sites, RandomStateKind kind,
                            std::size_t realizations, AverageMode mode,
                            SeedSpec seed);

/// Tr Z(2beta) / (Tr Z(beta))^2 with Z(b) = e^{-bH}; bounded by [1/D, 1].
double partition_ratio(const LinearOperator& h, double beta,
                       RandomStateKind kind, std::size_t realizations,
                       SeedSpec seed);

// ---- dynamic correlations ----

struct CorrelationSeries {
  std::vector<double> t;
  std::vector<cplx> c;
};

/// C(t) = <phi(t)| A |chi(t)> / <Phi|e^{-beta H}|Phi> with
/// phi(t) = e^{-iHt} e^{-beta H/2} Phi and chi(t) = e^{-iHt} A e^{-beta H/2} Phi;
/// ratio-of-sums combination across realizations.
CorrelationSeries operator_correlation(const LinearOperator& h,
                                       const LinearOperator& a, double beta,
                                       double t_max, std::size_t n_steps,
                                       RandomStateKind kind,
                                       std::size_t realizations, SeedSpec seed);

struct DensityProfile {
  std::vector<double> t;
  std::size_t sites = 0;
  std::vector<double> p;  // time-major: p[ti*sites + l]
};

/// Infinite-temperature density spreading on a spin chain:
/// psi(t) = e^{-itH} n_src Phi, p_l(t) = 2 <psi(t)|n_l|psi(t)>,
/// averaged over realizations.
DensityProfile density_profile(const SpinHamiltonian& h, std::size_t source,
                               double t_max, std::size_t n_steps,
                               std::size_t realizations, SeedSpec seed);

/// ESR line shape: cosine transform over [-T, T] of
/// C(t) = Re <a(t)| Mx |b(t)> / <Phi|e^{-beta H}|Phi>, a(0) = e^{-bH/2}Phi,
/// b(0) = Mx a(0).
SpectrumResult esr_spectrum(const SpinHamiltonian& h, double beta,
                            const SpectrumParams& p);

}  // namespace rst
