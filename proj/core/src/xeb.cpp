#include "rst/xeb.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

namespace rst {

namespace {

constexpr double kLogFloor = -745.0;  // below double underflow

double safe_log(double p, std::size_t* clipped) {
  if (p <= 0.0 || std::log(p) < kLogFloor) {
    if (clipped) ++*clipped;
    return kLogFloor;
  }
  return std::log(p);
}

}  // namespace

std::vector<double> probs_from_state(const StateVector& phi) {
  std::vector<double> p(phi.dim);
  for (std::size_t j = 0; j < phi.dim; ++j) p[j] = std::norm(phi.amps[j]);
  return p;
}

BitstringSample sample_from_state(const StateVector& phi, std::size_t m,
                                  SeedSpec seed) {
  if (m == 0) throw SpecError("sample_from_state: need m >= 1");
  const std::size_t d = phi.dim;
  if (d == 0 || (d & (d - 1)) != 0)
    throw SpecError("sample_from_state: dimension must be a power of two");
  const double nrm = phi.squared_norm();
  if (std::abs(nrm - 1.0) > 1e-9)
    throw SpecError("sample_from_state: state is not normalized");
  // cumulative Born distribution with compensated summation
  std::vector<double> cum(d);
  KahanSum acc;
  for (std::size_t j = 0; j < d; ++j) {
    acc.add(std::norm(phi.amps[j]));
    cum[j] = acc.value();
  }
  cum[d - 1] = 1.0;  // guard the top against rounding
  BitstringSample out;
  out.qubits = std::size_t(std::countr_zero(d));
  out.provenance = SampleProvenance::SimulatedFromState;
  out.samples.resize(m);
  Rng rng(seed);
  for (std::size_t i = 0; i < m; ++i) {
    const double u = rng.uniform();
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    out.samples[i] = std::uint64_t(it - cum.begin());
  }
  return out;
}

BitstringSample sample_uniform(std::size_t qubits, std::size_t m, SeedSpec seed) {
  if (m == 0) throw SpecError("sample_uniform: need m >= 1");
  if (qubits == 0 || qubits > 62) throw SpecError("sample_uniform: bad qubit count");
  BitstringSample out;
  out.qubits = qubits;
  out.provenance = SampleProvenance::Uniform;
  out.samples.resize(m);
  Rng rng(seed);
  const std::uint64_t mask = (std::uint64_t{1} << qubits) - 1;
  for (std::size_t i = 0; i < m; ++i) out.samples[i] = rng.next_u64() & mask;
  return out;
}

double cross_entropy(std::span<const double> probs, const BitstringSample& sample,
                     std::size_t* clipped) {
  if (sample.samples.empty()) throw SpecError("cross_entropy: empty sample");
  KahanSum s;
  std::size_t nclip = 0;
  for (std::uint64_t j : sample.samples) {
    if (j >= probs.size())
      throw SpecError("cross_entropy: bitstring " + std::to_string(j) +
                      " outside the distribution support");
    if (probs[j] <= 0.0)
      throw NumericalError("cross_entropy: zero probability for sampled bitstring " +
                           std::to_string(j));
    s.add(safe_log(probs[j], &nclip));
  }
  if (clipped) *clipped = nclip;
  return -s.value() / double(sample.samples.size());
}

double alpha_metric(std::span<const double> probs, const BitstringSample& sample) {
  const double c_u = cross_entropy(probs, sample);
  return std::log(double(probs.size())) + kEulerGamma - c_u;
}

double alpha_metric_exact(std::span<const double> probs) {
  KahanSum s;
  for (double p : probs)
    if (p > 0.0) s.add(p * std::log(p));
  return std::log(double(probs.size())) + kEulerGamma + s.value();
}

double alpha_stddev(std::size_t dim, std::size_t m) {
  const double d = double(dim), j = double(m);
  const double logd = std::log(d);
  // depletion factor 1 - J/D applies when the J scored entries form an index
  // subset drawn without replacement; for J >= D (bitstrings drawn with
  // replacement) the factor is dropped
  const double factor = (m < dim) ? (1.0 - j / d) : 1.0;
  const double v = factor / j *
                   ((kPi * kPi - 9.0) / 3.0 +
                    (logd + kEulerGamma - 2.0) * (logd + kEulerGamma - 2.0));
  return std::sqrt(std::max(0.0, v));
}

double digamma(double x) {
  if (!(x > 0.0)) throw SpecError("digamma: argument must be > 0");
  double result = 0.0;
  while (x < 8.0) {  // upward recurrence digamma(x) = digamma(x+1) - 1/x
    result -= 1.0 / x;
    x += 1.0;
  }
  // asymptotic series: log x - 1/(2x) - sum B_2n/(2n x^{2n})
  const double inv = 1.0 / x, inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv;
  static const double coef[] = {1.0 / 12.0,  -1.0 / 120.0, 1.0 / 252.0,
                                -1.0 / 240.0, 1.0 / 132.0, -691.0 / 32760.0,
                                1.0 / 12.0};
  double p = inv2;
  for (double c : coef) {
    result -= c * p;
    p *= inv2;
  }
  return result;
}

double solve_mu(double c_u, std::size_t dim) {
  if (dim < 2) throw SpecError("solve_mu: dimension must be >= 2");
  if (!(c_u > 0.0)) throw SpecError("solve_mu: cross entropy must be > 0");
  const double logd = std::log(double(dim));
  // f(mu) = log D - digamma(mu+1) is strictly decreasing from +inf (mu -> -1)
  auto f = [&](double mu) { return logd - digamma(mu + 1.0); };
  double lo = -1.0 + 1e-13, hi = 1.0;
  while (f(hi) > c_u) {
    hi = 2.0 * hi + 1.0;
    if (hi > 1e12)
      throw NumericalError("solve_mu: no solution with mu > -1; cross entropy " +
                           std::to_string(c_u) + " below the attainable range (" +
                           std::to_string(f(1e12)) + ", inf)");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > c_u) lo = mid;
    else hi = mid;
    if (hi - lo < 1e-14 * std::max(1.0, std::abs(hi))) break;
  }
  double mu = 0.5 * (lo + hi);
  // secant polish on the residual
  double mu2 = mu + 1e-7;
  for (int it = 0; it < 50; ++it) {
    const double r1 = f(mu) - c_u;
    if (std::abs(r1) < 1e-12) break;
    const double r2 = f(mu2) - c_u;
    if (r2 == r1) break;
    const double next = mu - r1 * (mu2 - mu) / (r2 - r1);
    mu2 = mu;
    mu = std::max(next, -1.0 + 1e-13);
  }
  if (std::abs(f(mu) - c_u) > 1e-10)
    throw NumericalError("solve_mu: residual above 1e-10");
  return mu;
}

std::vector<double> maxent_distribution(std::span<const double> probs, double mu) {
  if (mu <= -1.0) throw SpecError("maxent_distribution: mu must be > -1");
  std::vector<double> logw(probs.size());
  double mx = -1e300;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    if (probs[j] <= 0.0)
      throw SpecError("maxent_distribution: probabilities must be positive");
    logw[j] = mu * std::log(probs[j]);
    mx = std::max(mx, logw[j]);
  }
  KahanSum z;
  std::vector<double> out(probs.size());
  for (std::size_t j = 0; j < probs.size(); ++j) {
    out[j] = std::exp(logw[j] - mx);
    z.add(out[j]);
  }
  for (double& p : out) p /= z.value();
  return out;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> counts_from_sample(
    const BitstringSample& sample) {
  std::unordered_map<std::uint64_t, std::uint64_t> map;
  map.reserve(sample.samples.size());
  for (std::uint64_t j : sample.samples) ++map[j];
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out(map.begin(), map.end());
  std::sort(out.begin(), out.end());
  return out;
}

double hypothesis_psi(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counts,
    std::span<const double> probs, std::size_t m) {
  std::uint64_t total = 0;
  KahanSum s;
  for (const auto& [j, n] : counts) {
    if (n == 0) continue;
    if (j >= probs.size() || probs[j] <= 0.0)
      throw SpecError("hypothesis_psi: hypothesis assigns zero probability to "
                      "observed bitstring " + std::to_string(j));
    total += n;
    s.add(double(n) * std::log(double(n) / (double(m) * probs[j])));
  }
  if (total != m) throw SpecError("hypothesis_psi: counts do not sum to m");
  return s.value();
}

HaarEntropyStats haar_entropy_stats(std::size_t dim, double mu,
                                    std::size_t j_samples) {
  if (dim < 2) throw SpecError("haar_entropy_stats: dimension must be >= 2");
  const double d = double(dim);
  HaarEntropyStats st;
  st.cross_entropy_exact = digamma(d + mu) - digamma(mu + 1.0);
  st.cross_entropy_large_d = std::log(d) - digamma(mu + 1.0);
  st.entropy_variance = (kPi * kPi - 9.0) / (3.0 * d);
  if (j_samples > 0) {
    const double s = alpha_stddev(dim, j_samples);
    st.subset_variance = s * s;
  } else {
    st.subset_variance = 0.0;
  }
  return st;
}

CrossEntropyReport xeb_report(std::span<const double> probs,
                              const BitstringSample& sample) {
  CrossEntropyReport rep;
  rep.dim = probs.size();
  rep.m = sample.samples.size();
  rep.c_u = cross_entropy(probs, sample, &rep.clipped);
  rep.alpha = std::log(double(probs.size())) + kEulerGamma - rep.c_u;
  rep.mu = solve_mu(rep.c_u, probs.size());
  rep.psi = hypothesis_psi(counts_from_sample(sample), probs, rep.m);
  rep.alpha_sigma = alpha_stddev(probs.size(), rep.m);
  return rep;
}

}  // namespace rst
