#include "rst/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "rst/fft.hpp"

namespace rst {

namespace {

double jackknife_stderr(const std::vector<cplx>& leave_one_out) {
  const std::size_t r = leave_one_out.size();
  if (r < 2) return 0.0;
  cplx mean{};
  for (const cplx& v : leave_one_out) mean += v;
  mean /= double(r);
  double s = 0.0;
  for (const cplx& v : leave_one_out) s += std::norm(v - mean);
  return std::sqrt(s * double(r - 1) / double(r));
}

}  // namespace

Combined combine_realizations(const std::vector<RealizationRecord>& records,
                              AverageMode mode) {
  const std::size_t r = records.size();
  if (r == 0) throw SpecError("combine_realizations: need at least 1 realization");
  cplx sx{};
  double sy = 0.0;
  for (const auto& rec : records) {
    sx += rec.x;
    sy += rec.y;
  }
  cplx value;
  std::vector<cplx> loo(r);
  if (mode == AverageMode::M1) {
    cplx s{};
    for (const auto& rec : records) s += rec.x / rec.y;
    value = s / double(r);
    for (std::size_t i = 0; i < r; ++i)
      loo[i] = (r > 1) ? (s - records[i].x / records[i].y) / double(r - 1) : value;
  } else {
    if (sy == 0.0) throw NumericalError("combine_realizations: zero denominator sum");
    value = sx / sy;
    for (std::size_t i = 0; i < r; ++i) {
      double dy = sy - records[i].y;
      loo[i] = (r > 1 && dy != 0.0) ? (sx - records[i].x) / dy : value;
    }
  }
  return {value, jackknife_stderr(loo)};
}

double predicted_trace_variance(RandomStateKind kind, const OperatorTraces& tr,
                                std::size_t dim) {
  if (tr.tr_xxdag < 0.0) return -1.0;
  const double d = double(dim);
  const double t2 = std::norm(tr.tr_x);
  switch (kind) {
    case RandomStateKind::GaussianNormalized:
      return (d * tr.tr_xxdag - t2) / (d + 1.0);
    case RandomStateKind::GaussianRaw:
      return (d * tr.tr_xxdag - t2) / d;
    case RandomStateKind::RandomPhase:
      if (tr.sum_diag_sq < 0.0) return -1.0;
      return tr.tr_xxdag - tr.sum_diag_sq;
  }
  return -1.0;
}

TraceEstimate estimate_trace(const LinearOperator& x, RandomStateKind kind,
                             std::size_t realizations, AverageMode mode,
                             SeedSpec seed, const OperatorTraces* traces) {
  if (realizations == 0) throw SpecError("estimate_trace: need R >= 1");
  const std::size_t d = x.dim();
  TraceEstimate est;
  est.mode = mode;
  est.realizations = realizations;
  StateVector xphi(d);
  for (std::size_t i = 0; i < realizations; ++i) {
    StateVector phi = generate_state(kind, d, seed.with_stream(i));
    x.apply(phi.amps, xphi.amps);
    cplx xi = double(d) * inner(phi.amps, xphi.amps);
    est.records.push_back({xi, phi.squared_norm()});
  }
  Combined c = combine_realizations(est.records, mode);
  est.value = c.value;
  est.err = c.err;
  if (traces) est.predicted_variance = predicted_trace_variance(kind, *traces, d);
  return est;
}

VarianceCheckReport empirical_variance_check(const LinearOperator& x,
                                             RandomStateKind kind,
                                             std::size_t trials, SeedSpec seed,
                                             const OperatorTraces& traces) {
  if (trials < 2) throw SpecError("empirical_variance_check: need >= 2 trials");
  const std::size_t d = x.dim();
  std::vector<double> vals(trials);
  StateVector xphi(d);
  for (std::size_t i = 0; i < trials; ++i) {
    StateVector phi = generate_state(kind, d, seed.with_stream(i));
    x.apply(phi.amps, xphi.amps);
    vals[i] =
        (double(d) * inner(phi.amps, xphi.amps) / phi.squared_norm()).real();
  }
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= double(trials);
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var /= double(trials - 1);
  double pred = predicted_trace_variance(kind, traces, d);
  return {var, pred, pred > 0.0 ? var / pred : 0.0, trials};
}

RatioStats predicted_ratio_stats(const RatioMoments& m) {
  if (m.ey == 0.0) throw SpecError("predicted_ratio_stats: E[y] must be nonzero");
  const double ey2 = m.ey * m.ey;
  double mean = m.ex / m.ey - m.covxy / ey2 + m.ex * m.vary / (ey2 * m.ey);
  double variance = m.varx / ey2 - 2.0 * m.ex * m.covxy / (ey2 * m.ey) +
                    m.ex * m.ex * m.vary / (ey2 * ey2);
  return {mean, variance};
}

double bilinear_covariance(RandomStateKind kind, std::size_t dim, cplx tr_x,
                           cplx tr_w, double tr_xwdag, double sum_diag_xw) {
  const double d = double(dim);
  const double m22 = moment_m22(kind, dim);
  const double m4 = moment_m4(kind, dim);
  cplx prod = tr_x * std::conj(tr_w);
  double e_xy = m22 * (prod.real() + tr_xwdag) + (m4 - 2.0 * m22) * sum_diag_xw;
  return e_xy - prod.real() / (d * d);
}

RatioMoments ratio_moments_for_kind(RandomStateKind kind,
                                    const OperatorTraces& tr, std::size_t dim) {
  const double d = double(dim);
  RatioMoments m;
  m.ex = tr.tr_x.real();
  m.ey = 1.0;
  m.varx = d * d *
           bilinear_covariance(kind, dim, tr.tr_x, tr.tr_x, tr.tr_xxdag,
                               tr.sum_diag_sq);
  m.vary = bilinear_covariance(kind, dim, cplx(d, 0.0), cplx(d, 0.0), d, d);
  m.covxy = d * bilinear_covariance(kind, dim, tr.tr_x, cplx(d, 0.0),
                                    tr.tr_x.real(), tr.tr_x.real());
  return m;
}

// ---- spectra ----

double resolve_tau(double tau, double bound) {
  if (bound <= 0.0) throw SpecError("spectrum: operator norm bound must be > 0");
  const double nyquist = kPi / bound;
  if (tau == 0.0) return 0.8 * nyquist;
  if (tau >= nyquist)
    throw SpecError("spectrum: time step " + std::to_string(tau) +
                    " violates the sampling criterion; choose tau < " +
                    std::to_string(nyquist));
  if (tau < 0.0) throw SpecError("spectrum: time step must be positive");
  return tau;
}

SpectrumResult spectrum_from_survival(const std::vector<cplx>& f, double tau,
                                      double sigma, double prefactor) {
  if (f.size() < 2) throw SpecError("spectrum: need at least 2 time samples");
  const std::size_t n = f.size() - 1;
  const double t_total = double(n) * tau;
  if (sigma <= 0.0) sigma = t_total / 3.0;
  // samples j = -N..N-1 packed at index j+N, with f(-t) = f(t)^*
  std::vector<cplx> x(2 * n);
  for (std::size_t idx = 0; idx < 2 * n; ++idx) {
    const long j = long(idx) - long(n);
    const cplx fj = (j >= 0) ? f[std::size_t(j)] : std::conj(f[std::size_t(-j)]);
    const double t = double(j) * tau;
    x[idx] = fj * std::exp(-0.5 * (t / sigma) * (t / sigma));
  }
  std::vector<cplx> y = dft(x, +1);
  SpectrumResult res;
  res.omega.resize(2 * n);
  res.value.resize(2 * n);
  res.n_samples = n;
  res.t_total = t_total;
  res.tau = tau;
  res.sigma = sigma;
  for (std::size_t idx = 0; idx < 2 * n; ++idx) {
    const long k = long(idx) - long(n);
    res.omega[idx] = double(k) * kPi / t_total;
    const std::size_t kk = std::size_t(((k % long(2 * n)) + long(2 * n)) % long(2 * n));
    const double sign = (std::abs(k) % 2 == 0) ? 1.0 : -1.0;
    res.value[idx] = prefactor * sign * y[kk].real();
  }
  return res;
}

SpectrumResult dos(const Trotter2& u, double norm_bound, std::size_t dim,
                   const SpectrumParams& p) {
  const double tau = resolve_tau(p.tau, norm_bound);
  const std::size_t n = p.n_samples;
  if (n < 2) throw SpecError("dos: need at least 2 time samples");
  if (p.realizations == 0) throw SpecError("dos: need at least 1 realization");
  std::vector<cplx> favg(n + 1, cplx{});
  for (std::size_t i = 0; i < p.realizations; ++i) {
    StateVector phi = generate_state(p.kind, dim, p.seed.with_stream(i));
    std::vector<cplx> psi = phi.amps;
    favg[0] += inner(phi.amps, psi);
    for (std::size_t j = 1; j <= n; ++j) {
      u.step(psi, tau, p.substeps);
      favg[j] += inner(phi.amps, psi);
    }
  }
  for (cplx& v : favg) v /= double(p.realizations);
  const double t_total = double(n) * tau;
  // T/(2 pi N D E[|c|^2]) with E[|c|^2] = 1/D for every state family
  SpectrumResult res = spectrum_from_survival(favg, tau, p.sigma,
                                              t_total / (2.0 * kPi * double(n)));
  res.realizations = p.realizations;
  return res;
}

SpectrumResult ldos(const Trotter2& u, double norm_bound, const StateVector& psi0,
                    const SpectrumParams& p) {
  const double tau = resolve_tau(p.tau, norm_bound);
  const std::size_t n = p.n_samples;
  if (n < 2) throw SpecError("ldos: need at least 2 time samples");
  if (psi0.dim != u.dim()) throw SpecError("ldos: state/propagator dimension mismatch");
  std::vector<cplx> f(n + 1);
  std::vector<cplx> psi = psi0.amps;
  f[0] = inner(psi0.amps, psi);
  for (std::size_t j = 1; j <= n; ++j) {
    u.step(psi, tau, p.substeps);
    f[j] = inner(psi0.amps, psi);
  }
  const double t_total = double(n) * tau;
  SpectrumResult res = spectrum_from_survival(f, tau, p.sigma,
                                              t_total / (2.0 * kPi * double(n)));
  res.realizations = 1;
  return res;
}

// ---- thermal ----

TraceEstimate thermal_expectation(const LinearOperator& h,
                                  const LinearOperator& y, double beta,
                                  RandomStateKind kind, std::size_t realizations,
                                  AverageMode mode, SeedSpec seed) {
  if (realizations == 0) throw SpecError("thermal_expectation: need R >= 1");
  if (h.dim() != y.dim())
    throw SpecError("thermal_expectation: operator dimension mismatch");
  const std::size_t d = h.dim();
  TraceEstimate est;
  est.mode = mode;
  est.realizations = realizations;
  StateVector yphi(d);
  for (std::size_t i = 0; i < realizations; ++i) {
    StateVector phi = generate_state(kind, d, seed.with_stream(i));
    StateVector pb = thermal_project(h, phi, beta);
    y.apply(pb.amps, yphi.amps);
    est.records.push_back({inner(pb.amps, yphi.amps), pb.squared_norm()});
  }
  Combined c = combine_realizations(est.records, mode);
  est.value = c.value;
  est.err = c.err;
  return est;
}

namespace {

// <H>, <H^2>, and C from a record set (x1 = <H>, x2 = <H^2> numerators).
struct HeatRecords {
  std::vector<RealizationRecord> e1, e2;
};

double heat_from(const HeatRecords& rec, AverageMode mode, double beta,
                 double n_sites, double* e_out, double* e2_out) {
  double e = combine_realizations(rec.e1, mode).value.real();
  double e2 = combine_realizations(rec.e2, mode).value.real();
  if (e_out) *e_out = e;
  if (e2_out) *e2_out = e2;
  return beta * beta * (e2 - e * e) / n_sites;
}

}  // namespace

ThermalSeries specific_heat(const LinearOperator& h,
                            const std::vector<double>& beta_grid,
                            std::size_t n_sites, RandomStateKind kind,
                            std::size_t realizations, AverageMode mode,
                            SeedSpec seed) {
  if (realizations == 0) throw SpecError("specific_heat: need R >= 1");
  for (std::size_t i = 1; i < beta_grid.size(); ++i)
    if (beta_grid[i] <= beta_grid[i - 1])
      throw SpecError("specific_heat: beta grid must be positive ascending");
  if (!beta_grid.empty() && beta_grid.front() <= 0.0)
    throw SpecError("specific_heat: beta grid must be positive ascending");
  const std::size_t d = h.dim();
  ThermalSeries out;
  StateVector hphi(d);
  for (double beta : beta_grid) {
    HeatRecords rec;
    for (std::size_t i = 0; i < realizations; ++i) {
      StateVector phi = generate_state(kind, d, seed.with_stream(i));
      StateVector pb = thermal_project(h, phi, beta);
      h.apply(pb.amps, hphi.amps);
      const double y = pb.squared_norm();
      rec.e1.push_back({inner(pb.amps, hphi.amps), y});
      rec.e2.push_back({cplx(norm2_compensated(hphi.amps), 0.0), y});
    }
    double e, e2;
    const double c = heat_from(rec, mode, beta, double(n_sites), &e, &e2);
    // jackknife over realizations of the full specific-heat functional
    std::vector<cplx> loo_c;
    std::vector<cplx> loo_e, loo_e2;
    if (realizations > 1) {
      for (std::size_t i = 0; i < realizations; ++i) {
        HeatRecords sub;
        for (std::size_t k = 0; k < realizations; ++k) {
          if (k == i) continue;
          sub.e1.push_back(rec.e1[k]);
          sub.e2.push_back(rec.e2[k]);
        }
        double ee, ee2;
        loo_c.push_back(cplx(heat_from(sub, mode, beta, double(n_sites), &ee, &ee2), 0.0));
        loo_e.push_back(cplx(ee, 0.0));
        loo_e2.push_back(cplx(ee2, 0.0));
      }
    }
    out.beta.push_back(beta);
    out.energy.push_back(e);
    out.energy_err.push_back(jackknife_stderr(loo_e));
    out.energy2.push_back(e2);
    out.energy2_err.push_back(jackknife_stderr(loo_e2));
    out.specific_heat.push_back(c);
    out.specific_heat_err.push_back(jackknife_stderr(loo_c));
  }
  return out;
}

double partition_ratio(const LinearOperator& h, double beta,
                       RandomStateKind kind, std::size_t realizations,
                       SeedSpec seed) {
  if (realizations == 0) throw SpecError("partition_ratio: need R >= 1");
  if (beta < 0.0) throw SpecError("partition_ratio: beta must be >= 0");
  const std::size_t d = h.dim();
  KahanSum s1, s2;
  for (std::size_t i = 0; i < realizations; ++i) {
    StateVector phi = generate_state(kind, d, seed.with_stream(i));
    s1.add(thermal_project(h, phi, beta).squared_norm());       // <Phi|e^{-bH}|Phi>
    s2.add(thermal_project(h, phi, 2.0 * beta).squared_norm()); // <Phi|e^{-2bH}|Phi>
  }
  const double m1 = s1.value() / double(realizations);
  const double m2 = s2.value() / double(realizations);
  return m2 / (double(d) * m1 * m1);
}

// ---- dynamics ----

CorrelationSeries operator_correlation(const LinearOperator& h,
                                       const LinearOperator& a, double beta,
                                       double t_max, std::size_t n_steps,
                                       RandomStateKind kind,
                                       std::size_t realizations, SeedSpec seed) {
  if (realizations == 0) throw SpecError("operator_correlation: need R >= 1");
  if (n_steps == 0 || t_max <= 0.0)
    throw SpecError("operator_correlation: need a positive uniform time grid");
  if (h.dim() != a.dim())
    throw SpecError("operator_correlation: operator dimension mismatch");
  const std::size_t d = h.dim();
  const double dt = t_max / double(n_steps);
  std::vector<cplx> num(n_steps + 1, cplx{});
  double den = 0.0;
  StateVector tmp(d);
  for (std::size_t i = 0; i < realizations; ++i) {
    StateVector phi = generate_state(kind, d, seed.with_stream(i));
    StateVector lhs = thermal_project(h, phi, beta);
    den += lhs.squared_norm();
    StateVector rhs(d);
    a.apply(lhs.amps, rhs.amps);
    for (std::size_t k = 0;; ++k) {
      a.apply(rhs.amps, tmp.amps);
      num[k] += inner(lhs.amps, tmp.amps);
      if (k == n_steps) break;
      lhs = evolve(h, lhs, dt);
      rhs = evolve(h, rhs, dt);
    }
  }
  CorrelationSeries out;
  for (std::size_t k = 0; k <= n_steps; ++k) {
    out.t.push_back(double(k) * dt);
    out.c.push_back(num[k] / den);
  }
  return out;
}

DensityProfile density_profile(const SpinHamiltonian& h, std::size_t source,
                               double t_max, std::size_t n_steps,
                               std::size_t realizations, SeedSpec seed) {
  if (realizations == 0) throw SpecError("density_profile: need R >= 1");
  if (n_steps == 0 || t_max <= 0.0)
    throw SpecError("density_profile: need a positive uniform time grid");
  const std::size_t n = h.sites();
  const std::size_t d = h.dim();
  LocalDensityOperator nsrc(n, source);
  const double dt = t_max / double(n_steps);
  DensityProfile out;
  out.sites = n;
  for (std::size_t k = 0; k <= n_steps; ++k) out.t.push_back(double(k) * dt);
  out.p.assign((n_steps + 1) * n, 0.0);
  for (std::size_t i = 0; i < realizations; ++i) {
    StateVector phi = generate_state(RandomStateKind::GaussianNormalized, d,
                                     seed.with_stream(i));
    StateVector psi(d);
    nsrc.apply(phi.amps, psi.amps);
    // <psi|psi> -> 1/2, so p_l = 2 <psi|n_l|psi>
    for (std::size_t k = 0;; ++k) {
      for (std::uint64_t s = 0; s < d; ++s) {
        const double w = 2.0 * std::norm(psi.amps[s]);
        if (w == 0.0) continue;
        for (std::size_t l = 0; l < n; ++l)
          if ((s >> l) & 1) out.p[k * n + l] += w;
      }
      if (k == n_steps) break;
      psi = evolve(h, psi, dt);
    }
  }
  for (double& v : out.p) v /= double(realizations);
  return out;
}

SpectrumResult esr_spectrum(const SpinHamiltonian& h, double beta,
                            const SpectrumParams& p) {
  if (h.field() == 0.0)
    throw SpecError("esr_spectrum: spin model must include a field term");
  if (p.realizations == 0) throw SpecError("esr_spectrum: need R >= 1");
  // the correlator oscillates at level differences, which reach twice the
  // spectral bound; sample accordingly
  const double tau = resolve_tau(p.tau, 2.0 * h.norm_bound_1());
  const std::size_t n = p.n_samples;
  if (n < 2) throw SpecError("esr_spectrum: need at least 2 time samples");
  const std::size_t d = h.dim();
  TotalMxOperator mx(h.sites());
  std::vector<double> num(n + 1, 0.0);
  double den = 0.0;
  StateVector tmp(d);
  for (std::size_t i = 0; i < p.realizations; ++i) {
    StateVector phi = generate_state(p.kind, d, p.seed.with_stream(i));
    StateVector a = thermal_project(h, phi, beta);
    den += a.squared_norm();
    StateVector b(d);
    mx.apply(a.amps, b.amps);
    for (std::size_t j = 0;; ++j) {
      mx.apply(b.amps, tmp.amps);
      num[j] += inner(a.amps, tmp.amps).real();
      if (j == n) break;
      a = evolve(h, a, tau);
      b = evolve(h, b, tau);
    }
  }
  std::vector<cplx> c(n + 1);
  for (std::size_t j = 0; j <= n; ++j) c[j] = cplx(num[j] / den, 0.0);
  // (1/2T) integral_{-T}^{T} C(t) cos(wt) dt -> (1/2N) sum_j cos(pi j k/N)
  SpectrumResult res = spectrum_from_survival(c, tau, p.sigma, 1.0 / (2.0 * double(n)));
  res.realizations = p.realizations;
  return res;
}

}  // namespace rst
