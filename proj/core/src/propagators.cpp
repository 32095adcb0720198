#include "rst/propagators.hpp"

#include <algorithm>
#include <cmath>

#include "rst/bessel.hpp"

namespace rst {

namespace {

// Greedy edge coloring: bonds sharing a site land in different groups, so
// the exponentials within a group act on disjoint pairs. The resulting
// (group, bond) order is fixed at plan creation and reused every step.
template <typename BondT>
std::vector<std::vector<std::size_t>> color_bonds(const std::vector<BondT>& bonds,
                                                  std::size_t nsites) {
  std::vector<std::vector<int>> site_colors(nsites);
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < bonds.size(); ++i) {
    int c = 0;
    auto used = [&](int color) {
      for (int x : site_colors[bonds[i].a])
        if (x == color) return true;
      for (int x : site_colors[bonds[i].b])
        if (x == color) return true;
      return false;
    };
    while (used(c)) ++c;
    site_colors[bonds[i].a].push_back(c);
    site_colors[bonds[i].b].push_back(c);
    if (static_cast<std::size_t>(c) >= groups.size()) groups.resize(c + 1);
    groups[c].push_back(i);
  }
  return groups;
}

}  // namespace

Trotter2::Trotter2(const TightBindingOperator& h) : dim_(h.dim()), spin_(false) {
  const auto& bonds = h.bonds();
  auto groups = color_bonds(bonds, dim_);
  for (const auto& g : groups) {
    for (std::size_t i : g) factors_.push_back({bonds[i].a, bonds[i].b, bonds[i].v});
    group_ends_.push_back(factors_.size());
  }
  diag_.assign(dim_, 0.0);
  if (!h.onsite().empty())
    for (std::size_t m = 0; m < dim_; ++m) diag_[m] = h.onsite()[m];
}

Trotter2::Trotter2(const SpinHamiltonian& h) : dim_(h.dim()), spin_(true) {
  const auto& bonds = h.bonds();
  auto groups = color_bonds(bonds, h.sites());
  const double xy = -0.5 * h.coupling_j();
  for (const auto& g : groups) {
    for (std::size_t i : g) factors_.push_back({bonds[i].a, bonds[i].b, xy});
    group_ends_.push_back(factors_.size());
  }
  diag_.resize(dim_);
  for (std::uint64_t s = 0; s < dim_; ++s) diag_[s] = h.diagonal_energy(s);
}

void Trotter2::apply_diagonal(std::vector<cplx>& psi, double tau) const {
  for (std::size_t j = 0; j < dim_; ++j)
    psi[j] *= std::polar(1.0, -tau * diag_[j]);
}

void Trotter2::apply_bond_group(std::vector<cplx>& psi, std::size_t group,
                                double tau) const {
  const std::size_t begin = group == 0 ? 0 : group_ends_[group - 1];
  const std::size_t end = group_ends_[group];
  for (std::size_t f = begin; f < end; ++f) {
    const BondFactor& bf = factors_[f];
    const double th = bf.coupling * tau;
    const double c = std::cos(th);
    const cplx ms(0.0, -std::sin(th));
    if (!spin_) {
      cplx pa = psi[bf.a], pb = psi[bf.b];
      psi[bf.a] = c * pa + ms * pb;
      psi[bf.b] = ms * pa + c * pb;
    } else {
      const std::uint64_t bit_a = std::uint64_t{1} << bf.a;
      const std::uint64_t bit_b = std::uint64_t{1} << bf.b;
      const std::uint64_t mask = bit_a | bit_b;
      for (std::uint64_t s = 0; s < dim_; ++s) {
        if ((s & mask) != bit_a) continue;  // visit each anti-aligned pair once
        const std::uint64_t p = s ^ mask;
        cplx pa = psi[s], pb = psi[p];
        psi[s] = c * pa + ms * pb;
        psi[p] = ms * pa + c * pb;
      }
    }
  }
}

void Trotter2::apply_u1(std::vector<cplx>& psi, double tau, bool transpose) const {
  const std::size_t ng = group_ends_.size();
  if (!transpose) {
    apply_diagonal(psi, tau);
    for (std::size_t g = 0; g < ng; ++g) apply_bond_group(psi, g, tau);
  } else {
    for (std::size_t g = ng; g-- > 0;) apply_bond_group(psi, g, tau);
    apply_diagonal(psi, tau);
  }
}

void Trotter2::step(std::vector<cplx>& psi, double tau, std::size_t substeps) const {
  if (psi.size() != dim_) throw SpecError("trotter step: dimension mismatch");
  if (substeps == 0) throw SpecError("trotter step: substeps must be >= 1");
  if (tau == 0.0) return;
  const double half = 0.5 * tau / double(substeps);
  for (std::size_t l = 0; l < substeps; ++l) {
    apply_u1(psi, half, false);
    apply_u1(psi, half, true);
  }
}

namespace {

constexpr std::size_t kOrderCap = 100000;

// Find the truncation order: smallest k with two consecutive coefficient
// magnitudes below eps * max. coeff[k] must be the magnitude array.
std::size_t truncation_order(const std::vector<double>& mag, double eps) {
  double mx = 0.0;
  for (double m : mag) mx = std::max(mx, m);
  const double thr = eps * mx;
  for (std::size_t k = 0; k + 1 < mag.size(); ++k)
    if (mag[k] < thr && mag[k + 1] < thr) return k;
  return mag.size();
}

}  // namespace

StateVector chebyshev_apply(const LinearOperator& h, const StateVector& psi,
                            cplx z, double bound, double eps) {
  if (psi.dim != h.dim()) throw SpecError("chebyshev_apply: dimension mismatch");
  if (bound <= 0.0) throw SpecError("chebyshev_apply: spectral bound must be > 0");
  if (!(eps > 0.0) || eps > 1e-6)
    throw SpecError("chebyshev_apply: eps must be in (0, 1e-6]");
  const bool imag_time = z.imag() == 0.0;
  const bool real_time = z.real() == 0.0;
  if (!imag_time && !real_time)
    throw SpecError("chebyshev_apply: exponent must be purely real or purely imaginary");
  if (z == cplx{}) return psi;

  // e^{zH} = e^{z*bound*X} with X = H/bound having spectrum in [-1, 1]
  const double a = (imag_time ? z.real() : -z.imag()) * bound;
  const double aa = std::abs(a);
  if (imag_time && aa > 700.0)
    throw NumericalError("chebyshev_apply: |z|*bound too large (scale overflow)");
  // Large imaginary-time exponents lose precision: the truncation error rides
  // on the e^{|a|} rescale while the signal does not. Split into short
  // segments applied in sequence so each rescale stays modest.
  constexpr double kImagSegment = 16.0;
  if (imag_time && aa > kImagSegment) {
    const std::size_t n = static_cast<std::size_t>(std::ceil(aa / kImagSegment));
    const cplx zseg = z / double(n);
    StateVector cur = chebyshev_apply(h, psi, zseg, bound, eps);
    for (std::size_t i = 1; i < n; ++i)
      cur = chebyshev_apply(h, cur, zseg, bound, eps);
    return cur;
  }

  // coefficients: e^{-iax} -> (2-d_k0)(-i)^k J_k(a); e^{ax} -> (2-d_k0) I_k(a)
  std::size_t kmax = static_cast<std::size_t>(aa) + 40;
  std::vector<double> raw;
  for (;;) {
    raw = imag_time ? bessel_i_scaled_array(kmax, a) : bessel_j_array(kmax, a);
    std::vector<double> mag(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k)
      mag[k] = std::abs(raw[k]) * (k == 0 ? 1.0 : 2.0);
    std::size_t cut = truncation_order(mag, eps);
    if (cut < raw.size()) {
      raw.resize(cut + 1);
      break;
    }
    if (kmax >= kOrderCap)
      throw NumericalError("chebyshev_apply: truncation order cap (1e5) reached");
    kmax = std::min(kOrderCap, kmax * 2);
  }

  const std::size_t d = psi.dim;
  const double inv_b = 1.0 / bound;
  std::vector<cplx> tm(psi.amps);  // T_{k-1} X psi
  std::vector<cplx> tc(d), tn(d);
  h.apply(tm, tc);  // T_1
  for (cplx& x : tc) x *= inv_b;

  StateVector out(d);
  auto coeff = [&](std::size_t k) -> cplx {
    double c = (k == 0 ? 1.0 : 2.0) * raw[k];
    if (imag_time) return cplx(c, 0.0);
    switch (k % 4) {  // (-i)^k
      case 0: return cplx(c, 0.0);
      case 1: return cplx(0.0, -c);
      case 2: return cplx(-c, 0.0);
      default: return cplx(0.0, c);
    }
  };
  for (std::size_t j = 0; j < d; ++j) out.amps[j] = coeff(0) * tm[j];
  for (std::size_t k = 1; k < raw.size(); ++k) {
    cplx ck = coeff(k);
    for (std::size_t j = 0; j < d; ++j) out.amps[j] += ck * tc[j];
    if (k + 1 == raw.size()) break;
    h.apply(tc, tn);
    for (std::size_t j = 0; j < d; ++j) {
      tn[j] = 2.0 * inv_b * tn[j] - tm[j];
    }
    std::swap(tm, tc);
    std::swap(tc, tn);
  }
  if (imag_time) {
    // bessel_i_scaled_array carries e^{-|a|}; restore the true magnitude
    const double scale = std::exp(aa);
    for (cplx& x : out.amps) x *= scale;
  }
  return out;
}

StateVector evolve(const LinearOperator& h, const StateVector& psi, double t,
                   double eps) {
  return chebyshev_apply(h, psi, cplx(0.0, -t), h.norm_bound_1(), eps);
}

StateVector thermal_project(const LinearOperator& h, const StateVector& phi,
                            double beta, double eps) {
  if (beta < 0.0) throw SpecError("thermal_project: beta must be >= 0");
  if (beta == 0.0) return phi;
  return chebyshev_apply(h, phi, cplx(-0.5 * beta, 0.0), h.norm_bound_1(), eps);
}

}  // namespace rst
