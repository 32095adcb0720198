#include "rst/spin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace rst {

namespace {

std::vector<SpinBond> spin_bonds(const SpinModelSpec& spec, std::size_t& n_out) {
  const bool pbc = spec.boundary == SpinBoundary::Periodic;
  std::vector<SpinBond> bonds;
  auto push = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    std::uint32_t lo = static_cast<std::uint32_t>(std::min(a, b));
    std::uint32_t hi = static_cast<std::uint32_t>(std::max(a, b));
    for (const SpinBond& e : bonds)
      if (e.a == lo && e.b == hi) return;
    bonds.push_back({lo, hi});
  };

  switch (spec.geometry) {
    case SpinGeometry::Chain: {
      std::size_t n = spec.n;
      if (n < 1) throw SpecError("spin chain: need at least 1 spin");
      for (std::size_t i = 0; i + 1 < n; ++i) push(i, i + 1);
      if (pbc) push(n - 1, 0);
      n_out = n;
      return bonds;
    }
    case SpinGeometry::Square: {
      std::size_t lx = spec.lx, ly = spec.ly;
      if (lx < 2 || ly < 2) throw SpecError("spin square: need lx, ly >= 2");
      auto id = [&](std::size_t x, std::size_t y) { return (y % ly) * lx + (x % lx); };
      for (std::size_t y = 0; y < ly; ++y)
        for (std::size_t x = 0; x < lx; ++x) {
          if (x + 1 < lx || pbc) push(id(x, y), id(x + 1, y));
          if (y + 1 < ly || pbc) push(id(x, y), id(x, y + 1));
        }
      n_out = lx * ly;
      return bonds;
    }
    case SpinGeometry::Triangular: {
      // rhombic cluster: square bonds plus one diagonal, coordination 6
      std::size_t lx = spec.lx, ly = spec.ly;
      if (lx < 2 || ly < 2) throw SpecError("spin triangular: need lx, ly >= 2");
      auto id = [&](std::size_t x, std::size_t y) { return (y % ly) * lx + (x % lx); };
      for (std::size_t y = 0; y < ly; ++y)
        for (std::size_t x = 0; x < lx; ++x) {
          if (x + 1 < lx || pbc) push(id(x, y), id(x + 1, y));
          if (y + 1 < ly || pbc) push(id(x, y), id(x, y + 1));
          if ((x + 1 < lx || pbc) && (y + 1 < ly || pbc))
            push(id(x, y), id(x + 1, y + 1));
        }
      n_out = lx * ly;
      return bonds;
    }
    case SpinGeometry::Kagome: {
      std::size_t lx = spec.lx, ly = spec.ly;
      if (lx < 2 || ly < 2) throw SpecError("spin kagome: need lx, ly >= 2");
      auto id = [&](std::size_t x, std::size_t y, std::size_t s) {
        return ((y % ly) * lx + (x % lx)) * 3 + s;
      };
      for (std::size_t y = 0; y < ly; ++y)
        for (std::size_t x = 0; x < lx; ++x) {
          push(id(x, y, 0), id(x, y, 1));
          push(id(x, y, 1), id(x, y, 2));
          push(id(x, y, 2), id(x, y, 0));
          if (x + 1 < lx || pbc) push(id(x, y, 1), id(x + 1, y, 0));
          if (y + 1 < ly || pbc) push(id(x, y, 2), id(x, y + 1, 0));
          if ((x + 1 < lx || pbc) && (y > 0 || pbc))
            push(id(x, y, 1), id(x + 1, y + ly - 1, 2));
        }
      n_out = 3 * lx * ly;
      return bonds;
    }
  }
  throw SpecError("spin model: unknown geometry");
}

}  // namespace

SpinHamiltonian::SpinHamiltonian(const SpinModelSpec& spec)
    : j_(spec.j), delta_(spec.delta), h_(spec.h) {
  bonds_ = spin_bonds(spec, n_);
  if (n_ > spec.max_spins)
    throw ResourceError("spin model: " + std::to_string(n_) +
                        " spins exceeds the configured cap of " +
                        std::to_string(spec.max_spins));
  // term-wise column-sum bound: each bond contributes at most |J*Delta|/4 on
  // the diagonal and |J|/2 off the diagonal; the field at most N|h|/2
  bound_ = double(bonds_.size()) * (std::abs(j_ * delta_) / 4.0 + std::abs(j_) / 2.0) +
           double(n_) * std::abs(h_) / 2.0;
}

double SpinHamiltonian::diagonal_energy(std::uint64_t basis) const {
  double e = 0.0;
  for (const SpinBond& b : bonds_) {
    bool ba = (basis >> b.a) & 1, bb = (basis >> b.b) & 1;
    e += -j_ * delta_ * (ba == bb ? 0.25 : -0.25);
  }
  if (h_ != 0.0) {
    int ups = std::popcount(basis & ((n_ < 64) ? ((std::uint64_t{1} << n_) - 1)
                                               : ~std::uint64_t{0}));
    e += -h_ * (double(ups) - 0.5 * double(n_));
  }
  return e;
}

void SpinHamiltonian::apply(std::span<const cplx> in, std::span<cplx> out) const {
  const std::size_t d = dim();
  if (in.size() != d || out.size() != d)
    throw SpecError("spin apply: dimension mismatch");
  for (std::uint64_t s = 0; s < d; ++s) out[s] = diagonal_energy(s) * in[s];
  const double flip = -0.5 * j_;  // (SxSx + SySy) on an anti-aligned pair
  for (const SpinBond& b : bonds_) {
    const std::uint64_t mask = (std::uint64_t{1} << b.a) | (std::uint64_t{1} << b.b);
    for (std::uint64_t s = 0; s < d; ++s) {
      std::uint64_t pair = s & mask;
      if (pair != 0 && pair != mask) out[s ^ mask] += flip * in[s];
    }
  }
}

SpinHamiltonian build_spin_model(const SpinModelSpec& spec) {
  return SpinHamiltonian(spec);
}

SpinCurrentOperator::SpinCurrentOperator(const SpinModelSpec& spec) : j_(spec.j) {
  if (spec.geometry != SpinGeometry::Chain)
    throw SpecError("spin current: only chain geometry is supported");
  if (spec.n < 2) throw SpecError("spin current: need at least 2 spins");
  n_ = spec.n;
  // the current is antisymmetric under a <-> b, so bonds keep the chain
  // orientation i -> i+1 (including the wrap) instead of being sorted
  for (std::size_t i = 0; i + 1 < n_; ++i)
    bonds_.push_back({std::uint32_t(i), std::uint32_t(i + 1)});
  if (spec.boundary == SpinBoundary::Periodic && n_ > 2)
    bonds_.push_back({std::uint32_t(n_ - 1), 0});
}

void SpinCurrentOperator::apply(std::span<const cplx> in, std::span<cplx> out) const {
  const std::size_t d = dim();
  if (in.size() != d || out.size() != d)
    throw SpecError("spin current apply: dimension mismatch");
  std::fill(out.begin(), out.end(), cplx{});
  // j_op = -J sum_i (i/2)(S+_i S-_{i+1} - S-_i S+_{i+1}):
  // pair (down,up) -> (up,down) with amplitude -iJ/2, reverse with +iJ/2
  const cplx amp_raise(0.0, -0.5 * j_);
  for (const SpinBond& b : bonds_) {
    const std::uint64_t bit_a = std::uint64_t{1} << b.a;
    const std::uint64_t bit_b = std::uint64_t{1} << b.b;
    const std::uint64_t mask = bit_a | bit_b;
    for (std::uint64_t s = 0; s < d; ++s) {
      std::uint64_t pair = s & mask;
      if (pair == bit_b) out[s ^ mask] += amp_raise * in[s];       // S+_a S-_b
      else if (pair == bit_a) out[s ^ mask] -= amp_raise * in[s];  // -S-_a S+_b
    }
  }
}

double SpinCurrentOperator::norm_bound_1() const {
  return double(bonds_.size()) * std::abs(j_) / 2.0;
}

LocalDensityOperator::LocalDensityOperator(std::size_t n, std::size_t site)
    : n_(n), site_(site) {
  if (site >= n) throw SpecError("local density: site index out of range");
}

void LocalDensityOperator::apply(std::span<const cplx> in, std::span<cplx> out) const {
  const std::size_t d = dim();
  if (in.size() != d || out.size() != d)
    throw SpecError("local density apply: dimension mismatch");
  const std::uint64_t bit = std::uint64_t{1} << site_;
  for (std::uint64_t s = 0; s < d; ++s) out[s] = (s & bit) ? in[s] : cplx{};
}

TotalMxOperator::TotalMxOperator(std::size_t n) : n_(n) {
  if (n < 1) throw SpecError("total Mx: need at least 1 spin");
}

void TotalMxOperator::apply(std::span<const cplx> in, std::span<cplx> out) const {
  const std::size_t d = dim();
  if (in.size() != d || out.size() != d)
    throw SpecError("total Mx apply: dimension mismatch");
  std::fill(out.begin(), out.end(), cplx{});
  for (std::size_t i = 0; i < n_; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t s = 0; s < d; ++s) out[s ^ bit] += 0.5 * in[s];
  }
}

}  // namespace rst
