#include "rst/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace rst {

TightBindingOperator::TightBindingOperator(std::size_t dim,
                                           std::vector<Bond> bonds,
                                           std::vector<double> onsite,
                                           double onsite_bound_cap)
    : n_(dim), bonds_(std::move(bonds)), onsite_(std::move(onsite)) {
  if (n_ == 0) throw SpecError("lattice: dimension must be >= 1");
  // Max absolute column sum from the term list. For quenched disorder the
  // on-site cap (half-width W) is used instead of the realized |w_m| so the
  // bound is a property of the ensemble, not of one disorder draw.
  std::vector<double> col(n_, 0.0);
  for (const Bond& b : bonds_) {
    if (b.a >= n_ || b.b >= n_) throw SpecError("lattice: bond site out of range");
    col[b.a] += std::abs(b.v);
    col[b.b] += std::abs(b.v);
  }
  for (std::size_t m = 0; m < n_; ++m) {
    col[m] += (onsite_bound_cap > 0.0) ? onsite_bound_cap
                                       : (onsite_.empty() ? 0.0 : std::abs(onsite_[m]));
  }
  bound_ = *std::max_element(col.begin(), col.end());
}

void TightBindingOperator::apply(std::span<const cplx> in,
                                 std::span<cplx> out) const {
  if (in.size() != n_ || out.size() != n_)
    throw SpecError("lattice apply: dimension mismatch");
  if (onsite_.empty()) {
    std::fill(out.begin(), out.end(), cplx{});
  } else {
    for (std::size_t m = 0; m < n_; ++m) out[m] = onsite_[m] * in[m];
  }
  for (const Bond& b : bonds_) {
    out[b.a] += b.v * in[b.b];
    out[b.b] += b.v * in[b.a];
  }
}

namespace {

struct BondBuilder {
  std::vector<Bond> bonds;
  bool dedupe = false;  // only needed when a periodic direction has size <= 2

  void push(std::size_t a, std::size_t b, double v) {
    if (a == b) return;  // self-bond from a wrapped size-1 direction
    std::uint32_t lo = static_cast<std::uint32_t>(std::min(a, b));
    std::uint32_t hi = static_cast<std::uint32_t>(std::max(a, b));
    if (dedupe) {
      for (const Bond& e : bonds)
        if (e.a == lo && e.b == hi) return;
    }
    bonds.push_back({lo, hi, v});
  }
};

}  // namespace

TightBindingOperator build_lattice(const LatticeSpec& spec) {
  const bool pbc = spec.boundary == Boundary::Periodic;
  std::size_t lx = spec.lx, ly = spec.ly;
  BondBuilder bb;
  bb.dedupe = pbc && (lx <= 2 || ly <= 2);
  std::size_t nsites = 0;

  switch (spec.geometry) {
    case LatticeGeometry::Chain: {
      if (lx < 2) throw SpecError("chain: need at least 2 sites");
      nsites = lx;
      for (std::size_t x = 0; x + 1 < lx; ++x) bb.push(x, x + 1, spec.v);
      if (pbc) bb.push(lx - 1, 0, spec.v);
      break;
    }
    case LatticeGeometry::Square: {
      if (lx < 2 || ly < 1) throw SpecError("square: need lx >= 2, ly >= 1");
      nsites = lx * ly;
      auto id = [&](std::size_t x, std::size_t y) { return y * lx + x; };
      for (std::size_t y = 0; y < ly; ++y) {
        for (std::size_t x = 0; x < lx; ++x) {
          double vx = spec.v;
          if (spec.onsite == OnsiteModel::SinusoidalBond) {
            // bond between columns x and x+1 carries v*sin^2(pi*k*(x+1)/(2*lx))
            double s = std::sin(kPi * spec.sin_mode * double(x + 1) / (2.0 * double(lx)));
            vx = spec.v * s * s;
          }
          if (x + 1 < lx) bb.push(id(x, y), id(x + 1, y), vx);
          else if (pbc) bb.push(id(x, y), id(0, y), vx);
          if (ly > 1) {
            if (y + 1 < ly) bb.push(id(x, y), id(x, y + 1), spec.v);
            else if (pbc) bb.push(id(x, y), id(x, 0), spec.v);
          }
        }
      }
      break;
    }
    case LatticeGeometry::Graphene: {
      // honeycomb: 2 sublattice sites (A=0, B=1) per cell, 3 bonds per cell
      if (lx < 2 || ly < 2) throw SpecError("graphene: need lx, ly >= 2");
      nsites = 2 * lx * ly;
      auto id = [&](std::size_t x, std::size_t y, std::size_t s) {
        return ((y % ly) * lx + (x % lx)) * 2 + s;
      };
      for (std::size_t y = 0; y < ly; ++y) {
        for (std::size_t x = 0; x < lx; ++x) {
          bb.push(id(x, y, 0), id(x, y, 1), spec.v);
          if (x + 1 < lx || pbc) bb.push(id(x + 1, y, 0), id(x, y, 1), spec.v);
          if (y + 1 < ly || pbc) bb.push(id(x, y + 1, 0), id(x, y, 1), spec.v);
        }
      }
      break;
    }
    case LatticeGeometry::Kagome: {
      // corner-sharing triangles: 3 sublattice sites per cell, 6 bonds per
      // cell (up triangle 0-1-2 plus three down-triangle bonds)
      if (lx < 2 || ly < 2) throw SpecError("kagome: need lx, ly >= 2");
      nsites = 3 * lx * ly;
      auto id = [&](std::size_t x, std::size_t y, std::size_t s) {
        return ((y % ly) * lx + (x % lx)) * 3 + s;
      };
      for (std::size_t y = 0; y < ly; ++y) {
        for (std::size_t x = 0; x < lx; ++x) {
          bb.push(id(x, y, 0), id(x, y, 1), spec.v);
          bb.push(id(x, y, 1), id(x, y, 2), spec.v);
          bb.push(id(x, y, 2), id(x, y, 0), spec.v);
          if (x + 1 < lx || pbc) bb.push(id(x, y, 1), id(x + 1, y, 0), spec.v);
          if (y + 1 < ly || pbc) bb.push(id(x, y, 2), id(x, y + 1, 0), spec.v);
          if ((x + 1 < lx || pbc) && (y > 0 || pbc))
            bb.push(id(x, y, 1), id(x + 1, y + ly - 1, 2), spec.v);
        }
      }
      break;
    }
  }
  if (nsites < 2) throw SpecError("lattice: total site count must be >= 2");

  std::vector<double> onsite;
  double cap = 0.0;
  if (spec.onsite == OnsiteModel::Anderson) {
    if (spec.disorder_w < 0.0) throw SpecError("anderson: W must be >= 0");
    onsite.resize(nsites);
    Rng rng(spec.disorder_seed);
    for (double& w : onsite) w = spec.disorder_w * (2.0 * rng.uniform() - 1.0);
    cap = spec.disorder_w;
  }
  return TightBindingOperator(nsites, std::move(bb.bonds), std::move(onsite), cap);
}

}  // namespace rst
