#pragma once

#include <cstdint>
#include <vector>

#include "rst/operator.hpp"
#include "rst/rng.hpp"

namespace rst {

enum class LatticeGeometry { Chain, Square, Graphene, Kagome };
enum class Boundary { Periodic, Open };
enum class OnsiteModel { Zero, Anderson, SinusoidalBond };

/// Single-particle tight-binding lattice:
///   H = sum_<m,n> v_mn (|m><n| + |n><m|) + sum_m w_m |m><m|
/// Site indexing is unit-cell-major: index = (y*Lx + x)*S + sublattice,
/// with S sublattice sites per cell (1 chain/square, 2 graphene, 3 kagome).
struct LatticeSpec {
  LatticeGeometry geometry = LatticeGeometry::Chain;
  std::size_t lx = 2;         // cells along x (chain: total sites)
  std::size_t ly = 1;         // cells along y (ignored for chain)
  Boundary boundary = Boundary::Periodic;
  double v = 1.0;             // hopping
  OnsiteModel onsite = OnsiteModel::Zero;
  double disorder_w = 0.0;    // Anderson half-width W
  int sin_mode = 1;           // sinusoidal-bond integer mode k
  SeedSpec disorder_seed{};   // quenched disorder, independent of sampling
};

struct Bond {
  std::uint32_t a, b;
  double v;
};

class TightBindingOperator final : public LinearOperator {
 public:
  TightBindingOperator(std::size_t dim, std::vector<Bond> bonds,
                       std::vector<double> onsite, double onsite_bound_cap);

  std::size_t dim() const override { return n_; }
  void apply(std::span<const cplx> in, std::span<cplx> out) const override;
  double norm_bound_1() const override { return bound_; }

  const std::vector<Bond>& bonds() const { return bonds_; }
  const std::vector<double>& onsite() const { return onsite_; }

 private:
  std::size_t n_;
  std::vector<Bond> bonds_;
  std::vector<double> onsite_;
  double bound_;
};

TightBindingOperator build_lattice(const LatticeSpec& spec);

}  // namespace rst
