#pragma once

#include <vector>

#include "rst/lattice.hpp"
#include "rst/operator.hpp"
#include "rst/spin.hpp"

namespace rst {

/// Second-order product-formula propagator U2(t~) = U1^T(t~/2) U1(t~/2),
/// applied as (U2(tau/l))^l per step. U1 is the fixed-order product of
/// two-site bond exponentials (grouped by edge coloring so bonds within a
/// group are disjoint) followed by a diagonal phase (on-site / ZZ+field).
/// All factors are complex-symmetric, so U1^T is the same factor list in
/// reverse order. Exactly unitary regardless of step size.
class Trotter2 {
 public:
  /// Single-particle lattice: bond blocks rotate site pairs, the diagonal
  /// phase carries the on-site energies.
  explicit Trotter2(const TightBindingOperator& h);
  /// Spin model: bond blocks rotate anti-aligned pairs (XX+YY), the
  /// diagonal phase carries ZZ and field energies.
  explicit Trotter2(const SpinHamiltonian& h);

  std::size_t dim() const { return dim_; }

  /// psi <- (U2(tau/l))^l psi, i.e. evolution by e^{-i tau H} + O((tau/l)^2).
  void step(std::vector<cplx>& psi, double tau, std::size_t substeps) const;

 private:
  struct BondFactor {
    std::uint64_t a, b;  // site indices (single-particle) or bit positions (spin)
    double coupling;     // hopping v or XY amplitude -J/2
  };

  void apply_u1(std::vector<cplx>& psi, double tau, bool transpose) const;
  void apply_bond_group(std::vector<cplx>& psi, std::size_t group, double tau) const;
  void apply_diagonal(std::vector<cplx>& psi, double tau) const;

  std::size_t dim_ = 0;
  bool spin_ = false;
  std::vector<BondFactor> factors_;      // concatenated groups, fixed order
  std::vector<std::size_t> group_ends_;  // prefix ends into factors_
  std::vector<double> diag_;             // diagonal energies, size dim_
};

/// e^{zH} psi by Chebyshev expansion of the rescaled operator H/bound.
/// z must be purely real (imaginary time) or purely imaginary (real time);
/// these are the only exponents the estimators need. bound must satisfy
/// bound >= spectral norm of H (use norm_bound_1()). eps is the coefficient
/// truncation threshold; the order cap is 1e5.
StateVector chebyshev_apply(const LinearOperator& h, const StateVector& psi,
                            cplx z, double bound, double eps = 1e-13);

/// e^{-itH} psi (real-time evolution).
StateVector evolve(const LinearOperator& h, const StateVector& psi, double t,
                   double eps = 1e-13);

/// |Phi_beta> = e^{-beta H/2} |Phi>, unnormalized; beta = 0 returns Phi.
StateVector thermal_project(const LinearOperator& h, const StateVector& phi,
                            double beta, double eps = 1e-13);

}  // namespace rst
