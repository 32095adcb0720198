#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rst/operator.hpp"

namespace rst {

enum class SpinGeometry { Chain, Square, Triangular, Kagome };
enum class SpinBoundary { Periodic, Open };

/// Spin-1/2 XXZ model on a lattice of N sites (Hilbert dimension D = 2^N):
///   H = -J sum_<i,j> [ Sx_i Sx_j + Sy_i Sy_j + Delta Sz_i Sz_j ]
///       - h sum_i Sz_i
/// J = -1 is antiferromagnetic. Basis index bit i set <=> spin i up.
struct SpinModelSpec {
  std::size_t n = 2;            // total spins (chain); lattices use lx*ly cells
  SpinGeometry geometry = SpinGeometry::Chain;
  std::size_t lx = 0, ly = 0;   // cluster sizes for 2D geometries
  SpinBoundary boundary = SpinBoundary::Periodic;
  double j = -1.0;
  double delta = 1.0;
  double h = 0.0;
  std::size_t max_spins = 24;   // memory cap on N
};

struct SpinBond {
  std::uint32_t a, b;
};

class SpinHamiltonian final : public LinearOperator {
 public:
  explicit SpinHamiltonian(const SpinModelSpec& spec);

  std::size_t dim() const override { return std::size_t{1} << n_; }
  void apply(std::span<const cplx> in, std::span<cplx> out) const override;
  double norm_bound_1() const override { return bound_; }

  std::size_t sites() const { return n_; }
  const std::vector<SpinBond>& bonds() const { return bonds_; }
  double coupling_j() const { return j_; }
  double anisotropy() const { return delta_; }
  double field() const { return h_; }

  /// Diagonal energy (ZZ + field) of a basis state.
  double diagonal_energy(std::uint64_t basis) const;

 private:
  std::size_t n_;
  std::vector<SpinBond> bonds_;
  double j_, delta_, h_;
  double bound_;
};

SpinHamiltonian build_spin_model(const SpinModelSpec& spec);

/// Spin current on a chain: j_op = -J sum_i (Sx_i Sy_{i+1} - Sy_i Sx_{i+1}).
/// Hermitian; commutes with total Sz.
class SpinCurrentOperator final : public LinearOperator {
 public:
  explicit SpinCurrentOperator(const SpinModelSpec& spec);
  std::size_t dim() const override { return std::size_t{1} << n_; }
  void apply(std::span<const cplx> in, std::span<cplx> out) const override;
  double norm_bound_1() const override;

 private:
  std::size_t n_;
  std::vector<SpinBond> bonds_;
  double j_;
};

/// Local occupation n_l = Sz_l + 1/2; diagonal projector onto bit l set.
class LocalDensityOperator final : public LinearOperator {
 public:
  LocalDensityOperator(std::size_t n, std::size_t site);
  std::size_t dim() const override { return std::size_t{1} << n_; }
  void apply(std::span<const cplx> in, std::span<cplx> out) const override;
  double norm_bound_1() const override { return 1.0; }
  std::size_t site() const { return site_; }

 private:
  std::size_t n_, site_;
};

/// Total x-magnetization M^x = sum_i Sx_i.
class TotalMxOperator final : public LinearOperator {
 public:
  explicit TotalMxOperator(std::size_t n);
  std::size_t dim() const override { return std::size_t{1} << n_; }
  void apply(std::span<const cplx> in, std::span<cplx> out) const override;
  double norm_bound_1() const override { return 0.5 * double(n_); }

 private:
  std::size_t n_;
};

}  // namespace rst
