#include <benchmark/benchmark.h>

#include "rst/estimators.hpp"
#include "rst/lattice.hpp"
#include "rst/propagators.hpp"
#include "rst/spin.hpp"

namespace {

void bm_state_generation(benchmark::State& state) {
  const std::size_t d = std::size_t(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    rst::StateVector v = rst::gen_gaussian_muller(d, {1, stream++}, true);
    benchmark::DoNotOptimize(v.amps.data());
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(d));
}
BENCHMARK(bm_state_generation)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

void bm_lattice_matvec(benchmark::State& state) {
  rst::LatticeSpec spec;
  spec.geometry = rst::LatticeGeometry::Square;
  spec.lx = std::size_t(state.range(0));
  spec.ly = spec.lx;
  rst::TightBindingOperator h = rst::build_lattice(spec);
  rst::StateVector in = rst::gen_gaussian_muller(h.dim(), {2, 0}, true);
  rst::StateVector out(h.dim());
  for (auto _ : state) {
    h.apply(in.amps, out.amps);
    benchmark::DoNotOptimize(out.amps.data());
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(h.dim()));
}
BENCHMARK(bm_lattice_matvec)->Arg(64)->Arg(256)->Arg(1024);

void bm_spin_matvec(benchmark::State& state) {
  rst::SpinModelSpec spec;
  spec.n = std::size_t(state.range(0));
  rst::SpinHamiltonian h = rst::build_spin_model(spec);
  rst::StateVector in = rst::gen_gaussian_muller(h.dim(), {3, 0}, true);
  rst::StateVector out(h.dim());
  for (auto _ : state) {
    h.apply(in.amps, out.amps);
    benchmark::DoNotOptimize(out.amps.data());
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(h.dim()));
}
BENCHMARK(bm_spin_matvec)->Arg(12)->Arg(16)->Arg(20);

void bm_trotter_step(benchmark::State& state) {
  rst::LatticeSpec spec;
  spec.lx = std::size_t(state.range(0));
  rst::TightBindingOperator h = rst::build_lattice(spec);
  rst::Trotter2 u(h);
  rst::StateVector psi = rst::gen_gaussian_muller(h.dim(), {4, 0}, true);
  const double tau = 0.8 * 3.14159265358979 / h.norm_bound_1();
  for (auto _ : state) {
    u.step(psi.amps, tau, 5);
    benchmark::DoNotOptimize(psi.amps.data());
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(h.dim()));
}
BENCHMARK(bm_trotter_step)->Arg(1 << 12)->Arg(1 << 16);

void bm_chebyshev_evolve(benchmark::State& state) {
  rst::SpinModelSpec spec;
  spec.n = std::size_t(state.range(0));
  rst::SpinHamiltonian h = rst::build_spin_model(spec);
  rst::StateVector psi = rst::gen_gaussian_muller(h.dim(), {5, 0}, true);
  for (auto _ : state) {
    rst::StateVector out = rst::evolve(h, psi, 0.5);
    benchmark::DoNotOptimize(out.amps.data());
  }
}
BENCHMARK(bm_chebyshev_evolve)->Arg(10)->Arg(14);

}  // namespace

BENCHMARK_MAIN();
