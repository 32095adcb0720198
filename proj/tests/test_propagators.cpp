#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle_helpers.hpp"
#include "rst/bessel.hpp"
#include "rst/dense.hpp"
#include "rst/fft.hpp"
#include "rst/lattice.hpp"
#include "rst/propagators.hpp"
#include "rst/random_states.hpp"
#include "rst/spin.hpp"

using namespace rst;

namespace {

double state_distance(const StateVector& a, const StateVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.amps.size(); ++i) s += std::norm(a.amps[i] - b.amps[i]);
  return std::sqrt(s);
}

StateVector dense_apply(const Eigen::MatrixXcd& m, const StateVector& psi) {
  Eigen::Map<const Eigen::VectorXcd> v(psi.amps.data(), Eigen::Index(psi.dim));
  Eigen::VectorXcd w = m * v;
  StateVector out(psi.dim);
  for (std::size_t i = 0; i < psi.dim; ++i) out.amps[i] = w[Eigen::Index(i)];
  return out;
}

}  // namespace

// ---------- Bessel arrays ----------

TEST_CASE("first-kind Bessel array matches the standard library") {
  for (double x : {0.3, 2.0, 9.5, 40.0, -7.25}) {
    CAPTURE(x);
    std::vector<double> j = bessel_j_array(30, x);
    for (std::size_t k = 0; k <= 30; ++k) {
      const double ref =
          (x < 0 ? ((k % 2) ? -1.0 : 1.0) : 1.0) * std::cyl_bessel_j(double(k), std::abs(x));
      CHECK(std::abs(j[k] - ref) < 1e-13 * std::max(1.0, std::abs(ref)));
    }
  }
  std::vector<double> j0 = bessel_j_array(5, 0.0);
  CHECK(j0[0] == doctest::Approx(1.0));
  for (std::size_t k = 1; k <= 5; ++k) CHECK(j0[k] == doctest::Approx(0.0));
}

TEST_CASE("scaled modified Bessel array matches the standard library") {
  for (double x : {0.5, 3.0, 12.0, 60.0, -4.5}) {
    CAPTURE(x);
    std::vector<double> iv = bessel_i_scaled_array(25, x);
    for (std::size_t k = 0; k <= 25; ++k) {
      const double ref = (x < 0 ? ((k % 2) ? -1.0 : 1.0) : 1.0) *
                         std::cyl_bessel_i(double(k), std::abs(x)) *
                         std::exp(-std::abs(x));
      CHECK(std::abs(iv[k] - ref) < 1e-13 * std::max(1.0, std::abs(ref)));
    }
  }
}

// ---------- FFT ----------

TEST_CASE("radix-2 FFT agrees with the direct transform") {
  Rng rng({314, 0});
  for (std::size_t n : {2u, 8u, 64u, 512u}) {
    std::vector<cplx> data(n);
    for (cplx& z : data) z = cplx(rng.normal(), rng.normal());
    for (int sign : {-1, 1}) {
      std::vector<cplx> ref = dft_direct(data, sign);
      std::vector<cplx> got = data;
      fft_radix2(got, sign);
      for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(got[k] - ref[k]) < 1e-10);
    }
  }
}

TEST_CASE("forward and inverse transforms invert each other") {
  Rng rng({217, 0});
  std::vector<cplx> data(128);
  for (cplx& z : data) z = cplx(rng.normal(), rng.normal());
  std::vector<cplx> t = dft(data, 1);
  std::vector<cplx> back = dft(t, -1);
  for (std::size_t k = 0; k < data.size(); ++k)
    CHECK(std::abs(back[k] / 128.0 - data[k]) < 1e-12);
}

TEST_CASE("non-power-of-two sizes fall back to the direct transform") {
  std::vector<cplx> data = {cplx(1, 0), cplx(0, 1), cplx(-1, 2)};
  std::vector<cplx> got = dft(data, -1);
  std::vector<cplx> ref = dft_direct(data, -1);
  for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(got[k] - ref[k]) < 1e-14);
}

// ---------- product-formula propagator ----------

TEST_CASE("product-formula step is exactly unitary") {
  LatticeSpec spec;
  spec.geometry = LatticeGeometry::Square;
  spec.lx = 4;
  spec.ly = 4;
  TightBindingOperator h = build_lattice(spec);
  Trotter2 u(h);
  StateVector psi = gen_gaussian_muller(h.dim(), {1, 0}, true);
  for (int i = 0; i < 1000; ++i) u.step(psi.amps, 0.37, 3);
  CHECK(std::abs(psi.squared_norm() - 1.0) < 1e-10);
}

TEST_CASE("product-formula step is reversible") {
  SpinModelSpec spec;
  spec.n = 8;
  spec.delta = 1.3;
  spec.h = 0.5;
  SpinHamiltonian h = build_spin_model(spec);
  Trotter2 u(h);
  StateVector psi = gen_gaussian_muller(h.dim(), {2, 0}, true);
  StateVector orig = psi;
  for (int i = 0; i < 10; ++i) u.step(psi.amps, 0.21, 4);
  for (int i = 0; i < 10; ++i) u.step(psi.amps, -0.21, 4);
  CHECK(state_distance(psi, orig) < 1e-11);
}

TEST_CASE("product formula converges at second order (lattice and spin)") {
  auto measure_order = [&](auto&& ham, double tau) {
    Trotter2 u(ham);
    Eigen::MatrixXcd exact = expm_hermitian(densify(ham), cplx(0.0, -tau));
    StateVector psi0 = gen_gaussian_muller(ham.dim(), {5, 0}, true);
    StateVector ref = dense_apply(exact, psi0);
    std::vector<double> log_tau, log_err;
    for (std::size_t l : {4, 8, 16, 32, 64}) {
      StateVector psi = psi0;
      u.step(psi.amps, tau, l);
      log_tau.push_back(std::log(tau / double(l)));
      log_err.push_back(std::log(state_distance(psi, ref)));
    }
    // least-squares slope
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < log_tau.size(); ++i) {
      mx += log_tau[i];
      my += log_err[i];
    }
    mx /= double(log_tau.size());
    my /= double(log_tau.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < log_tau.size(); ++i) {
      num += (log_tau[i] - mx) * (log_err[i] - my);
      den += (log_tau[i] - mx) * (log_tau[i] - mx);
    }
    return num / den;
  };

  LatticeSpec lat;
  lat.lx = 8;
  lat.onsite = OnsiteModel::Anderson;
  lat.disorder_w = 1.0;
  lat.disorder_seed = {9, 0};
  CHECK(measure_order(build_lattice(lat), 1.0) == doctest::Approx(2.0).epsilon(0.05));

  SpinModelSpec sp;
  sp.n = 6;
  sp.delta = 1.5;
  sp.h = 0.4;
  CHECK(measure_order(build_spin_model(sp), 1.0) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("fine product-formula steps track the dense propagator") {
  SpinModelSpec spec;
  spec.n = 6;
  spec.delta = 0.84;
  SpinHamiltonian h = build_spin_model(spec);
  Trotter2 u(h);
  const double t = 2.0;
  StateVector psi = gen_gaussian_muller(h.dim(), {6, 0}, true);
  StateVector ref = dense_apply(expm_hermitian(densify(h), cplx(0.0, -t)), psi);
  u.step(psi.amps, t, 400);
  CHECK(state_distance(psi, ref) < 1e-4);
}

// ---------- Chebyshev propagator ----------

TEST_CASE("real-time Chebyshev evolution matches dense exponentiation at D=256") {
  LatticeSpec spec;
  spec.lx = 256;
  spec.onsite = OnsiteModel::Anderson;
  spec.disorder_w = 1.5;
  spec.disorder_seed = {11, 0};
  TightBindingOperator h = build_lattice(spec);
  Eigen::MatrixXcd dense = densify(h);
  StateVector psi = gen_gaussian_muller(h.dim(), {12, 0}, true);
  for (double t : {0.3, 4.0, 25.0}) {
    CAPTURE(t);
    StateVector got = evolve(h, psi, t);
    StateVector ref = dense_apply(expm_hermitian(dense, cplx(0.0, -t)), psi);
    CHECK(state_distance(got, ref) < 1e-10);
    CHECK(std::abs(got.squared_norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("imaginary-time Chebyshev projection matches dense exponentiation") {
  SpinModelSpec spec;
  spec.n = 8;
  spec.delta = 1.2;
  spec.h = 0.3;
  SpinHamiltonian h = build_spin_model(spec);
  Eigen::MatrixXcd dense = densify(h);
  StateVector psi = gen_gaussian_muller(h.dim(), {13, 0}, true);
  for (double beta : {0.1, 1.0, 6.0}) {
    CAPTURE(beta);
    StateVector got = thermal_project(h, psi, beta);
    StateVector ref = dense_apply(expm_hermitian(dense, cplx(-0.5 * beta, 0.0)), psi);
    const double scale = std::sqrt(ref.squared_norm());
    CHECK(state_distance(got, ref) / scale < 1e-10);
  }
}

TEST_CASE("zero arguments are identities") {
  SpinModelSpec spec;
  spec.n = 4;
  SpinHamiltonian h = build_spin_model(spec);
  StateVector psi = gen_gaussian_muller(h.dim(), {14, 0}, true);
  StateVector a = evolve(h, psi, 0.0);
  StateVector b = thermal_project(h, psi, 0.0);
  CHECK(state_distance(a, psi) < 1e-14);
  CHECK(state_distance(b, psi) < 1e-14);
}

TEST_CASE("mixed complex exponents are rejected") {
  SpinModelSpec spec;
  spec.n = 4;
  SpinHamiltonian h = build_spin_model(spec);
  StateVector psi = gen_gaussian_muller(h.dim(), {15, 0}, true);
  CHECK_THROWS_AS((void)chebyshev_apply(h, psi, cplx(0.5, 0.5), h.norm_bound_1()),
                  SpecError);
  CHECK_THROWS_AS((void)chebyshev_apply(h, psi, cplx(0.0, -1.0), h.norm_bound_1(), 1.0),
                  SpecError);
}

TEST_CASE("deep imaginary time projects onto the ground state") {
  SpinModelSpec spec;
  spec.n = 6;
  SpinHamiltonian h = build_spin_model(spec);
  Eigen::MatrixXcd dense = densify(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
  Eigen::VectorXcd ground = es.eigenvectors().col(0);
  StateVector psi = gen_gaussian_muller(h.dim(), {16, 0}, true);
  StateVector proj = thermal_project(h, psi, 60.0);
  // normalized projection should be parallel to the ground state
  Eigen::Map<Eigen::VectorXcd> v(proj.amps.data(), Eigen::Index(proj.dim));
  v.normalize();
  CHECK(std::abs(std::abs(ground.dot(v)) - 1.0) < 1e-8);
}

TEST_CASE("real-time evolution preserves energy") {
  SpinModelSpec spec;
  spec.n = 8;
  spec.delta = 1.5;
  SpinHamiltonian h = build_spin_model(spec);
  StateVector psi = gen_gaussian_muller(h.dim(), {17, 0}, true);
  std::vector<cplx> hpsi(h.dim());
  h.apply(psi.amps, hpsi);
  const double e0 = inner(psi.amps, hpsi).real();
  StateVector evolved = evolve(h, psi, 7.5);
  h.apply(evolved.amps, hpsi);
  const double e1 = inner(evolved.amps, hpsi).real();
  CHECK(e1 == doctest::Approx(e0).epsilon(1e-10));
}

TEST_CASE("product formula and Chebyshev evolution agree when refined") {
  LatticeSpec spec;
  spec.lx = 16;
  TightBindingOperator h = build_lattice(spec);
  Trotter2 u(h);
  StateVector psi = gen_gaussian_muller(h.dim(), {18, 0}, true);
  StateVector cheb = evolve(h, psi, 1.5);
  StateVector trot = psi;
  u.step(trot.amps, 1.5, 3000);
  CHECK(state_distance(cheb, trot) < 1e-5);
}
