#include "rst/fidelity.hpp"

#include <cmath>

#include "rst/random_states.hpp"

namespace rst {

double KrausChannel::completeness_defect() const {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& e : ops) s += e.adjoint() * e;
  s -= Eigen::MatrixXcd::Identity(dim, dim);
  return s.norm();
}

KrausChannel make_channel(std::vector<Eigen::MatrixXcd> ops) {
  if (ops.empty()) throw SpecError("channel: need at least one operation element");
  const std::size_t d = static_cast<std::size_t>(ops.front().rows());
  if (d == 0 || d > 64)
    throw SpecError("channel: dimension must be in [1, 64]");
  if (ops.size() > d * d)
    throw SpecError("channel: at most D^2 operation elements");
  for (const auto& e : ops)
    if (e.rows() != Eigen::Index(d) || e.cols() != Eigen::Index(d))
      throw SpecError("channel: all operation elements must be D x D");
  KrausChannel ch;
  ch.dim = d;
  ch.ops = std::move(ops);
  return ch;
}

double entanglement_fidelity(const KrausChannel& ch) {
  const double d = double(ch.dim);
  double s = 0.0;
  for (const auto& e : ch.ops) s += std::norm(e.trace());
  return s / (d * d);
}

double average_fidelity(const KrausChannel& ch) {
  const double d = double(ch.dim);
  double s = 0.0;
  for (const auto& e : ch.ops)
    s += std::norm(e.trace()) + (e.adjoint() * e).trace().real();
  return s / (d * (d + 1.0));
}

McFidelity mc_average_fidelity(const KrausChannel& ch, std::size_t trials,
                               SeedSpec seed) {
  if (trials < 100) throw SpecError("mc_average_fidelity: need >= 100 trials");
  const std::size_t d = ch.dim;
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    StateVector phi = gen_gaussian_muller(d, seed.with_stream(i), true);
    Eigen::Map<const Eigen::VectorXcd> psi(phi.amps.data(), d);
    double f = 0.0;
    for (const auto& e : ch.ops) f += std::norm(psi.dot(e * psi));
    sum += f;
    sum2 += f * f;
  }
  const double mean = sum / double(trials);
  const double var = std::max(0.0, sum2 / double(trials) - mean * mean);
  return {mean, std::sqrt(var / double(trials))};
}

FourthMomentReport fourth_moment_check(std::size_t dim, std::size_t trials,
                                       SeedSpec seed) {
  if (dim < 4 || dim > 64) throw SpecError("fourth_moment_check: dim in [4, 64]");
  if (trials < 100) throw SpecError("fourth_moment_check: need >= 100 trials");
  double m4 = 0.0, m22 = 0.0;
  cplx mixed{};
  for (std::size_t i = 0; i < trials; ++i) {
    StateVector phi = gen_gaussian_muller(dim, seed.with_stream(i), true);
    const cplx c0 = phi.amps[0], c1 = phi.amps[1], c2 = phi.amps[2],
               c3 = phi.amps[3];
    m4 += std::norm(c0) * std::norm(c0);
    m22 += std::norm(c0) * std::norm(c1);
    mixed += std::conj(c0) * c1 * std::conj(c2) * c3;
  }
  return {m4 / double(trials), m22 / double(trials),
          std::abs(mixed) / double(trials), trials};
}

KrausChannel random_channel(std::size_t dim, std::size_t n_ops, SeedSpec seed,
                            bool trace_preserving) {
  if (dim == 0 || dim > 64) throw SpecError("random_channel: dim in [1, 64]");
  if (n_ops == 0 || n_ops > dim * dim)
    throw SpecError("random_channel: need 1..D^2 operation elements");
  Rng rng(seed);
  // stacked Gaussian (n_ops*D) x D matrix; QR gives orthonormal columns so
  // the blocks satisfy sum E^dag E = I exactly
  Eigen::MatrixXcd g(n_ops * dim, dim);
  for (Eigen::Index r = 0; r < g.rows(); ++r)
    for (Eigen::Index c = 0; c < g.cols(); ++c)
      g(r, c) = cplx(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n_ops * dim, dim);
  std::vector<Eigen::MatrixXcd> ops;
  for (std::size_t a = 0; a < n_ops; ++a) {
    Eigen::MatrixXcd e = q.block(a * dim, 0, dim, dim);
    if (!trace_preserving) e *= 0.3 + 0.7 * rng.uniform();
    ops.push_back(std::move(e));
  }
  return make_channel(std::move(ops));
}

KrausChannel depolarizing_channel(double p) {
  if (p < 0.0 || p > 1.0) throw SpecError("depolarizing_channel: p in [0, 1]");
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
  sz << 1, 0, 0, -1;
  const double q = std::sqrt(p / 3.0);
  return make_channel({std::sqrt(1.0 - p) * id, q * sx, q * sy, q * sz});
}

}  // namespace rst
