#include "rst/runner.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rst/dense.hpp"
#include "rst/fidelity.hpp"
#include "rst/lattice.hpp"
#include "rst/spin.hpp"

namespace rst {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ResourceError("cannot open output file: " + path);
  return f;
}

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  return out;
}

RandomStateKind parse_kind(const std::string& s) {
  if (s == "A" || s == "gaussian-normalized") return RandomStateKind::GaussianNormalized;
  if (s == "B" || s == "gaussian-raw") return RandomStateKind::GaussianRaw;
  if (s == "C" || s == "random-phase") return RandomStateKind::RandomPhase;
  throw SpecError("unknown state kind: " + s + " (expected A, B, or C)");
}

AverageMode parse_mode(const std::string& s) {
  if (s == "M1" || s == "m1") return AverageMode::M1;
  if (s == "M2" || s == "m2") return AverageMode::M2;
  throw SpecError("unknown averaging mode: " + s + " (expected M1 or M2)");
}

LatticeSpec lattice_from(const RunConfig& cfg) {
  LatticeSpec spec;
  const std::string g = cfg.get("geometry", "chain");
  if (g == "chain") spec.geometry = LatticeGeometry::Chain;
  else if (g == "square") spec.geometry = LatticeGeometry::Square;
  else if (g == "graphene") spec.geometry = LatticeGeometry::Graphene;
  else if (g == "kagome") spec.geometry = LatticeGeometry::Kagome;
  else throw SpecError("unknown lattice geometry: " + g);
  spec.lx = cfg.get_uint("lx", cfg.get_uint("sites", 2));
  spec.ly = cfg.get_uint("ly", 1);
  spec.boundary = cfg.get("boundary", "periodic") == "open" ? Boundary::Open
                                                            : Boundary::Periodic;
  spec.v = cfg.get_num("v", 1.0);
  const std::string on = cfg.get("onsite", "zero");
  if (on == "zero") spec.onsite = OnsiteModel::Zero;
  else if (on == "anderson") spec.onsite = OnsiteModel::Anderson;
  else if (on == "sinusoidal") spec.onsite = OnsiteModel::SinusoidalBond;
  else throw SpecError("unknown onsite model: " + on);
  spec.disorder_w = cfg.get_num("disorder_w", 0.0);
  spec.sin_mode = int(cfg.get_uint("sin_mode", 1));
  spec.disorder_seed = {cfg.get_uint("disorder_seed", 12345), 0};
  return spec;
}

SpinModelSpec spin_from(const RunConfig& cfg) {
  SpinModelSpec spec;
  const std::string g = cfg.get("geometry", "chain");
  if (g == "chain") spec.geometry = SpinGeometry::Chain;
  else if (g == "square") spec.geometry = SpinGeometry::Square;
  else if (g == "triangular") spec.geometry = SpinGeometry::Triangular;
  else if (g == "kagome") spec.geometry = SpinGeometry::Kagome;
  else throw SpecError("unknown spin geometry: " + g);
  spec.n = cfg.get_uint("spins", 10);
  spec.lx = cfg.get_uint("lx", 0);
  spec.ly = cfg.get_uint("ly", 0);
  spec.boundary = cfg.get("boundary", "periodic") == "open" ? SpinBoundary::Open
                                                            : SpinBoundary::Periodic;
  spec.j = cfg.get_num("j", -1.0);
  spec.delta = cfg.get_num("delta", 1.0);
  spec.h = cfg.get_num("h", 0.0);
  spec.max_spins = cfg.get_uint("max_spins", 24);
  return spec;
}

SpectrumParams spectrum_from(const RunConfig& cfg) {
  SpectrumParams p;
  p.n_samples = cfg.get_uint("samples", 256);
  p.tau = cfg.get_num("tau", 0.0);
  p.sigma = cfg.get_num("sigma", 0.0);
  p.kind = parse_kind(cfg.get("kind", "A"));
  p.realizations = cfg.get_uint("realizations", 1);
  p.seed = {cfg.get_uint("seed", 1), 0};
  p.substeps = cfg.get_uint("substeps", 5);
  return p;
}

void write_provenance(const RunConfig& cfg, const std::string& output,
                      double wall_seconds) {
  nlohmann::json j;
  j["subcommand"] = cfg.subcommand;
  j["version"] = kVersion;
  j["wall_seconds"] = wall_seconds;
  j["config"] = cfg.kv;
  std::ofstream f(output + ".provenance.json");
  if (!f) throw ResourceError("cannot write provenance sidecar for " + output);
  f << j.dump(2) << "\n";
}

void emit_report(const std::string& path,
                 const std::vector<std::pair<std::string, std::string>>& rows) {
  auto f = open_out(path);
  for (const auto& [k, v] : rows) f << k << "=" << v << "\n";
}

KrausChannel channel_from(const std::string& desc) {
  if (desc == "identity")
    return make_channel({Eigen::MatrixXcd::Identity(2, 2)});
  if (desc.rfind("depolarizing:", 0) == 0)
    return depolarizing_channel(std::stod(desc.substr(13)));
  std::ifstream f(desc);
  if (!f) throw ResourceError("cannot open channel file: " + desc);
  nlohmann::json j;
  f >> j;
  const std::size_t d = j.at("dim").get<std::size_t>();
  std::vector<Eigen::MatrixXcd> ops;
  for (const auto& mat : j.at("ops")) {
    if (mat.size() != d * d)
      throw SpecError("channel file: operation element is not D x D row-major");
    Eigen::MatrixXcd e(d, d);
    std::size_t idx = 0;
    for (const auto& entry : mat) {
      e(idx / d, idx % d) = cplx(entry.at(0).get<double>(), entry.at(1).get<double>());
      ++idx;
    }
    ops.push_back(std::move(e));
  }
  return make_channel(std::move(ops));
}

void run_selftest(const RunConfig& cfg, const std::string& output);

void dispatch(const RunConfig& cfg, const std::string& output) {
  const std::string& sub = cfg.subcommand;
  if (sub == "dos") {
    TightBindingOperator h = build_lattice(lattice_from(cfg));
    Trotter2 u(h);
    emit_spectrum_csv(output, dos(u, h.norm_bound_1(), h.dim(), spectrum_from(cfg)));
  } else if (sub == "ldos") {
    TightBindingOperator h = build_lattice(lattice_from(cfg));
    Trotter2 u(h);
    StateVector psi(h.dim());
    const std::size_t site = cfg.get_uint("site", 0);
    if (site >= h.dim()) throw SpecError("ldos: site index out of range");
    psi.amps[site] = 1.0;
    emit_spectrum_csv(output, ldos(u, h.norm_bound_1(), psi, spectrum_from(cfg)));
  } else if (sub == "thermal") {
    SpinHamiltonian h = build_spin_model(spin_from(cfg));
    std::vector<double> grid = parse_grid(cfg.get("beta_grid", cfg.get("beta", "1")));
    std::vector<std::string> obs;
    std::vector<double> beta, value, err;
    for (double b : grid) {
      TraceEstimate e = thermal_expectation(
          h, h, b, parse_kind(cfg.get("kind", "A")),
          cfg.get_uint("realizations", 20), parse_mode(cfg.get("mode", "M2")),
          {cfg.get_uint("seed", 1), 0});
      obs.push_back("H");
      beta.push_back(b);
      value.push_back(e.value.real());
      err.push_back(e.err);
    }
    emit_thermal_csv(output, obs, beta, value, err);
  } else if (sub == "specific-heat") {
    SpinHamiltonian h = build_spin_model(spin_from(cfg));
    std::vector<double> grid = parse_grid(cfg.get("beta_grid", cfg.get("beta", "1")));
    ThermalSeries ts = specific_heat(
        h, grid, h.sites(), parse_kind(cfg.get("kind", "A")),
        cfg.get_uint("realizations", 20), parse_mode(cfg.get("mode", "M2")),
        {cfg.get_uint("seed", 1), 0});
    std::vector<std::string> obs;
    std::vector<double> beta, value, err;
    for (std::size_t i = 0; i < ts.beta.size(); ++i) {
      obs.push_back("H"); beta.push_back(ts.beta[i]);
      value.push_back(ts.energy[i]); err.push_back(ts.energy_err[i]);
      obs.push_back("H2"); beta.push_back(ts.beta[i]);
      value.push_back(ts.energy2[i]); err.push_back(ts.energy2_err[i]);
      obs.push_back("C"); beta.push_back(ts.beta[i]);
      value.push_back(ts.specific_heat[i]); err.push_back(ts.specific_heat_err[i]);
    }
    emit_thermal_csv(output, obs, beta, value, err);
  } else if (sub == "current-corr") {
    SpinModelSpec ss = spin_from(cfg);
    SpinHamiltonian h = build_spin_model(ss);
    SpinCurrentOperator jop(ss);
    emit_correlation_csv(
        output, operator_correlation(h, jop, cfg.get_num("beta", 0.0),
                                     cfg.get_num("t_max", 10.0),
                                     cfg.get_uint("steps", 100),
                                     parse_kind(cfg.get("kind", "A")),
                                     cfg.get_uint("realizations", 1),
                                     {cfg.get_uint("seed", 1), 0}));
  } else if (sub == "density-profile") {
    SpinModelSpec ss = spin_from(cfg);
    SpinHamiltonian h = build_spin_model(ss);
    emit_density_csv(
        output, density_profile(h, cfg.get_uint("site", h.sites() / 2),
                                cfg.get_num("t_max", 10.0),
                                cfg.get_uint("steps", 50),
                                cfg.get_uint("realizations", 1),
                                {cfg.get_uint("seed", 1), 0}));
  } else if (sub == "esr") {
    SpinHamiltonian h = build_spin_model(spin_from(cfg));
    emit_spectrum_csv(output,
                      esr_spectrum(h, cfg.get_num("beta", 0.0), spectrum_from(cfg)));
  } else if (sub == "xeb") {
    const std::size_t qubits = cfg.get_uint("qubits", 12);
    const std::size_t shots = cfg.get_uint("shots", 500000);
    const SeedSpec seed{cfg.get_uint("seed", 1), 0};
    StateVector phi = gen_gaussian_muller(std::size_t{1} << qubits, seed, true);
    std::vector<double> probs = probs_from_state(phi);
    BitstringSample sample;
    const std::string mode = cfg.get("sample", "self");
    if (cfg.has("bitstrings")) {
      sample = read_bitstring_file(cfg.get("bitstrings"));
      if (sample.qubits != qubits)
        throw SpecError("xeb: bitstring file qubit count mismatch");
    } else if (mode == "self") {
      sample = sample_from_state(phi, shots, seed.with_stream(1));
    } else if (mode == "uniform") {
      sample = sample_uniform(qubits, shots, seed.with_stream(1));
    } else if (mode == "cross") {
      StateVector other = gen_gaussian_muller(std::size_t{1} << qubits,
                                              seed.with_stream(7), true);
      sample = sample_from_state(other, shots, seed.with_stream(1));
    } else {
      throw SpecError("xeb: sample must be self, uniform, or cross");
    }
    CrossEntropyReport rep = xeb_report(probs, sample);
    emit_report(output, {{"qubits", std::to_string(qubits)},
                         {"m", std::to_string(rep.m)},
                         {"c_u", fmt(rep.c_u)},
                         {"alpha", fmt(rep.alpha)},
                         {"alpha_sigma", fmt(rep.alpha_sigma)},
                         {"mu", fmt(rep.mu)},
                         {"psi", fmt(rep.psi)},
                         {"clipped", std::to_string(rep.clipped)}});
  } else if (sub == "fidelity") {
    KrausChannel ch = channel_from(cfg.get("channel", "identity"));
    std::vector<std::pair<std::string, std::string>> rows = {
        {"dim", std::to_string(ch.dim)},
        {"trace_preserving", ch.trace_preserving() ? "true" : "false"},
        {"completeness_defect", fmt(ch.completeness_defect())},
        {"f_ent", fmt(entanglement_fidelity(ch))},
        {"f_avg", fmt(average_fidelity(ch))}};
    if (cfg.has("trials")) {
      McFidelity mc = mc_average_fidelity(ch, cfg.get_uint("trials", 1000),
                                          {cfg.get_uint("seed", 1), 0});
      rows.push_back({"f_avg_mc", fmt(mc.mean)});
      rows.push_back({"f_avg_mc_stderr", fmt(mc.std_error)});
    }
    emit_report(output, rows);
  } else if (sub == "trace") {
    const std::string model = cfg.get("model", "lattice");
    std::vector<std::pair<std::string, std::string>> rows;
    auto fill = [&](const LinearOperator& h) {
      TraceEstimate e = estimate_trace(
          h, parse_kind(cfg.get("kind", "A")), cfg.get_uint("realizations", 20),
          parse_mode(cfg.get("mode", "M2")), {cfg.get_uint("seed", 1), 0});
      rows = {{"dim", std::to_string(h.dim())},
              {"value_re", fmt(e.value.real())},
              {"value_im", fmt(e.value.imag())},
              {"stderr", fmt(e.err)},
              {"realizations", std::to_string(e.realizations)}};
    };
    if (model == "lattice") {
      TightBindingOperator h = build_lattice(lattice_from(cfg));
      fill(h);
    } else if (model == "spin") {
      SpinHamiltonian h = build_spin_model(spin_from(cfg));
      fill(h);
    } else {
      throw SpecError("trace: model must be lattice or spin");
    }
    emit_report(output, rows);
  } else if (sub == "selftest") {
    run_selftest(cfg, output);
  } else {
    throw SpecError("unknown subcommand: " + sub);
  }
}

void run_selftest(const RunConfig& cfg, const std::string& output) {
  std::vector<std::pair<std::string, std::string>> rows;
  bool ok = true;
  auto check = [&](const std::string& name, bool pass) {
    rows.push_back({name, pass ? "pass" : "FAIL"});
    ok = ok && pass;
  };
  // state normalization
  StateVector a = gen_gaussian_muller(1024, {42, 0}, true);
  check("state_norm", std::abs(a.squared_norm() - 1.0) < 1e-12);
  // trace of identity is exact for normalized states
  DiagonalOperator id(std::vector<double>(256, 1.0));
  TraceEstimate e = estimate_trace(id, RandomStateKind::GaussianNormalized, 1,
                                   AverageMode::M2, {7, 0});
  check("trace_identity", std::abs(e.value.real() - 256.0) < 1e-9);
  // maximum-entropy anchor points
  const std::size_t d = 4096;
  check("mu_anchor_0",
        std::abs(solve_mu(std::log(double(d)) + kEulerGamma, d)) < 1e-8);
  check("mu_anchor_1",
        std::abs(solve_mu(std::log(double(d)) + kEulerGamma - 1.0, d) - 1.0) < 1e-8);
  // fidelity identity for a trace-preserving channel
  KrausChannel ch = depolarizing_channel(0.3);
  check("fidelity_identity",
        std::abs(average_fidelity(ch) -
                 (2.0 * entanglement_fidelity(ch) + 1.0) / 3.0) < 1e-12);
  (void)cfg;
  emit_report(output, rows);
  if (!ok) throw NumericalError("selftest failed; see " + output);
}

}  // namespace

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

double RunConfig::get_num(const std::string& key, double fallback) const {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw SpecError("config key '" + key + "' is not a number: " + it->second);
  }
}

std::size_t RunConfig::get_uint(const std::string& key, std::size_t fallback) const {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  try {
    return std::stoull(it->second);
  } catch (const std::exception&) {
    throw SpecError("config key '" + key + "' is not an unsigned integer: " +
                    it->second);
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SpecError("cannot open config file: " + path);
  RunConfig cfg;
  std::string line;
  while (std::getline(f, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const char* ws = " \t\r";
      s.erase(0, s.find_first_not_of(ws));
      const std::size_t last = s.find_last_not_of(ws);
      s.resize(last == std::string::npos ? 0 : last + 1);
      return s;
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    if (key == "subcommand") cfg.subcommand = val;
    else cfg.kv[key] = val;
  }
  return cfg;
}

void apply_overrides(RunConfig& cfg, const std::vector<std::string>& overrides) {
  for (const std::string& tok : overrides) {
    const std::size_t eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
      throw SpecError("override must have the form key=value: " + tok);
    cfg.kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
}

void run(const RunConfig& cfg) {
  if (cfg.subcommand.empty()) throw SpecError("no subcommand configured");
  std::string output = cfg.get("output");
  if (output.empty()) {
    const bool text = cfg.subcommand == "xeb" || cfg.subcommand == "fidelity" ||
                      cfg.subcommand == "trace" || cfg.subcommand == "selftest";
    output = cfg.subcommand + (text ? ".txt" : ".csv");
  }
  const auto t0 = std::chrono::steady_clock::now();
  dispatch(cfg, output);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_provenance(cfg, output, wall);
}

void emit_spectrum_csv(const std::string& path, const SpectrumResult& s) {
  auto f = open_out(path);
  f << "omega,value\n";
  for (std::size_t i = 0; i < s.omega.size(); ++i)
    f << fmt(s.omega[i]) << "," << fmt(s.value[i]) << "\n";
}

void emit_thermal_csv(const std::string& path,
                      const std::vector<std::string>& observable,
                      const std::vector<double>& beta,
                      const std::vector<double>& value,
                      const std::vector<double>& err) {
  auto f = open_out(path);
  f << "beta,T,observable,value,stderr\n";
  for (std::size_t i = 0; i < beta.size(); ++i)
    f << fmt(beta[i]) << "," << fmt(1.0 / beta[i]) << "," << observable[i] << ","
      << fmt(value[i]) << "," << fmt(err[i]) << "\n";
}

void emit_correlation_csv(const std::string& path, const CorrelationSeries& c) {
  auto f = open_out(path);
  f << "t,re,im\n";
  for (std::size_t i = 0; i < c.t.size(); ++i)
    f << fmt(c.t[i]) << "," << fmt(c.c[i].real()) << "," << fmt(c.c[i].imag())
      << "\n";
}

void emit_density_csv(const std::string& path, const DensityProfile& p) {
  auto f = open_out(path);
  f << "t,site,p\n";
  for (std::size_t ti = 0; ti < p.t.size(); ++ti)
    for (std::size_t l = 0; l < p.sites; ++l)
      f << fmt(p.t[ti]) << "," << l << "," << fmt(p.p[ti * p.sites + l]) << "\n";
}

BitstringSample read_bitstring_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SpecError("cannot open bitstring file: " + path);
  std::string header;
  std::getline(f, header);
  std::size_t l = 0, m = 0;
  if (std::sscanf(header.c_str(), "L=%zu m=%zu", &l, &m) != 2)
    throw SpecError("bitstring file: bad header (expected `L=<int> m=<int>`)");
  if (l == 0 || l > 62 || m == 0) throw SpecError("bitstring file: bad L or m");
  BitstringSample s;
  s.qubits = l;
  s.provenance = SampleProvenance::ExternalFile;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (line.size() != l)
      throw SpecError("bitstring file: line length != L: " + line);
    std::uint64_t v = 0;
    for (char c : line) {
      if (c != '0' && c != '1')
        throw SpecError("bitstring file: invalid character in " + line);
      v = (v << 1) | std::uint64_t(c == '1');
    }
    s.samples.push_back(v);
  }
  if (s.samples.size() != m)
    throw SpecError("bitstring file: sample count does not match header m");
  return s;
}

void write_bitstring_file(const std::string& path, const BitstringSample& s) {
  auto f = open_out(path);
  f << "L=" << s.qubits << " m=" << s.samples.size() << "\n";
  for (std::uint64_t v : s.samples) {
    std::string line(s.qubits, '0');
    for (std::size_t b = 0; b < s.qubits; ++b)
      if ((v >> (s.qubits - 1 - b)) & 1) line[b] = '1';
    f << line << "\n";
  }
}

}  // namespace rst
