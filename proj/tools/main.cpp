// Command-line front end: every subcommand maps one-to-one onto a library
// pipeline via a flat key=value configuration (config file + overrides).
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "rst/runner.hpp"

namespace {

struct SubSetup {
  CLI::App* app;
  std::string config_path;
  std::vector<std::string> overrides;
  std::vector<std::pair<std::string, std::string*>> bound;  // key -> storage

  std::string* bind(const std::string& key) {
    bound.push_back({key, new std::string()});
    return bound.back().second;
  }
};

void add_common(SubSetup& s) {
  CLI::App* c = s.app;
  c->add_option("--config", s.config_path, "flat key=value config file");
  c->add_option("--set", s.overrides, "extra key=value overrides")
      ->take_all();
  c->add_option("--output", *s.bind("output"), "output file path");
  c->add_option("--seed", *s.bind("seed"), "master seed (64-bit unsigned)");
  c->add_option("--kind", *s.bind("kind"), "state family: A, B, or C");
  c->add_option("--realizations", *s.bind("realizations"), "realization count R");
  c->add_option("--mode", *s.bind("mode"), "averaging mode: M1 or M2");
}

void add_model(SubSetup& s) {
  CLI::App* c = s.app;
  c->add_option("--geometry", *s.bind("geometry"), "lattice/spin geometry");
  c->add_option("--sites", *s.bind("sites"), "chain site count");
  c->add_option("--lx", *s.bind("lx"), "cells along x");
  c->add_option("--ly", *s.bind("ly"), "cells along y");
  c->add_option("--boundary", *s.bind("boundary"), "periodic or open");
  c->add_option("--v", *s.bind("v"), "hopping strength");
  c->add_option("--onsite", *s.bind("onsite"), "zero, anderson, or sinusoidal");
  c->add_option("--disorder-w", *s.bind("disorder_w"), "disorder half-width W");
  c->add_option("--disorder-seed", *s.bind("disorder_seed"), "quenched disorder seed");
  c->add_option("--spins", *s.bind("spins"), "spin count N");
  c->add_option("--j", *s.bind("j"), "exchange coupling J");
  c->add_option("--delta", *s.bind("delta"), "anisotropy Delta");
  c->add_option("--field", *s.bind("h"), "field along z");
}

void add_spectrum(SubSetup& s) {
  CLI::App* c = s.app;
  c->add_option("--samples", *s.bind("samples"), "time samples N (2N bins out)");
  c->add_option("--tau", *s.bind("tau"), "time step (default 0.8*pi/bound)");
  c->add_option("--sigma", *s.bind("sigma"), "Gaussian window width (default T/3)");
  c->add_option("--substeps", *s.bind("substeps"), "product-formula substeps l");
}

void add_thermal(SubSetup& s) {
  CLI::App* c = s.app;
  c->add_option("--beta", *s.bind("beta"), "inverse temperature");
  c->add_option("--beta-grid", *s.bind("beta_grid"), "comma-separated beta grid");
}

void add_dynamics(SubSetup& s) {
  CLI::App* c = s.app;
  c->add_option("--t-max", *s.bind("t_max"), "final time");
  c->add_option("--steps", *s.bind("steps"), "time steps");
  c->add_option("--site", *s.bind("site"), "site index");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random-state estimators for large Hermitian operators"};
  app.require_subcommand(1);

  const std::vector<std::string> names = {
      "dos",         "ldos",           "thermal", "specific-heat",
      "current-corr", "density-profile", "esr",    "xeb",
      "fidelity",    "trace",          "selftest"};
  std::vector<SubSetup> setups(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    SubSetup& s = setups[i];
    s.app = app.add_subcommand(names[i]);
    add_common(s);
    add_model(s);
    add_spectrum(s);
    add_thermal(s);
    add_dynamics(s);
    CLI::App* c = s.app;
    if (names[i] == "xeb") {
      c->add_option("--qubits", *s.bind("qubits"), "qubit count L");
      c->add_option("--shots", *s.bind("shots"), "sample count m");
      c->add_option("--sample", *s.bind("sample"), "self, uniform, or cross");
      c->add_option("--bitstrings", *s.bind("bitstrings"), "external bitstring file");
      c->add_subcommand("self-test", "score the state against its own samples");
    }
    if (names[i] == "fidelity") {
      c->add_option("--channel", *s.bind("channel"),
                    "identity, depolarizing:<p>, or a JSON file");
      c->add_option("--trials", *s.bind("trials"), "Monte Carlo trials");
    }
    if (names[i] == "trace")
      c->add_option("--model", *s.bind("model"), "lattice or spin");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (std::size_t i = 0; i < names.size(); ++i) {
    SubSetup& s = setups[i];
    if (!s.app->parsed()) continue;
    try {
      rst::RunConfig cfg;
      if (!s.config_path.empty()) cfg = rst::load_config(s.config_path);
      cfg.subcommand = names[i];
      for (const auto& [key, val] : s.bound)
        if (!val->empty()) cfg.kv[key] = *val;
      if (names[i] == "xeb" && s.app->get_subcommand_ptr("self-test") != nullptr &&
          s.app->get_subcommand_ptr("self-test")->parsed())
        cfg.kv["sample"] = "self";
      rst::apply_overrides(cfg, s.overrides);
      rst::run(cfg);
      return 0;
    } catch (const rst::SpecError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    } catch (const rst::ResourceError& e) {
      std::cerr << "resource error: " << e.what() << "\n";
      return 3;
    } catch (const rst::NumericalError& e) {
      std::cerr << "numerical error: " << e.what() << "\n";
      return 4;
    }
  }
  return 2;
}
