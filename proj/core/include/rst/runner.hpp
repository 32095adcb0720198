#pragma once

#include <map>
#include <string>
#include <vector>

#include "rst/estimators.hpp"
#include "rst/xeb.hpp"

namespace rst {

/// Flat key=value configuration with command-line overrides. Unknown keys
/// are rejected at resolution time by the consuming pipeline.
struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const { return kv.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const;
  double get_num(const std::string& key, double fallback) const;
  std::size_t get_uint(const std::string& key, std::size_t fallback) const;
};

/// Parse `key=value` lines (# comments, blank lines ignored).
RunConfig load_config(const std::string& path);

/// Apply `key=value` override tokens on top of a config.
void apply_overrides(RunConfig& cfg, const std::vector<std::string>& overrides);

/// Execute the configured pipeline, writing the result CSV/report plus a
/// provenance sidecar (<output>.provenance.json). Throws SpecError /
/// ResourceError / NumericalError on failure; the CLI maps these to exit
/// codes 2 / 3 / 4.
void run(const RunConfig& cfg);

// ---- emitters (schema: header row mandatory, %.12e decimals) ----

void emit_spectrum_csv(const std::string& path, const SpectrumResult& s);
void emit_thermal_csv(const std::string& path,
                      const std::vector<std::string>& observable,
                      const std::vector<double>& beta,
                      const std::vector<double>& value,
                      const std::vector<double>& err);
void emit_correlation_csv(const std::string& path, const CorrelationSeries& c);
void emit_density_csv(const std::string& path, const DensityProfile& p);

/// Bitstring file: header `L=<int> m=<int>`, then one bitstring per line,
/// L characters of {0,1}, most-significant qubit first.
BitstringSample read_bitstring_file(const std::string& path);
void write_bitstring_file(const std::string& path, const BitstringSample& s);

}  // namespace rst
