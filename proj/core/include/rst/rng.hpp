#pragma once

#include <cstdint>

namespace rst {

/// Master seed plus stream index. Each independent realization gets its own
/// stream so that results do not depend on the order in which realizations
/// are generated.
struct SeedSpec {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  SeedSpec with_stream(std::uint64_t s) const { return {master, s}; }
};

/// xoshiro256** seeded through splitmix64 from (master, stream).
/// Same SeedSpec -> bit-identical sequence on every run.
class Rng {
 public:
  explicit Rng(SeedSpec seed);

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in (0, 1); never returns 0.
  double uniform_pos();
  /// Standard normal via the polar Box-Muller variant.
  double normal();

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace rst
