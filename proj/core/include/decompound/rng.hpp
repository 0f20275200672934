#pragma once

#include <cstdint>

namespace decompound {

// Counter-style splitmix64: state advances by the golden-ratio gamma, output
// is the mix13 finalizer. Deliberately not <random>: distribution algorithms
// there are implementation-defined, and the output contracts here require
// byte-identical results across rebuilds.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Strictly inside (0,1); safe to feed into log().
  double uniform_open();

  // Box-Muller, consumes exactly two uniforms per call, no cached spare.
  double normal();

  // Inversion by search. Exact for the small intensities in scope; requires
  // 0 < lambda <= 30.
  std::uint64_t poisson(double lambda);

  // Unit scale, density 0.5*exp(-|x|), variance 2.
  double laplace();

 private:
  std::uint64_t state_;
};

// Decorrelated child seed: substream `index` of `master`. Feeding these into
// fresh Rng instances keeps per-increment and per-replicate simulation
// reproducible under any execution order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace decompound
