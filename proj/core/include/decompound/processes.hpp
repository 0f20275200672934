#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "decompound/rng.hpp"

namespace decompound {

// Tail decay class of a characteristic function. Drives the rate normalizer
// in the bias study: supersmooth laws have |cf(t)| ~ e^{-scale*|t|^exponent},
// ordinary-smooth laws |cf(t)| ~ |t|^{-exponent}.
struct CfDecay {
  enum class Kind { supersmooth, ordinary_smooth };
  Kind kind = Kind::supersmooth;
  double exponent = 2.0;
  double scale = 1.0;  // only meaningful for supersmooth; 1/2 for the standard normal
};

// A jump-size distribution: how to sample it, its characteristic function,
// and (when known) its density for bias measurements.
struct JumpLaw {
  std::string name;
  std::function<double(Rng&)> sampler;
  std::function<std::complex<double>(double)> cf;
  std::function<double(double)> density;  // empty when unknown
  std::optional<CfDecay> cf_decay;
};

JumpLaw normal_jump_law();   // standard normal jumps
JumpLaw laplace_jump_law();  // density 0.5*e^{-|x|}, cf 1/(1+t^2)

struct ModelSpec {
  double lambda = 1.0;  // Poisson intensity per unit time
  JumpLaw jump_law;
  std::int64_t n = 1;  // number of unit-spacing increments
  double delta = 1.0;  // observation spacing; the model is normalized to 1

  void validate() const;  // throws std::invalid_argument
};

struct Increment {
  double y;  // compound Poisson part: sum of jump_count i.i.d. jumps
  double z;  // standard normal noise, independent of y
  std::uint64_t jump_count;
};

// One observed increment X = Y + Z. The empty jump sum is exactly 0.
Increment simulate_increment(double lambda, const JumpLaw& law, Rng& rng);

struct ObservationSet {
  std::vector<double> values;  // X_i = Y_i + Z_i, same floating sum as breakdown
  ModelSpec spec;
  std::uint64_t seed = 0;

  struct Breakdown {
    std::vector<double> y;
    std::vector<double> z;
    std::vector<std::uint64_t> jump_count;
  };
  std::optional<Breakdown> breakdown;
};

// Deterministic in (spec, seed); increment i draws from its own substream
// Rng(derive_seed(seed, i)), so a permutation of indices permutes the values.
ObservationSet simulate_observations(const ModelSpec& spec, std::uint64_t seed);

}  // namespace decompound
