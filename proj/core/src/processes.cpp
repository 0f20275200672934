#include "decompound/processes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace decompound {

JumpLaw normal_jump_law() {
  JumpLaw law;
  law.name = "normal";
  law.sampler = [](Rng& rng) { return rng.normal(); };
  law.cf = [](double t) { return std::complex<double>(std::exp(-0.5 * t * t), 0.0); };
  law.density = [](double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  };
  law.cf_decay = CfDecay{CfDecay::Kind::supersmooth, 2.0, 0.5};
  return law;
}

JumpLaw laplace_jump_law() {
  JumpLaw law;
  law.name = "laplace";
  law.sampler = [](Rng& rng) { return rng.laplace(); };
  law.cf = [](double t) { return std::complex<double>(1.0 / (1.0 + t * t), 0.0); };
  law.density = [](double x) { return 0.5 * std::exp(-std::abs(x)); };
  law.cf_decay = CfDecay{CfDecay::Kind::ordinary_smooth, 2.0, 1.0};
  return law;
}

void ModelSpec::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("ModelSpec: lambda must be positive and finite");
  if (n < 1) throw std::invalid_argument("ModelSpec: n must be >= 1");
  if (delta != 1.0)
    throw std::invalid_argument("ModelSpec: delta is fixed to 1 (rescale the model)");
  if (!jump_law.sampler) throw std::invalid_argument("ModelSpec: jump law has no sampler");
}

Increment simulate_increment(double lambda, const JumpLaw& law, Rng& rng) {
  if (!(lambda > 0.0)) throw std::invalid_argument("simulate_increment: lambda must be positive");
  if (!law.sampler) throw std::invalid_argument("simulate_increment: jump law has no sampler");
  const std::uint64_t k = rng.poisson(lambda);
  double y = 0.0;  // empty sum stays exactly 0
  for (std::uint64_t j = 0; j < k; ++j) {
    const double w = law.sampler(rng);
    if (!std::isfinite(w))
      throw std::runtime_error("jump law '" + law.name + "' produced a non-finite draw");
    y += w;
  }
  const double z = rng.normal();
  return Increment{y, z, k};
}

ObservationSet simulate_observations(const ModelSpec& spec, std::uint64_t seed) {
  spec.validate();
  ObservationSet obs;
  obs.spec = spec;
  obs.seed = seed;
  const auto n = static_cast<std::size_t>(spec.n);
  obs.values.resize(n);
  ObservationSet::Breakdown parts;
  parts.y.resize(n);
  parts.z.resize(n);
  parts.jump_count.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, i));
    const Increment inc = simulate_increment(spec.lambda, spec.jump_law, rng);
    parts.y[i] = inc.y;
    parts.z[i] = inc.z;
    parts.jump_count[i] = inc.jump_count;
    obs.values[i] = inc.y + inc.z;
  }
  obs.breakdown = std::move(parts);
  return obs;
}

}  // namespace decompound
