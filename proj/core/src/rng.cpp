#include "decompound/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace decompound {
namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;

// mix13 finalizer (Stafford variant 13 of the murmur3 avalanche).
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

std::uint64_t Rng::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double Rng::uniform_open() {
  // 53 bits plus a half-ulp offset: never exactly 0 or 1.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
}

double Rng::normal() {
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::poisson(double lambda) {
  if (!(lambda > 0.0) || lambda > 30.0)
    throw std::invalid_argument("poisson: lambda must be in (0, 30]");
  const double u = uniform_open();
  double p = std::exp(-lambda);
  double cum = p;
  std::uint64_t k = 0;
  // cum converges to 1 up from below; u < 1 strictly, so the loop terminates.
  // The cap only guards fp plateau pathologies.
  while (u > cum && k < 1000) {
    ++k;
    p *= lambda / static_cast<double>(k);
    cum += p;
  }
  return k;
}

double Rng::laplace() {
  const double u = uniform_open();
  return u < 0.5 ? std::log(2.0 * u) : -std::log(2.0 - 2.0 * u);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master ^ kStreamSalt) + kGamma * (index + 1));
}

}  // namespace decompound
