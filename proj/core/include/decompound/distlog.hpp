#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "decompound/charfun.hpp"

namespace decompound {

enum class LogStatus {
  ok,
  vanished,      // |psi| dipped below the modulus floor; the continuous log is undefined
  jump_suspect,  // an argument increment came within jump_threshold of pi; grid may be too coarse
};

const char* to_string(LogStatus s);

// psi is bounded away from zero in truth, so near-zero values signal
// estimation failure rather than structure. The floor converts that into a
// detectable runtime condition.
inline constexpr double kDefaultModulusFloor = 1e-8;

// Increments above this raise jump_suspect instead of silently unwrapping:
// a step that large may have skipped a crossing of the negative real axis.
inline constexpr double kDefaultJumpThreshold = 0.9 * std::numbers::pi;

struct UnwrappedLog {
  FrequencyGrid grid;
  // re = log|psi|, im = continuously tracked argument (principal value plus
  // the accumulated 2*pi branch corrections).
  std::vector<std::complex<double>> log_values;
  double base_value = 0.0;  // log psi(0); equals lambda for a deconvolved series
  double min_modulus = 0.0;
  LogStatus status = LogStatus::ok;
  std::int64_t status_index = -1;  // first offending grid index, -1 when ok
  std::int64_t corrections = 0;    // number of branch-change events on the half-grid

  // Mirrored view: the continuous log of a Hermitian series is Hermitian.
  std::complex<double> at_signed(std::int64_t j) const;
};

// Continuous branch of log psi along the grid, anchored at the real positive
// value psi(0). Sequential scan from t=0 outward: each argument takes the
// branch closest to its predecessor. On vanished the remaining entries are
// zero-filled; on jump_suspect unwrapping continues (minimal increment is
// still the best available branch) and the first suspect index is recorded.
UnwrappedLog unwrap_log(const ComplexSeries& psi,
                        double jump_threshold = kDefaultJumpThreshold,
                        double modulus_floor = kDefaultModulusFloor);

struct NonvanishingCheck {
  bool ok = true;
  std::int64_t index = -1;  // first dip below the floor, -1 if none
  double min_modulus = 0.0;
};

// Scans the whole grid (total function, no exceptions).
NonvanishingCheck check_nonvanishing(const ComplexSeries& psi,
                                     double modulus_floor = kDefaultModulusFloor);

}  // namespace decompound
