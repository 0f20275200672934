#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "decompound/processes.hpp"

namespace decompound {

// Uniform half-line grid t_j = eta*j, j = 0..count-1. The negative half is
// never stored: every series living on it is Hermitian, so value(-t) is
// conj(value(t)) by construction (see ComplexSeries::at_signed).
struct FrequencyGrid {
  double eta = 0.0;
  std::int64_t count = 0;

  double t(std::int64_t j) const { return eta * static_cast<double>(j); }
  double t_max() const { return t(count - 1); }
  void validate() const;  // throws std::invalid_argument
};

// Grid covering [0, cutoff]: last point is the largest t_j <= cutoff. A
// sub-ulp overshoot from inexact division counts as "on the cutoff".
FrequencyGrid grid_to_cutoff(double eta, double cutoff);

enum class SeriesKind { ecf, true_cf, psi, unwrapped_log };

const char* to_string(SeriesKind kind);

struct ComplexSeries {
  FrequencyGrid grid;
  std::vector<std::complex<double>> values;
  SeriesKind kind = SeriesKind::ecf;

  // Mirrored full-grid view, j in [-(count-1), count-1].
  std::complex<double> at_signed(std::int64_t j) const;
};

struct GridBeyondCutoff : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Empirical characteristic function (1/n) * sum_k e^{i t X_k}. Summation
// order over observations is fixed left-to-right at every grid point.
ComplexSeries ecf(const ObservationSet& obs, const FrequencyGrid& grid);

// Characteristic function of one increment: e^{-lambda + lambda*cf_jump(t)}
// times the Gaussian factor e^{-t^2/2}.
ComplexSeries true_cf_x(double lambda, const JumpLaw& law, const FrequencyGrid& grid);

// Removes the Gaussian noise factor and the e^{-lambda} mass at zero jumps:
// multiplies by e^{lambda + t^2/2} (one exp per point; the combined exponent
// overflows later than e^{t^2/2} alone would). Result kind is psi, the
// function whose distinguished logarithm is lambda*cf_jump(t).
// Throws GridBeyondCutoff when lambda + t^2/2 exceeds the double exponent
// range; callers keep the grid inside |t| <= 1/h.
ComplexSeries deconvolve_gaussian(const ComplexSeries& series, double lambda);

}  // namespace decompound
