#include "decompound/charfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace decompound {

void FrequencyGrid::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw std::invalid_argument("FrequencyGrid: eta must be positive and finite");
  if (count < 1) throw std::invalid_argument("FrequencyGrid: count must be >= 1");
}

FrequencyGrid grid_to_cutoff(double eta, double cutoff) {
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw std::invalid_argument("grid_to_cutoff: eta must be positive and finite");
  if (!(cutoff > 0.0) || !std::isfinite(cutoff))
    throw std::invalid_argument("grid_to_cutoff: cutoff must be positive and finite");
  // The 1e-9 slack admits points a sub-ulp past the cutoff when cutoff/eta is
  // an integer that fp division landed a hair under.
  const auto count = static_cast<std::int64_t>(std::floor(cutoff / eta + 1e-9)) + 1;
  return FrequencyGrid{eta, count};
}

const char* to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::ecf: return "ecf";
    case SeriesKind::true_cf: return "true_cf";
    case SeriesKind::psi: return "psi";
    case SeriesKind::unwrapped_log: return "unwrapped_log";
  }
  return "unknown";
}

std::complex<double> ComplexSeries::at_signed(std::int64_t j) const {
  if (j >= 0) return values[static_cast<std::size_t>(j)];
  return std::conj(values[static_cast<std::size_t>(-j)]);
}

ComplexSeries ecf(const ObservationSet& obs, const FrequencyGrid& grid) {
  grid.validate();
  if (obs.values.empty()) throw std::invalid_argument("ecf: empty sample");
  const auto m = static_cast<std::size_t>(grid.count);
  std::vector<std::complex<double>> acc(m, {0.0, 0.0});
  for (const double xv : obs.values) {
    // z_j = e^{i t_j x} by rotation: one sincos per observation, one complex
    // multiply per grid step. Observation-major accumulation keeps the
    // per-point summation order fixed left-to-right over observations.
    const double a = grid.eta * xv;
    const std::complex<double> rot(std::cos(a), std::sin(a));
    std::complex<double> z(1.0, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      acc[j] += z;
      z *= rot;
    }
  }
  const double inv_n = 1.0 / static_cast<double>(obs.values.size());
  ComplexSeries out;
  out.grid = grid;
  out.kind = SeriesKind::ecf;
  out.values.resize(m);
  for (std::size_t j = 0; j < m; ++j) out.values[j] = acc[j] * inv_n;
  // t=0 is a mean of ones; force out the 1/n*n rounding (it is exact for
  // n <= 2^53 anyway, this documents the contract).
  out.values[0] = {1.0, 0.0};
  return out;
}

ComplexSeries true_cf_x(double lambda, const JumpLaw& law, const FrequencyGrid& grid) {
  grid.validate();
  if (!(lambda > 0.0)) throw std::invalid_argument("true_cf_x: lambda must be positive");
  if (!law.cf) throw std::invalid_argument("true_cf_x: jump law has no cf");
  const auto m = static_cast<std::size_t>(grid.count);
  ComplexSeries out;
  out.grid = grid;
  out.kind = SeriesKind::true_cf;
  out.values.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double t = grid.t(static_cast<std::int64_t>(j));
    const std::complex<double> cfj = law.cf(t);
    // One complex exp of -lambda - t^2/2 + lambda*cf(t).
    out.values[j] = std::exp(std::complex<double>(
        -lambda - 0.5 * t * t + lambda * cfj.real(), lambda * cfj.imag()));
  }
  if (std::abs(out.values[0] - std::complex<double>(1.0, 0.0)) > 1e-12)
    throw std::invalid_argument("true_cf_x: jump law cf(0) != 1");
  return out;
}

ComplexSeries deconvolve_gaussian(const ComplexSeries& series, double lambda) {
  if (series.kind != SeriesKind::ecf && series.kind != SeriesKind::true_cf)
    throw std::invalid_argument("deconvolve_gaussian: input must be an ecf or true_cf series");
  if (!(lambda > 0.0)) throw std::invalid_argument("deconvolve_gaussian: lambda must be positive");
  const auto m = static_cast<std::size_t>(series.grid.count);
  if (series.values.size() != m)
    throw std::invalid_argument("deconvolve_gaussian: series length does not match its grid");
  ComplexSeries out;
  out.grid = series.grid;
  out.kind = SeriesKind::psi;
  out.values.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double t = series.grid.t(static_cast<std::int64_t>(j));
    const double expo = lambda + 0.5 * t * t;
    if (expo > 709.0)
      throw GridBeyondCutoff("deconvolve_gaussian: exp(" + std::to_string(expo) +
                             ") overflows at t=" + std::to_string(t) +
                             "; keep the grid inside |t| <= 1/h");
    out.values[j] = series.values[j] * std::exp(expo);
  }
  return out;
}

}  // namespace decompound
