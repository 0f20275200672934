#include "decompound/distlog.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace decompound {

const char* to_string(LogStatus s) {
  switch (s) {
    case LogStatus::ok: return "ok";
    case LogStatus::vanished: return "vanished";
    case LogStatus::jump_suspect: return "jump_suspect";
  }
  return "unknown";
}

std::complex<double> UnwrappedLog::at_signed(std::int64_t j) const {
  if (j >= 0) return log_values[static_cast<std::size_t>(j)];
  return std::conj(log_values[static_cast<std::size_t>(-j)]);
}

UnwrappedLog unwrap_log(const ComplexSeries& psi, double jump_threshold, double modulus_floor) {
  if (psi.kind != SeriesKind::psi)
    throw std::invalid_argument("unwrap_log: input series must have kind psi");
  if (!(jump_threshold > 0.0) || !(jump_threshold < std::numbers::pi))
    throw std::invalid_argument("unwrap_log: jump_threshold must lie in (0, pi)");
  if (!(modulus_floor > 0.0))
    throw std::invalid_argument("unwrap_log: modulus_floor must be positive");
  psi.grid.validate();
  if (psi.values.size() != static_cast<std::size_t>(psi.grid.count))
    throw std::invalid_argument("unwrap_log: series length does not match its grid");

  const std::complex<double> v0 = psi.values[0];
  if (!(v0.real() > 0.0) || std::abs(v0.imag()) > 1e-9 * v0.real())
    throw std::invalid_argument("unwrap_log: psi(0) must be real positive (it anchors the branch)");

  const auto m = psi.values.size();
  UnwrappedLog out;
  out.grid = psi.grid;
  out.log_values.assign(m, {0.0, 0.0});
  out.min_modulus = std::abs(v0);
  out.base_value = std::log(v0.real());
  if (out.min_modulus < modulus_floor) {
    // The offending entry stays zero like everything after it.
    out.status = LogStatus::vanished;
    out.status_index = 0;
    return out;
  }
  out.log_values[0] = {out.base_value, 0.0};

  constexpr double two_pi = 2.0 * std::numbers::pi;
  double prev_arg = 0.0;
  long long prev_k = 0;
  for (std::size_t j = 1; j < m; ++j) {
    const std::complex<double> v = psi.values[j];
    const double r = std::abs(v);
    if (r < out.min_modulus) out.min_modulus = r;
    if (r < modulus_floor) {
      // Continuous log undefined from here on; remaining entries stay zero.
      out.status = LogStatus::vanished;
      out.status_index = static_cast<std::int64_t>(j);
      return out;
    }
    const double princ = std::atan2(v.imag(), v.real());
    // Branch with the smallest step from the previous argument.
    const long long k = std::llround((prev_arg - princ) / two_pi);
    const double arg = princ + two_pi * static_cast<double>(k);
    if (std::abs(arg - prev_arg) > jump_threshold && out.status == LogStatus::ok) {
      out.status = LogStatus::jump_suspect;
      out.status_index = static_cast<std::int64_t>(j);
    }
    if (k != prev_k) ++out.corrections;
    out.log_values[j] = {std::log(r), arg};
    prev_arg = arg;
    prev_k = k;
  }
  return out;
}

NonvanishingCheck check_nonvanishing(const ComplexSeries& psi, double modulus_floor) {
  NonvanishingCheck out;
  out.min_modulus = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < psi.values.size(); ++j) {
    const double r = std::abs(psi.values[j]);
    if (r < out.min_modulus) out.min_modulus = r;
    if (out.ok && r < modulus_floor) {
      out.ok = false;
      out.index = static_cast<std::int64_t>(j);
    }
  }
  return out;
}

}  // namespace decompound
