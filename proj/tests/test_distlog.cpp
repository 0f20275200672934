#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "decompound/charfun.hpp"
#include "decompound/distlog.hpp"
#include "decompound/processes.hpp"

using namespace decompound;

namespace {

ComplexSeries synthetic_psi(const FrequencyGrid& grid,
                            const std::function<std::complex<double>(double)>& f) {
  ComplexSeries psi;
  psi.grid = grid;
  psi.kind = SeriesKind::psi;
  psi.values.resize(static_cast<std::size_t>(grid.count));
  for (std::int64_t j = 0; j < grid.count; ++j)
    psi.values[static_cast<std::size_t>(j)] = f(grid.t(j));
  return psi;
}

ComplexSeries data_psi(std::int64_t n, std::uint64_t seed, double lambda, double cutoff) {
  ModelSpec spec;
  spec.lambda = lambda;
  spec.jump_law = normal_jump_law();
  spec.n = n;
  const ObservationSet obs = simulate_observations(spec, seed);
  return deconvolve_gaussian(ecf(obs, grid_to_cutoff(0x1p-9, cutoff)), lambda);
}

}  // namespace

TEST_CASE("pure rotation unwraps to exactly i*t across branch cuts") {
  // psi(t) = e^{it} on [0, 20]: the principal argument wraps three times
  // (at pi, 3pi, 5pi) but the tracked branch must climb straight through.
  const FrequencyGrid grid{0.01, 2001};
  const ComplexSeries psi =
      synthetic_psi(grid, [](double t) { return std::complex<double>{std::cos(t), std::sin(t)}; });
  const UnwrappedLog log = unwrap_log(psi);
  CHECK(log.status == LogStatus::ok);
  CHECK(log.corrections == 3);
  double worst = 0.0;
  for (std::int64_t j = 0; j < grid.count; ++j) {
    const auto L = log.log_values[static_cast<std::size_t>(j)];
    worst = std::max(worst, std::abs(L.real()));
    worst = std::max(worst, std::abs(L.imag() - grid.t(j)));
  }
  CHECK(worst < 1e-9);
  CHECK(log.log_values[2000].imag() == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("real positive psi needs no corrections") {
  // lambda = 0.5 with symmetric jumps: psi is real positive on the whole line,
  // so the argument is identically zero and no branch event can occur.
  const FrequencyGrid grid = grid_to_cutoff(0.01, 20.0);
  const ComplexSeries cf = true_cf_x(0.5, normal_jump_law(), grid);
  const ComplexSeries psi = deconvolve_gaussian(cf, 0.5);
  const UnwrappedLog log = unwrap_log(psi);
  CHECK(log.status == LogStatus::ok);
  CHECK(log.corrections == 0);
  CHECK(log.base_value == doctest::Approx(0.5).epsilon(1e-15));
  for (const auto& L : log.log_values) CHECK(L.imag() == 0.0);
}

TEST_CASE("log of e^{lambda e^{it}} is lambda e^{it}") {
  // Unit point-mass jumps: the distinguished log is available in closed form
  // and stays inside the principal branch for lambda = 1/2.
  const double lambda = 0.5;
  const FrequencyGrid grid{0.01, 1001};
  const ComplexSeries psi = synthetic_psi(grid, [&](double t) {
    return std::exp(lambda * std::complex<double>{std::cos(t), std::sin(t)});
  });
  const UnwrappedLog log = unwrap_log(psi);
  CHECK(log.status == LogStatus::ok);
  CHECK(log.corrections == 0);
  for (std::int64_t j = 0; j < grid.count; ++j) {
    const double t = grid.t(j);
    const auto L = log.log_values[static_cast<std::size_t>(j)];
    CHECK(L.real() == doctest::Approx(lambda * std::cos(t)).epsilon(1e-12));
    CHECK(L.imag() == doctest::Approx(lambda * std::sin(t)).epsilon(1e-12));
  }
}

TEST_CASE("exp of the unwrapped log restores psi on data") {
  const ComplexSeries psi = data_psi(2000, 6, 1.0, 2.0);
  const UnwrappedLog log = unwrap_log(psi);
  REQUIRE(log.status == LogStatus::ok);
  for (std::size_t j = 0; j < psi.values.size(); ++j) {
    const auto back = std::exp(log.log_values[j]);
    CHECK(std::abs(back - psi.values[j]) < 1e-12 * std::abs(psi.values[j]));
  }
}

TEST_CASE("argument increments stay below pi on data") {
  const ComplexSeries psi = data_psi(2000, 14, 1.0, 2.0);
  const UnwrappedLog log = unwrap_log(psi);
  for (std::size_t j = 1; j < log.log_values.size(); ++j)
    CHECK(std::abs(log.log_values[j].imag() - log.log_values[j - 1].imag()) <
          std::numbers::pi);
}

TEST_CASE("base value anchors at lambda on a deconvolved series") {
  const ComplexSeries psi = data_psi(500, 8, 1.5, 1.0);
  const UnwrappedLog log = unwrap_log(psi);
  CHECK(log.base_value == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(log.log_values[0].real() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(log.log_values[0].imag() == 0.0);
}

TEST_CASE("halving the grid step does not move the log") {
  // The coarse grid is a subset of the fine one (eta/2 is exact in binary),
  // so matching indices must agree to rounding error.
  const ComplexSeries coarse = data_psi(1000, 4, 1.0, 2.0);
  ModelSpec spec;
  spec.lambda = 1.0;
  spec.jump_law = normal_jump_law();
  spec.n = 1000;
  const ObservationSet obs = simulate_observations(spec, 4);
  const ComplexSeries fine =
      deconvolve_gaussian(ecf(obs, grid_to_cutoff(0x1p-10, 2.0)), 1.0);
  const UnwrappedLog lc = unwrap_log(coarse);
  const UnwrappedLog lf = unwrap_log(fine);
  REQUIRE(lc.status == LogStatus::ok);
  REQUIRE(lf.status == LogStatus::ok);
  for (std::int64_t j = 0; j < coarse.grid.count; ++j) {
    const auto a = lc.log_values[static_cast<std::size_t>(j)];
    const auto b = lf.log_values[static_cast<std::size_t>(2 * j)];
    CHECK(std::abs(a - b) < 1e-9);
  }
}

TEST_CASE("a modulus dip marks the log vanished and zero-fills the tail") {
  const FrequencyGrid grid{0.1, 21};
  ComplexSeries psi = synthetic_psi(grid, [](double) { return std::complex<double>{2.0, 0.0}; });
  psi.values[13] = {1e-12, 0.0};
  const UnwrappedLog log = unwrap_log(psi);
  CHECK(log.status == LogStatus::vanished);
  CHECK(log.status_index == 13);
  CHECK(log.min_modulus == doctest::Approx(1e-12).epsilon(1e-12));
  for (std::size_t j = 0; j < 13; ++j)
    CHECK(log.log_values[j].real() == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  for (std::size_t j = 13; j < 21; ++j) {
    CHECK(log.log_values[j].real() == 0.0);
    CHECK(log.log_values[j].imag() == 0.0);
  }
}

TEST_CASE("a floor above psi(0) vanishes immediately") {
  const ComplexSeries psi = data_psi(200, 9, 1.0, 1.0);
  const UnwrappedLog log = unwrap_log(psi, kDefaultJumpThreshold, 10.0);
  CHECK(log.status == LogStatus::vanished);
  CHECK(log.status_index == 0);
  for (const auto& L : log.log_values) CHECK(L == std::complex<double>{0.0, 0.0});
}

TEST_CASE("oversized increments raise jump_suspect but unwrapping continues") {
  const FrequencyGrid grid{0.01, 2001};
  const ComplexSeries psi =
      synthetic_psi(grid, [](double t) { return std::complex<double>{std::cos(t), std::sin(t)}; });
  // Every step moves the argument by ~0.01, far above this absurd threshold.
  const UnwrappedLog log = unwrap_log(psi, 1e-3);
  CHECK(log.status == LogStatus::jump_suspect);
  CHECK(log.status_index == 1);
  CHECK(log.corrections == 3);
  CHECK(log.log_values[2000].imag() == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("check_nonvanishing scans the entire grid") {
  const FrequencyGrid grid{0.1, 31};
  ComplexSeries psi = synthetic_psi(grid, [](double) { return std::complex<double>{1.0, 0.0}; });
  const NonvanishingCheck clean = check_nonvanishing(psi);
  CHECK(clean.ok);
  CHECK(clean.index == -1);
  CHECK(clean.min_modulus == 1.0);

  psi.values[20] = {1e-10, 0.0};
  psi.values[28] = {1e-14, 0.0};  // global min sits past the first dip
  const NonvanishingCheck dirty = check_nonvanishing(psi);
  CHECK_FALSE(dirty.ok);
  CHECK(dirty.index == 20);
  CHECK(dirty.min_modulus == doctest::Approx(1e-14).epsilon(1e-12));
}

TEST_CASE("unwrap_log rejects bad inputs") {
  const FrequencyGrid grid{0.1, 4};
  ComplexSeries psi = synthetic_psi(grid, [](double) { return std::complex<double>{1.0, 0.0}; });

  ComplexSeries wrong_kind = psi;
  wrong_kind.kind = SeriesKind::ecf;
  CHECK_THROWS_AS(unwrap_log(wrong_kind), std::invalid_argument);

  CHECK_THROWS_AS(unwrap_log(psi, std::numbers::pi), std::invalid_argument);
  CHECK_THROWS_AS(unwrap_log(psi, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(unwrap_log(psi, kDefaultJumpThreshold, 0.0), std::invalid_argument);

  ComplexSeries negative = psi;
  negative.values[0] = {-1.0, 0.0};
  CHECK_THROWS_AS(unwrap_log(negative), std::invalid_argument);

  ComplexSeries rotated = psi;
  rotated.values[0] = {1.0, 0.5};
  CHECK_THROWS_AS(unwrap_log(rotated), std::invalid_argument);

  ComplexSeries short_series = psi;
  short_series.values.pop_back();
  CHECK_THROWS_AS(unwrap_log(short_series), std::invalid_argument);
}

TEST_CASE("mirrored log view is the conjugate") {
  const ComplexSeries psi = data_psi(300, 12, 1.0, 1.5);
  const UnwrappedLog log = unwrap_log(psi);
  for (std::int64_t j = 0; j < psi.grid.count; ++j) {
    const auto plus = log.at_signed(j);
    const auto minus = log.at_signed(-j);
    CHECK(plus.real() == minus.real());
    CHECK(plus.imag() == -minus.imag());
  }
}
