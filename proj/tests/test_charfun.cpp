#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "decompound/charfun.hpp"

using namespace decompound;

namespace {

ObservationSet sample(std::int64_t n, std::uint64_t seed, double lambda = 1.0) {
  ModelSpec spec;
  spec.lambda = lambda;
  spec.jump_law = normal_jump_law();
  spec.n = n;
  return simulate_observations(spec, seed);
}

}  // namespace

TEST_CASE("grid_to_cutoff lands on or just below the cutoff") {
  const double eta = 0x1p-9;
  struct Case {
    double h;
    std::int64_t count;
  };
  // Frozen counts for the bandwidths used throughout: m = floor((1/h)/eta) + 1.
  const Case cases[] = {{0.5, 1025}, {0.4, 1281}, {0.6, 854}, {0.7, 732},
                        {0.8, 641},  {0.2, 2561}, {0.1, 5121}};
  for (const auto& c : cases) {
    const FrequencyGrid g = grid_to_cutoff(eta, 1.0 / c.h);
    CHECK(g.count == c.count);
    CHECK(g.t_max() <= 1.0 / c.h + 1e-9);
    CHECK(g.t(g.count) > 1.0 / c.h);  // one more step would overshoot
  }
  // Exact division: cutoff itself is a grid point.
  const FrequencyGrid exact = grid_to_cutoff(0.25, 2.0);
  CHECK(exact.count == 9);
  CHECK(exact.t_max() == 2.0);
}

TEST_CASE("grid validation rejects nonsense") {
  CHECK_THROWS_AS(grid_to_cutoff(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(grid_to_cutoff(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(grid_to_cutoff(0.1, 0.0), std::invalid_argument);
  FrequencyGrid g{0.5, 0};
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("ecf of trivial samples") {
  FrequencyGrid grid{0.25, 9};
  ObservationSet obs;
  obs.values = {0.0, 0.0, 0.0};
  const ComplexSeries e = ecf(obs, grid);
  CHECK(e.kind == SeriesKind::ecf);
  for (const auto& v : e.values) {
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(v.imag()) < 1e-15);
  }

  // Single point mass at x0: ecf(t) = e^{i t x0}.
  obs.values = {0.7};
  const ComplexSeries e1 = ecf(obs, grid);
  for (std::int64_t j = 0; j < grid.count; ++j) {
    const double t = grid.t(j);
    CHECK(e1.values[static_cast<std::size_t>(j)].real() ==
          doctest::Approx(std::cos(0.7 * t)).epsilon(1e-12));
    CHECK(e1.values[static_cast<std::size_t>(j)].imag() ==
          doctest::Approx(std::sin(0.7 * t)).epsilon(1e-12));
  }
}

TEST_CASE("ecf at t=0 is exactly one") {
  const ObservationSet obs = sample(1000, 3);
  const ComplexSeries e = ecf(obs, grid_to_cutoff(0x1p-9, 2.0));
  CHECK(e.values[0].real() == 1.0);
  CHECK(e.values[0].imag() == 0.0);
}

TEST_CASE("ecf modulus never exceeds one") {
  const ObservationSet obs = sample(2000, 8);
  const ComplexSeries e = ecf(obs, grid_to_cutoff(0x1p-9, 5.0));
  for (const auto& v : e.values) CHECK(std::abs(v) <= 1.0 + 1e-12);
}

TEST_CASE("negating the sample conjugates the ecf bitwise") {
  // The rotation recurrence is sign-symmetric: e^{-itx} is the exact
  // conjugate of e^{+itx} term by term, so this holds to the last bit.
  ObservationSet obs = sample(500, 21);
  ObservationSet neg = obs;
  for (double& x : neg.values) x = -x;
  const FrequencyGrid grid = grid_to_cutoff(0x1p-9, 2.0);
  const ComplexSeries a = ecf(obs, grid);
  const ComplexSeries b = ecf(neg, grid);
  for (std::size_t j = 0; j < a.values.size(); ++j) {
    CHECK(a.values[j].real() == b.values[j].real());
    CHECK(a.values[j].imag() == -b.values[j].imag());
  }
}

TEST_CASE("at_signed mirrors by conjugation") {
  const ObservationSet obs = sample(100, 5);
  const ComplexSeries e = ecf(obs, grid_to_cutoff(0.25, 2.0));
  for (std::int64_t j = 0; j < e.grid.count; ++j) {
    const auto plus = e.at_signed(j);
    const auto minus = e.at_signed(-j);
    CHECK(plus.real() == minus.real());
    CHECK(plus.imag() == -minus.imag());
  }
}

TEST_CASE("true increment cf matches the reference value") {
  // lambda=1, standard normal jumps, t=1:
  // e^{-1 + e^{-1/2}} * e^{-1/2} = 0.409233516741968000...
  FrequencyGrid grid{1.0, 2};
  const ComplexSeries cf = true_cf_x(1.0, normal_jump_law(), grid);
  CHECK(cf.kind == SeriesKind::true_cf);
  CHECK(cf.values[1].real() == doctest::Approx(0.40923351674196800).epsilon(1e-15));
  CHECK(cf.values[1].imag() == 0.0);
  CHECK(cf.values[0].real() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("true cf requires cf(0) = 1") {
  JumpLaw broken = normal_jump_law();
  broken.cf = [](double t) { return std::complex<double>{0.5 * std::exp(-t * t / 2.0), 0.0}; };
  FrequencyGrid grid{0.5, 3};
  CHECK_THROWS_AS(true_cf_x(1.0, broken, grid), std::invalid_argument);
}

TEST_CASE("deconvolution restores e^{lambda cf_jump}") {
  // psi(t) = e^{lambda e^{-t^2/2}} for normal jumps; spot values frozen from
  // an independent evaluation at lambda = 1.
  const FrequencyGrid grid{0.5, 5};  // t = 0, 0.5, 1, 1.5, 2
  const ComplexSeries cf = true_cf_x(1.0, normal_jump_law(), grid);
  const ComplexSeries psi = deconvolve_gaussian(cf, 1.0);
  CHECK(psi.kind == SeriesKind::psi);
  CHECK(psi.values[0].real() == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(psi.values[1].real() == doctest::Approx(2.4169270097886001).epsilon(1e-12));
  CHECK(psi.values[2].real() == doctest::Approx(1.8340573791984875).epsilon(1e-12));
  CHECK(psi.values[4].real() == doctest::Approx(1.1449205926874492).epsilon(1e-12));
  for (const auto& v : psi.values) CHECK(v.imag() == 0.0);
}

TEST_CASE("deconvolution rejects grids where the gain overflows") {
  // e^{lambda + t^2/2} overflows double range near t ~ 38.
  const FrequencyGrid grid{1.0, 40};
  ComplexSeries cf;
  cf.grid = grid;
  cf.kind = SeriesKind::true_cf;
  cf.values.assign(40, {0.0, 0.0});
  CHECK_THROWS_AS(deconvolve_gaussian(cf, 1.0), GridBeyondCutoff);
}

TEST_CASE("deconvolution refuses an already-deconvolved series") {
  const FrequencyGrid grid{0.5, 3};
  const ComplexSeries cf = true_cf_x(1.0, normal_jump_law(), grid);
  const ComplexSeries psi = deconvolve_gaussian(cf, 1.0);
  CHECK_THROWS_AS(deconvolve_gaussian(psi, 1.0), std::invalid_argument);
}

TEST_CASE("ecf concentrates around the true cf") {
  // sup_t |ecf - cf| over a fixed grid stays well under 5 sqrt(log n / n)
  // for n = 100000 (a fixed-seed instance of the uniform deviation bound).
  const std::int64_t n = 100000;
  const ObservationSet obs = sample(n, 31);
  const FrequencyGrid grid = grid_to_cutoff(0x1p-6, 2.0);
  const ComplexSeries emp = ecf(obs, grid);
  const ComplexSeries truth = true_cf_x(1.0, normal_jump_law(), grid);
  double worst = 0.0;
  for (std::size_t j = 0; j < emp.values.size(); ++j)
    worst = std::max(worst, std::abs(emp.values[j] - truth.values[j]));
  const double bound = 5.0 * std::sqrt(std::log(static_cast<double>(n)) / static_cast<double>(n));
  CHECK(worst < bound);
}

TEST_CASE("series length must match its grid") {
  ComplexSeries s;
  s.grid = FrequencyGrid{0.5, 4};
  s.kind = SeriesKind::true_cf;
  s.values.assign(3, {1.0, 0.0});
  CHECK_THROWS_AS(deconvolve_gaussian(s, 1.0), std::invalid_argument);
}
