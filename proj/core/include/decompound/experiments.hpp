#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "decompound/estimator.hpp"
#include "decompound/processes.hpp"

namespace decompound {

// sqrt(n) * h^{-1} * e^{-1/(2h^2)}: the scale under which the centered
// estimator has a Gaussian limit.
double normality_scale(std::int64_t n, double h);

// e^{2*lambda} / (2*pi^2*lambda^2): the limit variance at any x.
double normality_target_variance(double lambda);

double sample_variance(const std::vector<double>& v);   // ddof = 1
double moment_skewness(const std::vector<double>& v);   // m3 / m2^(3/2)
double excess_kurtosis_of(const std::vector<double>& v);
// Order-statistics route, independent of the moment formulas:
// (q90 + q10 - 2*median) / (q90 - q10).
double quantile_skewness(std::vector<double> v);

struct NormalityReport {
  std::int64_t reps = 0;
  std::int64_t n = 0;
  double x = 0.0;
  double h = 0.0;
  double lambda = 0.0;
  double zeta = 0.0;
  std::vector<double> f_raw;            // raw estimate at x, one per replicate
  std::vector<std::uint8_t> vanished;   // per-replicate failure flag
  std::vector<double> stats;            // zeta*(f_raw - mean), retained replicates only
  double sample_variance = 0.0;
  double target_variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  std::int64_t vanished_count = 0;
};

struct TooManyVanished : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// reps independent replicates of the estimate at one point x, centered at the
// replicate mean (the empirical surrogate for the estimator's expectation;
// centering at the true density instead would let squared bias swamp the
// variance) and scaled by normality_scale. Vanished replicates are excluded
// and counted; more than reps/10 of them throws TooManyVanished.
// Deterministic in `seed` for any `jobs`.
NormalityReport mc_normality(const ModelSpec& spec, const EstimatorConfig& config,
                             double x, std::int64_t reps, std::uint64_t seed, int jobs = 1);

// Aggregation step of mc_normality, exposed for direct testing.
NormalityReport summarize_normality(const std::vector<double>& f_raw,
                                    const std::vector<std::uint8_t>& vanished,
                                    double zeta, double lambda);

struct VanishingTable {
  std::vector<std::int64_t> n_values;
  std::vector<std::int64_t> vanished;  // replicate counts whose psi dipped below the floor
  std::int64_t reps = 0;
  double h = 0.0;
  std::vector<double> fraction() const;
};

// Frequency of the undefined-log event on [-1/h, 1/h] per sample size.
// Requires reps >= 100. Deterministic in `seed` for any `jobs`.
VanishingTable vanishing_frequency(double lambda, const JumpLaw& law,
                                   const std::vector<std::int64_t>& n_values,
                                   const EstimatorConfig& config, std::int64_t reps,
                                   std::uint64_t seed, int jobs = 1);

struct BiasReport {
  std::string law_name;
  std::optional<CfDecay> decay;
  double x = 0.0;
  std::vector<double> h_values;    // strictly increasing
  std::vector<double> bias;        // oracle f_raw(x) - f(x)
  std::vector<double> rate;        // decay-matched normalizer at each h
  std::vector<double> rate_ratio;  // |bias| / rate
};

// Oracle bias against the claimed rate shape. Supersmooth laws normalize by
// h^(exponent-1) * e^(-scale/h^exponent) with the law's own decay scale
// (the standard normal's is 1/2); ordinary-smooth by h^(exponent-1).
// Requires law.density and law.cf_decay.
BiasReport bias_study(const JumpLaw& law, double lambda, double x,
                      const std::vector<double>& h_values, const EstimatorConfig& base);

struct FigureRun {
  DensityEstimate estimate;
  std::vector<double> f_true;
  double mean_abs_error = 0.0;  // over the whole grid
};

// The reference demonstration: lambda=1, standard normal jumps, n=5000,
// h=0.5, estimate vs true density on x in [-4,4] step 0.02 (401 points).
// Writes `x,f_hat,f_true` CSV when out_csv is nonempty.
FigureRun reproduce_figure(std::uint64_t seed, const std::string& out_csv = {});

}  // namespace decompound
