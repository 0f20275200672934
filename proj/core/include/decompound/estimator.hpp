#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "decompound/charfun.hpp"
#include "decompound/distlog.hpp"
#include "decompound/processes.hpp"

namespace decompound {

struct EstimatorConfig {
  // Bandwidth: the inversion integrates frequencies |t| <= 1/h. The sinc
  // kernel appears only as this hard cutoff (its transform is the indicator
  // of [-1,1]); no time-domain kernel is ever evaluated.
  double h = 0.5;

  // Bandwidth rule h = c_h * (log n)^(-beta); beta must stay below 1/2.
  // Informational unless h is derived through default_bandwidth.
  double beta = 0.45;
  std::optional<double> c_h;

  // Truncation level M_n = C_M * log n for sampled estimates. The override is
  // authoritative when set, and is the only way to truncate an oracle run
  // (which has no n; untruncated by default).
  double C_M = 10.0;
  std::optional<double> M_n_override;

  double eta = 0x1p-9;          // frequency step
  std::int64_t fft_size = 4096; // power of 2; the FFT path needs grid count <= fft_size
  std::vector<double> x_grid;   // evaluation points, strictly increasing

  double jump_threshold = kDefaultJumpThreshold;
  double modulus_floor = kDefaultModulusFloor;

  void validate() const;  // throws std::invalid_argument
};

struct DensityEstimate {
  std::vector<double> x;
  std::vector<double> f_hat;  // f_raw clamped to [-m_n, m_n]
  std::vector<double> f_raw;
  std::vector<std::uint8_t> truncation_hit;
  EstimatorConfig config;
  double lambda = 0.0;
  std::int64_t n = 0;   // sample size; 0 for oracle runs
  double m_n = 0.0;     // resolved truncation level (+inf when untruncated)
  LogStatus distlog_status = LogStatus::ok;
  std::int64_t distlog_index = -1;
  double min_modulus = 0.0;
  std::int64_t branch_corrections = 0;
  bool used_fft = false;  // which inversion path ran
};

// h = c_h * (log n)^(-beta). Requires n >= 3, c_h > 0 and beta in (0, 1/2);
// beta >= 1/2 breaks the variance/bias balance the rule exists for.
double default_bandwidth(std::int64_t n, double beta, double c_h);

// The x spacing under which trapezoid inversion collapses to one forward DFT:
// x_k = x_min + 2*pi*k/(fft_size*eta), k = 0..n_points-1 (n_points <= fft_size).
std::vector<double> fft_x_grid(double x_min, std::int64_t n_points, double eta,
                               std::int64_t fft_size);

// Trapezoid Fourier inversion of an unwrapped log series on config.x_grid:
//   f(x) = eta/(pi*lambda) * Re sum_j w_j L_j e^{-i t_j x},
// half weights at both ends; Hermitian doubling folds the negative half-line
// into the real part with the t=0 term counted once. Dispatches to the FFT
// when x_grid matches fft_x_grid spacing, else per-point rotation sums.
std::vector<double> invert_log_series(const UnwrappedLog& log_series, double lambda,
                                      const EstimatorConfig& config, bool* used_fft = nullptr);

// Full pipeline on data: ECF on [0, 1/h] -> deconvolve -> distinguished log
// -> inversion -> clamp to [-M_n, M_n]. A vanished log yields the defined
// fallback f_raw = 0 with the failure recorded in distlog_status; jump_suspect
// is recorded but the estimate is still produced.
DensityEstimate estimate_density(const ObservationSet& obs, double lambda,
                                 const EstimatorConfig& config);

// Same pipeline with the analytic increment CF in place of the ECF. This is
// the exact expectation surrogate: what remains against the true density is
// pure truncation bias. Throws std::logic_error if truncation ever binds.
DensityEstimate oracle_mean_estimate(double lambda, const JumpLaw& law,
                                     const EstimatorConfig& config);

}  // namespace decompound
