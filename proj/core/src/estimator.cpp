#include "decompound/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "decompound/fft.hpp"

namespace decompound {

void EstimatorConfig::validate() const {
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("config: h must be positive and finite");
  if (!(beta > 0.0) || !(beta < 0.5))
    throw std::invalid_argument("config: beta must lie in (0, 1/2); beta < 1/2 is required");
  if (c_h && !(*c_h > 0.0)) throw std::invalid_argument("config: c_h must be positive");
  if (!(C_M > 0.0)) throw std::invalid_argument("config: C_M must be positive");
  if (M_n_override && !(*M_n_override > 0.0))
    throw std::invalid_argument("config: M_n override must be positive");
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw std::invalid_argument("config: eta must be positive and finite");
  if (!is_pow2(fft_size)) throw std::invalid_argument("config: fft_size must be a power of 2");
  if (x_grid.empty()) throw std::invalid_argument("config: x_grid must be nonempty");
  for (std::size_t k = 0; k < x_grid.size(); ++k) {
    if (!std::isfinite(x_grid[k])) throw std::invalid_argument("config: x_grid must be finite");
    if (k > 0 && !(x_grid[k] > x_grid[k - 1]))
      throw std::invalid_argument("config: x_grid must be strictly increasing");
  }
  if (!(jump_threshold > 0.0) || !(jump_threshold < std::numbers::pi))
    throw std::invalid_argument("config: jump_threshold must lie in (0, pi)");
  if (!(modulus_floor > 0.0))
    throw std::invalid_argument("config: modulus_floor must be positive");
}

double default_bandwidth(std::int64_t n, double beta, double c_h) {
  if (n < 3) throw std::invalid_argument("default_bandwidth: n must be >= 3");
  if (!(beta > 0.0) || !(beta < 0.5))
    throw std::invalid_argument("default_bandwidth: beta must lie in (0, 1/2); beta < 1/2 is required");
  if (!(c_h > 0.0)) throw std::invalid_argument("default_bandwidth: c_h must be positive");
  return c_h * std::pow(std::log(static_cast<double>(n)), -beta);
}

std::vector<double> fft_x_grid(double x_min, std::int64_t n_points, double eta,
                               std::int64_t fft_size) {
  if (n_points < 1) throw std::invalid_argument("fft_x_grid: n_points must be >= 1");
  if (n_points > fft_size)
    throw std::invalid_argument("fft_x_grid: n_points must not exceed fft_size");
  if (!is_pow2(fft_size)) throw std::invalid_argument("fft_x_grid: fft_size must be a power of 2");
  if (!(eta > 0.0)) throw std::invalid_argument("fft_x_grid: eta must be positive");
  const double dx = 2.0 * std::numbers::pi / (static_cast<double>(fft_size) * eta);
  std::vector<double> xs(static_cast<std::size_t>(n_points));
  for (std::size_t k = 0; k < xs.size(); ++k) xs[k] = x_min + dx * static_cast<double>(k);
  return xs;
}

namespace {

// True when config.x_grid sits on the conjugate FFT spacing 2*pi/(N*eta)
// starting anywhere, with everything fitting into one length-N transform.
bool fft_grid_compatible(const std::vector<double>& xs, const EstimatorConfig& config,
                         std::int64_t m_points) {
  const std::int64_t n = config.fft_size;
  if (m_points > n) return false;
  if (static_cast<std::int64_t>(xs.size()) > n) return false;
  if (xs.size() < 2) return false;  // single point: the direct path is exact and cheaper
  const double dx = 2.0 * std::numbers::pi / (static_cast<double>(n) * config.eta);
  for (std::size_t k = 1; k < xs.size(); ++k) {
    const double expect = xs[0] + dx * static_cast<double>(k);
    const double tol = 64.0 * std::numeric_limits<double>::epsilon() *
                       (std::abs(expect) + dx * static_cast<double>(k));
    if (std::abs(xs[k] - expect) > tol) return false;
  }
  return true;
}

DensityEstimate run_pipeline(const ComplexSeries& base_cf, double lambda,
                             const EstimatorConfig& config, std::int64_t n_sample) {
  const ComplexSeries psi = deconvolve_gaussian(base_cf, lambda);
  const UnwrappedLog lg = unwrap_log(psi, config.jump_threshold, config.modulus_floor);

  DensityEstimate est;
  est.x = config.x_grid;
  est.config = config;
  est.lambda = lambda;
  est.n = n_sample;
  est.distlog_status = lg.status;
  est.distlog_index = lg.status_index;
  est.min_modulus = lg.min_modulus;
  est.branch_corrections = lg.corrections;

  if (lg.status == LogStatus::vanished) {
    // The estimator is allowed an arbitrary value on the undefined event;
    // zero is the convention, with the failure recorded in the status.
    est.f_raw.assign(est.x.size(), 0.0);
  } else {
    est.f_raw = invert_log_series(lg, lambda, config, &est.used_fft);
  }

  if (config.M_n_override) {
    est.m_n = *config.M_n_override;
  } else if (n_sample > 0) {
    est.m_n = config.C_M * std::log(static_cast<double>(n_sample));
  } else {
    est.m_n = std::numeric_limits<double>::infinity();
  }

  est.f_hat.resize(est.f_raw.size());
  est.truncation_hit.resize(est.f_raw.size());
  for (std::size_t k = 0; k < est.f_raw.size(); ++k) {
    const double clamped = std::clamp(est.f_raw[k], -est.m_n, est.m_n);
    est.f_hat[k] = clamped;
    est.truncation_hit[k] = clamped != est.f_raw[k] ? 1 : 0;
  }
  return est;
}

}  // namespace

std::vector<double> invert_log_series(const UnwrappedLog& lg, double lambda,
                                      const EstimatorConfig& config, bool* used_fft) {
  if (!(lambda > 0.0)) throw std::invalid_argument("invert_log_series: lambda must be positive");
  const auto m = lg.log_values.size();
  if (m == 0) throw std::invalid_argument("invert_log_series: empty log series");
  const std::vector<double>& xs = config.x_grid;

  // Trapezoid coefficients with half weights at both ends. Hermitian doubling
  // turns the full-line integral into 2*Re of the half-line sum with the t=0
  // term counted once; the half weight at j=0 covers both roles.
  std::vector<std::complex<double>> c(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double w = (j == 0 || j + 1 == m) ? 0.5 : 1.0;
    c[j] = lg.log_values[j] * w;
  }
  const double scale = lg.grid.eta / (std::numbers::pi * lambda);

  std::vector<double> out(xs.size());
  const bool fft_ok = fft_grid_compatible(xs, config, static_cast<std::int64_t>(m));
  if (used_fft) *used_fft = fft_ok;
  if (fft_ok) {
    const auto n = static_cast<std::size_t>(config.fft_size);
    std::vector<std::complex<double>> b(n, {0.0, 0.0});
    const double x0 = xs[0];
    for (std::size_t j = 0; j < m; ++j) {
      const double a = -lg.grid.t(static_cast<std::int64_t>(j)) * x0;
      b[j] = c[j] * std::complex<double>(std::cos(a), std::sin(a));
    }
    // b_j = c_j e^{-i t_j x0}; the forward DFT then lands on
    // x_k = x0 + 2 pi k/(N eta) because t_j * (x_k - x0) = 2 pi jk/N.
    fft_pow2(b);
    for (std::size_t k = 0; k < xs.size(); ++k) out[k] = scale * b[k].real();
  } else {
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const double a = -lg.grid.eta * xs[k];
      const std::complex<double> rot(std::cos(a), std::sin(a));
      std::complex<double> z(1.0, 0.0);
      std::complex<double> acc(0.0, 0.0);
      for (std::size_t j = 0; j < m; ++j) {
        acc += c[j] * z;
        z *= rot;
      }
      out[k] = scale * acc.real();
    }
  }
  return out;
}

DensityEstimate estimate_density(const ObservationSet& obs, double lambda,
                                 const EstimatorConfig& config) {
  config.validate();
  if (!(lambda > 0.0)) throw std::invalid_argument("estimate_density: lambda must be positive");
  if (obs.values.empty()) throw std::invalid_argument("estimate_density: empty sample");
  const FrequencyGrid grid = grid_to_cutoff(config.eta, 1.0 / config.h);
  const ComplexSeries series = ecf(obs, grid);
  return run_pipeline(series, lambda, config, static_cast<std::int64_t>(obs.values.size()));
}

DensityEstimate oracle_mean_estimate(double lambda, const JumpLaw& law,
                                     const EstimatorConfig& config) {
  config.validate();
  if (!(lambda > 0.0)) throw std::invalid_argument("oracle_mean_estimate: lambda must be positive");
  if (!law.cf) throw std::invalid_argument("oracle_mean_estimate: jump law has no cf");
  const FrequencyGrid grid = grid_to_cutoff(config.eta, 1.0 / config.h);
  const ComplexSeries series = true_cf_x(lambda, law, grid);
  DensityEstimate est = run_pipeline(series, lambda, config, 0);
  for (const auto hit : est.truncation_hit)
    if (hit) throw std::logic_error("oracle_mean_estimate: truncation bound the noise-free estimate");
  return est;
}

}  // namespace decompound
