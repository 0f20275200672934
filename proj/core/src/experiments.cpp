#include "decompound/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <thread>

#include "decompound/csv_io.hpp"

namespace decompound {
namespace {

// Index-parallel loop with slot-based results: output never depends on jobs.
// The first exception (if any) is rethrown on the calling thread.
void parallel_for(std::int64_t count, int jobs, const std::function<void(std::int64_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  const int workers = static_cast<int>(std::min<std::int64_t>(jobs, count));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

double quantile_sorted(const std::vector<double>& v, double p) {
  const double idx = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(idx);
  if (lo + 1 >= v.size()) return v.back();
  const double frac = idx - static_cast<double>(lo);
  return v[lo] + frac * (v[lo + 1] - v[lo]);
}

}  // namespace

double normality_scale(std::int64_t n, double h) {
  return std::sqrt(static_cast<double>(n)) / h * std::exp(-1.0 / (2.0 * h * h));
}

double normality_target_variance(double lambda) {
  const double pi = std::numbers::pi;
  return std::exp(2.0 * lambda) / (2.0 * pi * pi * lambda * lambda);
}

double sample_variance(const std::vector<double>& v) {
  if (v.size() < 2) throw std::invalid_argument("sample_variance: need at least 2 values");
  double mean = 0.0;
  for (const double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (const double x : v) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(v.size() - 1);
}

double moment_skewness(const std::vector<double>& v) {
  if (v.size() < 2) throw std::invalid_argument("moment_skewness: need at least 2 values");
  double mean = 0.0;
  for (const double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double m2 = 0.0, m3 = 0.0;
  for (const double x : v) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= static_cast<double>(v.size());
  m3 /= static_cast<double>(v.size());
  if (m2 == 0.0) return 0.0;
  return m3 / std::pow(m2, 1.5);
}

double excess_kurtosis_of(const std::vector<double>& v) {
  if (v.size() < 2) throw std::invalid_argument("excess_kurtosis_of: need at least 2 values");
  double mean = 0.0;
  for (const double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double m2 = 0.0, m4 = 0.0;
  for (const double x : v) {
    const double d = x - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<double>(v.size());
  m4 /= static_cast<double>(v.size());
  if (m2 == 0.0) return 0.0;
  return m4 / (m2 * m2) - 3.0;
}

double quantile_skewness(std::vector<double> v) {
  if (v.size() < 3) throw std::invalid_argument("quantile_skewness: need at least 3 values");
  std::sort(v.begin(), v.end());
  const double q10 = quantile_sorted(v, 0.10);
  const double q50 = quantile_sorted(v, 0.50);
  const double q90 = quantile_sorted(v, 0.90);
  const double spread = q90 - q10;
  if (spread == 0.0) return 0.0;
  return (q90 + q10 - 2.0 * q50) / spread;
}

NormalityReport summarize_normality(const std::vector<double>& f_raw,
                                    const std::vector<std::uint8_t>& vanished,
                                    double zeta, double lambda) {
  if (f_raw.size() != vanished.size())
    throw std::invalid_argument("summarize_normality: flag vector length mismatch");
  NormalityReport rep;
  rep.zeta = zeta;
  rep.lambda = lambda;
  rep.f_raw = f_raw;
  rep.vanished = vanished;
  rep.target_variance = normality_target_variance(lambda);

  std::vector<double> retained;
  retained.reserve(f_raw.size());
  for (std::size_t i = 0; i < f_raw.size(); ++i) {
    if (vanished[i]) {
      ++rep.vanished_count;
    } else {
      retained.push_back(f_raw[i]);
    }
  }
  if (retained.size() < 2) return rep;  // moments undefined; counts still reported

  double mean = 0.0;
  for (const double v : retained) mean += v;
  mean /= static_cast<double>(retained.size());
  rep.stats.reserve(retained.size());
  for (const double v : retained) rep.stats.push_back(zeta * (v - mean));
  rep.sample_variance = sample_variance(rep.stats);
  rep.skewness = moment_skewness(rep.stats);
  rep.excess_kurtosis = excess_kurtosis_of(rep.stats);
  return rep;
}

NormalityReport mc_normality(const ModelSpec& spec, const EstimatorConfig& config, double x,
                             std::int64_t reps, std::uint64_t seed, int jobs) {
  spec.validate();
  if (reps < 50) throw std::invalid_argument("mc_normality: reps must be >= 50");
  EstimatorConfig c = config;
  c.x_grid = {x};
  c.validate();

  std::vector<double> f(static_cast<std::size_t>(reps), 0.0);
  std::vector<std::uint8_t> van(static_cast<std::size_t>(reps), 0);
  parallel_for(reps, jobs, [&](std::int64_t i) {
    const ObservationSet obs = simulate_observations(spec, derive_seed(seed, static_cast<std::uint64_t>(i)));
    const DensityEstimate est = estimate_density(obs, spec.lambda, c);
    f[static_cast<std::size_t>(i)] = est.f_raw[0];
    van[static_cast<std::size_t>(i)] = est.distlog_status == LogStatus::vanished ? 1 : 0;
  });

  std::int64_t vanished_count = 0;
  for (const auto flag : van) vanished_count += flag;
  if (vanished_count * 10 > reps)
    throw TooManyVanished("mc_normality: " + std::to_string(vanished_count) + " of " +
                          std::to_string(reps) + " replicates had a vanishing psi");

  NormalityReport rep = summarize_normality(f, van, normality_scale(spec.n, c.h), spec.lambda);
  rep.reps = reps;
  rep.n = spec.n;
  rep.x = x;
  rep.h = c.h;
  return rep;
}

std::vector<double> VanishingTable::fraction() const {
  std::vector<double> out(vanished.size());
  for (std::size_t i = 0; i < vanished.size(); ++i)
    out[i] = static_cast<double>(vanished[i]) / static_cast<double>(reps);
  return out;
}

VanishingTable vanishing_frequency(double lambda, const JumpLaw& law,
                                   const std::vector<std::int64_t>& n_values,
                                   const EstimatorConfig& config, std::int64_t reps,
                                   std::uint64_t seed, int jobs) {
  if (!(lambda > 0.0)) throw std::invalid_argument("vanishing_frequency: lambda must be positive");
  if (reps < 100) throw std::invalid_argument("vanishing_frequency: reps must be >= 100");
  if (n_values.empty()) throw std::invalid_argument("vanishing_frequency: empty n set");
  const FrequencyGrid grid = grid_to_cutoff(config.eta, 1.0 / config.h);

  VanishingTable table;
  table.n_values = n_values;
  table.reps = reps;
  table.h = config.h;
  table.vanished.resize(n_values.size(), 0);
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    ModelSpec spec;
    spec.lambda = lambda;
    spec.jump_law = law;
    spec.n = n_values[i];
    spec.validate();
    const std::uint64_t group_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    std::vector<std::uint8_t> flags(static_cast<std::size_t>(reps), 0);
    parallel_for(reps, jobs, [&](std::int64_t k) {
      const ObservationSet obs =
          simulate_observations(spec, derive_seed(group_seed, static_cast<std::uint64_t>(k)));
      const ComplexSeries psi = deconvolve_gaussian(ecf(obs, grid), lambda);
      flags[static_cast<std::size_t>(k)] =
          check_nonvanishing(psi, config.modulus_floor).ok ? 0 : 1;
    });
    std::int64_t count = 0;
    for (const auto fl : flags) count += fl;
    table.vanished[i] = count;
  }
  return table;
}

BiasReport bias_study(const JumpLaw& law, double lambda, double x,
                      const std::vector<double>& h_values, const EstimatorConfig& base) {
  if (!law.density) throw std::invalid_argument("bias_study: jump law has no density");
  if (!law.cf_decay) throw std::invalid_argument("bias_study: jump law has no decay tag");
  if (h_values.empty()) throw std::invalid_argument("bias_study: empty h set");
  for (std::size_t i = 1; i < h_values.size(); ++i)
    if (!(h_values[i] > h_values[i - 1]))
      throw std::invalid_argument("bias_study: h_values must be strictly increasing");

  const CfDecay decay = *law.cf_decay;
  BiasReport rep;
  rep.law_name = law.name;
  rep.decay = decay;
  rep.x = x;
  rep.h_values = h_values;
  EstimatorConfig cfg = base;
  cfg.x_grid = {x};
  const double f_true = law.density(x);
  for (const double h : h_values) {
    cfg.h = h;
    const DensityEstimate est = oracle_mean_estimate(lambda, law, cfg);
    const double bias = est.f_raw[0] - f_true;
    double rate = 0.0;
    if (decay.kind == CfDecay::Kind::supersmooth) {
      // h^(a-1) e^{-c/h^a} with the law's own decay scale c.
      rate = std::pow(h, decay.exponent - 1.0) * std::exp(-decay.scale * std::pow(h, -decay.exponent));
    } else {
      rate = std::pow(h, decay.exponent - 1.0);
    }
    rep.bias.push_back(bias);
    rep.rate.push_back(rate);
    rep.rate_ratio.push_back(std::abs(bias) / rate);
  }
  return rep;
}

FigureRun reproduce_figure(std::uint64_t seed, const std::string& out_csv) {
  ModelSpec spec;
  spec.lambda = 1.0;
  spec.jump_law = normal_jump_law();
  spec.n = 5000;

  EstimatorConfig cfg;
  cfg.h = 0.5;
  cfg.x_grid.resize(401);
  for (std::size_t k = 0; k < cfg.x_grid.size(); ++k)
    cfg.x_grid[k] = 0.02 * static_cast<double>(k) - 4.0;

  FigureRun run;
  const ObservationSet obs = simulate_observations(spec, seed);
  run.estimate = estimate_density(obs, spec.lambda, cfg);
  run.f_true.resize(cfg.x_grid.size());
  double mae = 0.0;
  for (std::size_t k = 0; k < cfg.x_grid.size(); ++k) {
    run.f_true[k] = spec.jump_law.density(cfg.x_grid[k]);
    mae += std::abs(run.estimate.f_hat[k] - run.f_true[k]);
  }
  run.mean_abs_error = mae / static_cast<double>(cfg.x_grid.size());

  if (!out_csv.empty()) {
    KvList header{
        {"subcommand", "reproduce-figure"},
        {"lambda", format_g17(spec.lambda)},
        {"jump", spec.jump_law.name},
        {"n", std::to_string(spec.n)},
        {"h", format_g17(cfg.h)},
        {"eta", format_g17(cfg.eta)},
        {"seed", std::to_string(seed)},
        {"distlog_status", to_string(run.estimate.distlog_status)},
        {"mean_abs_error", format_g17(run.mean_abs_error)},
    };
    write_figure_csv(out_csv, run, header);
  }
  return run;
}

}  // namespace decompound
