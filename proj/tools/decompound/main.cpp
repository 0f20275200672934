// Command-line front end: simulation, estimation and the numerical studies,
// every run reproducible from its own output header (feed a previous output
// file back via --config). Precedence: flag > --config file > DECOMPOUND_SEED
// (seed only) > built-in default.
//
// Exit codes: 0 success, 2 invalid arguments or config, 3 estimate undefined
// (psi modulus below floor) under --strict.

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "decompound/csv_io.hpp"

namespace {

using namespace decompound;

struct Opts {
  double lambda = 1.0;
  std::int64_t n = 5000;
  std::string jump = "normal";
  std::uint64_t seed = 1;
  double h = 0.5;
  double beta = 0.45;
  double c_h = 0.0;
  double cm = 10.0;
  double m_n = 0.0;
  double eta = 0x1p-9;
  std::int64_t fft_size = 4096;
  double x = 0.0;
  double x_min = -4.0;
  double x_max = 4.0;
  double x_step = 0.02;
  double jump_threshold = kDefaultJumpThreshold;
  double modulus_floor = kDefaultModulusFloor;
  std::int64_t reps = 300;
  std::vector<std::int64_t> n_set{50, 500, 5000};
  std::vector<double> h_values{0.4, 0.5, 0.6, 0.7, 0.8};
  int jobs = 1;
  bool strict = false;
  std::string out;
  std::string config_path;

  std::set<std::string> from_config;  // keys the config file supplied
};

double to_double(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0' || errno == ERANGE)
    throw std::invalid_argument("config value for '" + key + "' is not a number: " + v);
  return d;
}

std::int64_t to_i64(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const long long d = std::strtoll(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0' || errno == ERANGE)
    throw std::invalid_argument("config value for '" + key + "' is not an integer: " + v);
  return d;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long d = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0' || errno == ERANGE)
    throw std::invalid_argument("config value for '" + key + "' is not an unsigned integer: " + v);
  return d;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  throw std::invalid_argument("config value for '" + key + "' is not a boolean: " + v);
}

template <typename T, typename Conv>
std::vector<T> to_list(const std::string& key, const std::string& v, Conv conv) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    const std::size_t comma = v.find(',', pos);
    const std::string item =
        comma == std::string::npos ? v.substr(pos) : v.substr(pos, comma - pos);
    if (!item.empty()) out.push_back(conv(key, item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("config value for '" + key + "' is empty");
  return out;
}

void apply_config(Opts& o, const std::map<std::string, std::string>& kv) {
  auto get = [&](const char* k) -> const std::string* {
    const auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto mark = [&](const char* k) { o.from_config.insert(k); };
  if (const auto* v = get("lambda")) { o.lambda = to_double("lambda", *v); mark("lambda"); }
  if (const auto* v = get("n")) { o.n = to_i64("n", *v); mark("n"); }
  if (const auto* v = get("jump")) { o.jump = *v; mark("jump"); }
  if (const auto* v = get("seed")) { o.seed = to_u64("seed", *v); mark("seed"); }
  if (const auto* v = get("h")) { o.h = to_double("h", *v); mark("h"); }
  if (const auto* v = get("beta")) { o.beta = to_double("beta", *v); mark("beta"); }
  if (const auto* v = get("c-h")) { o.c_h = to_double("c-h", *v); mark("c-h"); }
  if (const auto* v = get("cm")) { o.cm = to_double("cm", *v); mark("cm"); }
  if (const auto* v = get("m-n")) { o.m_n = to_double("m-n", *v); mark("m-n"); }
  if (const auto* v = get("eta")) { o.eta = to_double("eta", *v); mark("eta"); }
  if (const auto* v = get("fft-size")) { o.fft_size = to_i64("fft-size", *v); mark("fft-size"); }
  if (const auto* v = get("x")) { o.x = to_double("x", *v); mark("x"); }
  if (const auto* v = get("x-min")) { o.x_min = to_double("x-min", *v); mark("x-min"); }
  if (const auto* v = get("x-max")) { o.x_max = to_double("x-max", *v); mark("x-max"); }
  if (const auto* v = get("x-step")) { o.x_step = to_double("x-step", *v); mark("x-step"); }
  if (const auto* v = get("jump-threshold")) {
    o.jump_threshold = to_double("jump-threshold", *v);
    mark("jump-threshold");
  }
  if (const auto* v = get("modulus-floor")) {
    o.modulus_floor = to_double("modulus-floor", *v);
    mark("modulus-floor");
  }
  if (const auto* v = get("reps")) { o.reps = to_i64("reps", *v); mark("reps"); }
  if (const auto* v = get("n-set")) { o.n_set = to_list<std::int64_t>("n-set", *v, to_i64); mark("n-set"); }
  if (const auto* v = get("h-values")) {
    o.h_values = to_list<double>("h-values", *v, to_double);
    mark("h-values");
  }
  if (const auto* v = get("jobs")) { o.jobs = static_cast<int>(to_i64("jobs", *v)); mark("jobs"); }
  if (const auto* v = get("strict")) { o.strict = to_bool("strict", *v); mark("strict"); }
  if (const auto* v = get("out")) { o.out = *v; mark("out"); }
}

JumpLaw jump_law_by_name(const std::string& name) {
  if (name == "normal") return normal_jump_law();
  if (name == "laplace") return laplace_jump_law();
  throw std::invalid_argument("unknown jump law: " + name + " (expected normal or laplace)");
}

std::vector<double> make_x_grid(double x_min, double x_max, double x_step) {
  if (!(x_step > 0.0)) throw std::invalid_argument("x-step must be positive");
  if (!(x_max > x_min)) throw std::invalid_argument("x-max must exceed x-min");
  const auto count =
      static_cast<std::int64_t>(std::floor((x_max - x_min) / x_step + 1e-9)) + 1;
  std::vector<double> xs(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k)
    xs[static_cast<std::size_t>(k)] = x_min + x_step * static_cast<double>(k);
  return xs;
}

void require_out(const Opts& o) {
  if (o.out.empty()) throw std::invalid_argument("missing --out (or out= in the config file)");
}

void require_jobs(const Opts& o) {
  if (o.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
}

KvList common_header(const char* subcommand, const Opts& o) {
  return KvList{
      {"subcommand", subcommand},
      {"jump", o.jump},
      {"seed", std::to_string(o.seed)},
  };
}

int run_simulate(const Opts& o) {
  require_out(o);
  ModelSpec spec;
  spec.lambda = o.lambda;
  spec.jump_law = jump_law_by_name(o.jump);
  spec.n = o.n;
  spec.validate();
  const ObservationSet obs = simulate_observations(spec, o.seed);
  KvList header = common_header("simulate", o);
  header.emplace_back("lambda", format_g17(o.lambda));
  header.emplace_back("n", std::to_string(o.n));
  write_observations_csv(o.out, obs, header);
  std::cout << "wrote " << o.out << " (" << o.n << " increments)\n";
  return 0;
}

int run_estimate(const Opts& o, bool h_given, bool ch_given, bool mn_given) {
  require_out(o);
  ModelSpec spec;
  spec.lambda = o.lambda;
  spec.jump_law = jump_law_by_name(o.jump);
  spec.n = o.n;
  spec.validate();

  EstimatorConfig cfg;
  cfg.beta = o.beta;
  cfg.C_M = o.cm;
  cfg.eta = o.eta;
  cfg.fft_size = o.fft_size;
  cfg.jump_threshold = o.jump_threshold;
  cfg.modulus_floor = o.modulus_floor;
  if (ch_given) cfg.c_h = o.c_h;
  if (mn_given) cfg.M_n_override = o.m_n;
  cfg.h = !h_given && ch_given ? default_bandwidth(o.n, o.beta, o.c_h) : o.h;
  cfg.x_grid = make_x_grid(o.x_min, o.x_max, o.x_step);

  const ObservationSet obs = simulate_observations(spec, o.seed);
  const DensityEstimate est = estimate_density(obs, spec.lambda, cfg);

  KvList extra = common_header("estimate", o);
  extra.emplace_back("x-min", format_g17(o.x_min));
  extra.emplace_back("x-max", format_g17(o.x_max));
  extra.emplace_back("x-step", format_g17(o.x_step));
  write_estimate_csv(o.out, est, extra);

  std::cout << "wrote " << o.out << " and " << o.out << ".meta.json"
            << " (h=" << format_g17(cfg.h) << ", status=" << to_string(est.distlog_status)
            << ", " << (est.used_fft ? "fft" : "direct") << " inversion)\n";
  if (est.distlog_status == LogStatus::vanished) {
    std::cerr << "warning: psi modulus fell below " << format_g17(cfg.modulus_floor)
              << " at grid index " << est.distlog_index
              << "; the continuous logarithm is undefined there and the estimate was zero-filled\n";
    if (o.strict) return 3;
  } else if (est.distlog_status == LogStatus::jump_suspect) {
    std::cerr << "warning: argument increment near pi at grid index " << est.distlog_index
              << "; eta may be too coarse for reliable branch tracking\n";
  }
  return 0;
}

int run_mc_normality(const Opts& o) {
  require_out(o);
  require_jobs(o);
  ModelSpec spec;
  spec.lambda = o.lambda;
  spec.jump_law = jump_law_by_name(o.jump);
  spec.n = o.n;

  EstimatorConfig cfg;
  cfg.h = o.h;
  cfg.beta = o.beta;
  cfg.C_M = o.cm;
  cfg.eta = o.eta;
  cfg.fft_size = o.fft_size;
  cfg.jump_threshold = o.jump_threshold;
  cfg.modulus_floor = o.modulus_floor;

  const NormalityReport rep = mc_normality(spec, cfg, o.x, o.reps, o.seed, o.jobs);

  KvList extra = common_header("mc-normality", o);
  extra.emplace_back("eta", format_g17(o.eta));
  extra.emplace_back("fft-size", std::to_string(o.fft_size));
  extra.emplace_back("jobs", std::to_string(o.jobs));
  write_normality_csv(o.out, rep, o.seed, extra);

  std::cout << "reps=" << rep.reps << " vanished=" << rep.vanished_count
            << "\nzeta=" << format_g17(rep.zeta)
            << "\nsample_variance=" << format_g17(rep.sample_variance)
            << "\ntarget_variance=" << format_g17(rep.target_variance)
            << "\nvariance_ratio=" << format_g17(rep.sample_variance / rep.target_variance)
            << "\nskewness=" << format_g17(rep.skewness)
            << "\nexcess_kurtosis=" << format_g17(rep.excess_kurtosis) << "\n";
  return 0;
}

int run_vanishing(const Opts& o) {
  require_out(o);
  require_jobs(o);
  EstimatorConfig cfg;
  cfg.h = o.h;
  cfg.eta = o.eta;
  cfg.modulus_floor = o.modulus_floor;
  const JumpLaw law = jump_law_by_name(o.jump);
  const VanishingTable table =
      vanishing_frequency(o.lambda, law, o.n_set, cfg, o.reps, o.seed, o.jobs);

  KvList extra = common_header("vanishing", o);
  extra.emplace_back("lambda", format_g17(o.lambda));
  extra.emplace_back("eta", format_g17(o.eta));
  extra.emplace_back("modulus-floor", format_g17(o.modulus_floor));
  extra.emplace_back("jobs", std::to_string(o.jobs));
  write_vanishing_csv(o.out, table, extra);

  const std::vector<double> frac = table.fraction();
  for (std::size_t i = 0; i < table.n_values.size(); ++i)
    std::cout << "n=" << table.n_values[i] << " vanished=" << table.vanished[i] << "/"
              << table.reps << " fraction=" << format_g17(frac[i]) << "\n";
  return 0;
}

int run_bias_study(const Opts& o) {
  require_out(o);
  EstimatorConfig cfg;
  cfg.eta = o.eta;
  const JumpLaw law = jump_law_by_name(o.jump);
  const BiasReport rep = bias_study(law, o.lambda, o.x, o.h_values, cfg);

  KvList extra{{"subcommand", "bias-study"}, {"lambda", format_g17(o.lambda)},
               {"eta", format_g17(o.eta)}};
  write_bias_csv(o.out, rep, extra);

  double lo = rep.rate_ratio.front(), hi = rep.rate_ratio.front();
  for (std::size_t i = 0; i < rep.h_values.size(); ++i) {
    lo = std::min(lo, rep.rate_ratio[i]);
    hi = std::max(hi, rep.rate_ratio[i]);
    std::cout << "h=" << format_g17(rep.h_values[i]) << " bias=" << format_g17(rep.bias[i])
              << " rate_ratio=" << format_g17(rep.rate_ratio[i]) << "\n";
  }
  std::cout << "rate_ratio_spread=" << format_g17(hi / lo) << "\n";
  return 0;
}

int run_reproduce_figure(const Opts& o) {
  require_out(o);
  const FigureRun run = reproduce_figure(o.seed, o.out);
  std::cout << "wrote " << o.out << "\nmean_abs_error=" << format_g17(run.mean_abs_error)
            << "\nstatus=" << to_string(run.estimate.distlog_status) << "\n";
  return 0;
}

std::string config_path_from_argv(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return {};
}

void add_model_options(CLI::App* cmd, Opts& o) {
  cmd->add_option("--lambda", o.lambda, "Poisson intensity");
  cmd->add_option("--jump", o.jump, "jump law: normal or laplace")
      ->check(CLI::IsMember({"normal", "laplace"}));
  cmd->add_option("--seed", o.seed, "master seed (env DECOMPOUND_SEED supplies the default)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonparametric jump-density estimation for compound Poisson processes in Gaussian noise"};
  app.require_subcommand(1);

  Opts sim, est, mc, van, bias, fig;
  sim.n = 100;
  mc.reps = 300;
  van.reps = 200;
  van.h = 0.3;

  // Defaults resolved now, before parsing: env seed then config file. Flags
  // parsed afterwards overwrite both.
  std::uint64_t env_seed = 0;
  bool have_env_seed = false;
  if (const char* env = std::getenv("DECOMPOUND_SEED")) {
    try {
      env_seed = to_u64("DECOMPOUND_SEED", env);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    have_env_seed = true;
  }

  std::map<std::string, std::string> config_kv;
  const std::string config_path = config_path_from_argv(argc, argv);

  CLI::App* c_sim = app.add_subcommand("simulate", "draw unit-spacing increments and write them as CSV");
  CLI::App* c_est = app.add_subcommand("estimate", "simulate a sample and estimate the jump density on an x grid");
  CLI::App* c_mc = app.add_subcommand("mc-normality", "replicate the estimator at one point and summarize the scaled statistics");
  CLI::App* c_van = app.add_subcommand("vanishing", "frequency of the undefined-logarithm event per sample size");
  CLI::App* c_bias = app.add_subcommand("bias-study", "noise-free truncation bias against the decay-matched rate");
  CLI::App* c_fig = app.add_subcommand("reproduce-figure", "reference run: lambda=1, normal jumps, n=5000, h=0.5, x in [-4,4]");

  // --h is the bandwidth, so the short help alias has to go.
  app.set_help_flag("--help", "print this help and exit");
  for (CLI::App* c : {c_sim, c_est, c_mc, c_van, c_bias, c_fig}) {
    c->set_help_flag("--help", "print this help and exit");
    c->add_option("--config", [](const std::vector<std::string>&) { return true; },
                  "key=value file; a previous output CSV works as-is")
        ->expected(1);
  }

  add_model_options(c_sim, sim);
  c_sim->add_option("--n", sim.n, "number of increments");
  c_sim->add_option("--out", sim.out, "output CSV path");

  add_model_options(c_est, est);
  c_est->add_option("--n", est.n, "number of increments");
  c_est->add_option("--h", est.h, "bandwidth (integration cutoff 1/h)");
  c_est->add_option("--beta", est.beta, "bandwidth exponent, must stay below 1/2");
  c_est->add_option("--c-h", est.c_h, "bandwidth constant; with no --h, h = c_h*(log n)^-beta");
  c_est->add_option("--cm", est.cm, "truncation constant in M_n = C_M*log n");
  c_est->add_option("--m-n", est.m_n, "explicit truncation level, overrides --cm");
  c_est->add_option("--eta", est.eta, "frequency grid step");
  c_est->add_option("--fft-size", est.fft_size, "FFT length (power of 2)");
  c_est->add_option("--x-min", est.x_min, "first evaluation point");
  c_est->add_option("--x-max", est.x_max, "last evaluation point");
  c_est->add_option("--x-step", est.x_step, "evaluation spacing");
  c_est->add_option("--jump-threshold", est.jump_threshold, "argument increment that raises jump_suspect");
  c_est->add_option("--modulus-floor", est.modulus_floor, "|psi| level treated as vanished");
  c_est->add_flag("--strict", est.strict, "exit 3 when the logarithm is undefined");
  c_est->add_option("--out", est.out, "output CSV path (JSON sidecar lands at <out>.meta.json)");

  add_model_options(c_mc, mc);
  c_mc->add_option("--n", mc.n, "number of increments per replicate");
  c_mc->add_option("--reps", mc.reps, "number of replicates (>= 50)");
  c_mc->add_option("--x", mc.x, "evaluation point");
  c_mc->add_option("--h", mc.h, "bandwidth");
  c_mc->add_option("--eta", mc.eta, "frequency grid step");
  c_mc->add_option("--fft-size", mc.fft_size, "FFT length (power of 2)");
  c_mc->add_option("--modulus-floor", mc.modulus_floor, "|psi| level treated as vanished");
  c_mc->add_option("--jobs", mc.jobs, "worker threads (results independent of this)");
  c_mc->add_option("--out", mc.out, "output CSV path");

  add_model_options(c_van, van);
  c_van->add_option("--n-set", van.n_set, "comma-separated sample sizes")->delimiter(',');
  c_van->add_option("--reps", van.reps, "replicates per sample size (>= 100)");
  c_van->add_option("--h", van.h, "bandwidth");
  c_van->add_option("--eta", van.eta, "frequency grid step");
  c_van->add_option("--modulus-floor", van.modulus_floor, "|psi| level treated as vanished");
  c_van->add_option("--jobs", van.jobs, "worker threads (results independent of this)");
  c_van->add_option("--out", van.out, "output CSV path");

  add_model_options(c_bias, bias);
  c_bias->add_option("--x", bias.x, "evaluation point");
  c_bias->add_option("--h-values", bias.h_values, "comma-separated increasing bandwidths")->delimiter(',');
  c_bias->add_option("--eta", bias.eta, "frequency grid step");
  c_bias->add_option("--out", bias.out, "output CSV path");

  c_fig->add_option("--seed", fig.seed, "master seed (env DECOMPOUND_SEED supplies the default)");
  c_fig->add_option("--out", fig.out, "output CSV path");

  try {
    if (have_env_seed)
      for (Opts* o : {&sim, &est, &mc, &van, &bias, &fig}) o->seed = env_seed;
    if (!config_path.empty()) {
      config_kv = parse_config_file(config_path);
      for (Opts* o : {&sim, &est, &mc, &van, &bias, &fig}) apply_config(*o, config_kv);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_sim->parsed()) return run_simulate(sim);
    if (c_est->parsed()) {
      const bool h_given = c_est->count("--h") > 0 || est.from_config.count("h") > 0;
      const bool ch_given = c_est->count("--c-h") > 0 || est.from_config.count("c-h") > 0;
      const bool mn_given = c_est->count("--m-n") > 0 || est.from_config.count("m-n") > 0;
      return run_estimate(est, h_given, ch_given, mn_given);
    }
    if (c_mc->parsed()) return run_mc_normality(mc);
    if (c_van->parsed()) return run_vanishing(van);
    if (c_bias->parsed()) return run_bias_study(bias);
    if (c_fig->parsed()) return run_reproduce_figure(fig);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
