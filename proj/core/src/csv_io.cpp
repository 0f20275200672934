#include "decompound/csv_io.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace decompound {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

void append_header(std::string& out, const KvList& header) {
  for (const auto& [key, value] : header) {
    out += "# ";
    out += key;
    out += '=';
    out += value;
    out += '\n';
  }
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
  static std::atomic<std::uint64_t> counter{0};
  const std::filesystem::path dir = path.parent_path();
  std::filesystem::path tmp = dir / (path.filename().string() + ".tmp" +
                                     std::to_string(counter.fetch_add(1)));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    std::string s = trim(line);
    if (!s.empty() && s[0] == '#') s = trim(s.substr(1));
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = trim(s.substr(0, eq));
    if (key.empty()) continue;
    out[key] = trim(s.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void write_observations_csv(const std::filesystem::path& path, const ObservationSet& obs,
                            const KvList& header) {
  if (!obs.breakdown)
    throw std::invalid_argument("write_observations_csv: breakdown columns missing");
  const auto& bd = *obs.breakdown;
  std::string out;
  append_header(out, header);
  out += "index,x,y,z,jump_count\n";
  for (std::size_t i = 0; i < obs.values.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_g17(obs.values[i]);
    out += ',';
    out += format_g17(bd.y[i]);
    out += ',';
    out += format_g17(bd.z[i]);
    out += ',';
    out += std::to_string(bd.jump_count[i]);
    out += '\n';
  }
  atomic_write_text(path, out);
}

void write_complex_series_csv(const std::filesystem::path& path, const ComplexSeries& series,
                              const KvList& header) {
  std::string out;
  out += "# kind=";
  out += to_string(series.kind);
  out += '\n';
  append_header(out, header);
  out += "t,re,im\n";
  for (std::int64_t j = 0; j < series.grid.count; ++j) {
    out += format_g17(series.grid.t(j));
    out += ',';
    out += format_g17(series.values[static_cast<std::size_t>(j)].real());
    out += ',';
    out += format_g17(series.values[static_cast<std::size_t>(j)].imag());
    out += '\n';
  }
  atomic_write_text(path, out);
}

void write_unwrapped_log_csv(const std::filesystem::path& path, const UnwrappedLog& log,
                             const KvList& header) {
  std::string out;
  out += "# kind=unwrapped_log\n";
  append_header(out, header);
  out += "# status=";
  out += to_string(log.status);
  out += "\n# status_index=";
  out += std::to_string(log.status_index);
  out += "\n# base_value=";
  out += format_g17(log.base_value);
  out += "\n# min_modulus=";
  out += format_g17(log.min_modulus);
  out += "\n# corrections=";
  out += std::to_string(log.corrections);
  out += '\n';
  out += "t,log_re,arg_unwrapped\n";
  for (std::int64_t j = 0; j < log.grid.count; ++j) {
    out += format_g17(log.grid.t(j));
    out += ',';
    out += format_g17(log.log_values[static_cast<std::size_t>(j)].real());
    out += ',';
    out += format_g17(log.log_values[static_cast<std::size_t>(j)].imag());
    out += '\n';
  }
  atomic_write_text(path, out);
}

void write_estimate_csv(const std::filesystem::path& path, const DensityEstimate& est,
                        const KvList& extra) {
  KvList header = extra;
  header.emplace_back("lambda", format_g17(est.lambda));
  header.emplace_back("n", std::to_string(est.n));
  header.emplace_back("h", format_g17(est.config.h));
  header.emplace_back("beta", format_g17(est.config.beta));
  if (est.config.c_h) header.emplace_back("c-h", format_g17(*est.config.c_h));
  header.emplace_back("cm", format_g17(est.config.C_M));
  header.emplace_back("m-n", format_g17(est.m_n));
  header.emplace_back("eta", format_g17(est.config.eta));
  header.emplace_back("fft-size", std::to_string(est.config.fft_size));
  header.emplace_back("jump-threshold", format_g17(est.config.jump_threshold));
  header.emplace_back("modulus-floor", format_g17(est.config.modulus_floor));
  header.emplace_back("distlog_status", to_string(est.distlog_status));
  header.emplace_back("min_modulus", format_g17(est.min_modulus));
  header.emplace_back("branch_corrections", std::to_string(est.branch_corrections));
  header.emplace_back("used_fft", est.used_fft ? "1" : "0");

  std::string out;
  append_header(out, header);
  out += "x,f_hat,f_raw,truncation_hit\n";
  for (std::size_t k = 0; k < est.x.size(); ++k) {
    out += format_g17(est.x[k]);
    out += ',';
    out += format_g17(est.f_hat[k]);
    out += ',';
    out += format_g17(est.f_raw[k]);
    out += ',';
    out += est.truncation_hit[k] ? '1' : '0';
    out += '\n';
  }
  atomic_write_text(path, out);

  nlohmann::ordered_json meta;
  for (const auto& [key, value] : extra) meta[key] = value;
  meta["lambda"] = est.lambda;
  meta["n"] = est.n;
  meta["h"] = est.config.h;
  meta["beta"] = est.config.beta;
  if (est.config.c_h) meta["c_h"] = *est.config.c_h;
  meta["C_M"] = est.config.C_M;
  if (std::isfinite(est.m_n))
    meta["M_n"] = est.m_n;
  else
    meta["M_n"] = "inf";
  meta["eta"] = est.config.eta;
  meta["fft_size"] = est.config.fft_size;
  meta["x_min"] = est.x.empty() ? 0.0 : est.x.front();
  meta["x_max"] = est.x.empty() ? 0.0 : est.x.back();
  meta["x_count"] = est.x.size();
  meta["jump_threshold"] = est.config.jump_threshold;
  meta["modulus_floor"] = est.config.modulus_floor;
  meta["distlog_status"] = to_string(est.distlog_status);
  meta["distlog_index"] = est.distlog_index;
  meta["min_modulus"] = est.min_modulus;
  meta["branch_corrections"] = est.branch_corrections;
  meta["used_fft"] = est.used_fft;
  std::filesystem::path meta_path = path;
  meta_path += ".meta.json";
  atomic_write_text(meta_path, meta.dump(2) + "\n");
}

void write_normality_csv(const std::filesystem::path& path, const NormalityReport& report,
                         std::uint64_t master_seed, const KvList& extra) {
  KvList header = extra;
  header.emplace_back("reps", std::to_string(report.reps));
  header.emplace_back("n", std::to_string(report.n));
  header.emplace_back("x", format_g17(report.x));
  header.emplace_back("h", format_g17(report.h));
  header.emplace_back("lambda", format_g17(report.lambda));
  header.emplace_back("zeta", format_g17(report.zeta));
  header.emplace_back("sample_variance", format_g17(report.sample_variance));
  header.emplace_back("target_variance", format_g17(report.target_variance));
  header.emplace_back("skewness", format_g17(report.skewness));
  header.emplace_back("excess_kurtosis", format_g17(report.excess_kurtosis));
  header.emplace_back("vanished_count", std::to_string(report.vanished_count));

  std::string out;
  append_header(out, header);
  out += "rep,seed,f_raw,stat,vanished\n";
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < report.f_raw.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += std::to_string(derive_seed(master_seed, i));
    out += ',';
    out += format_g17(report.f_raw[i]);
    out += ',';
    if (report.vanished[i]) {
      out += "nan";
    } else {
      out += cursor < report.stats.size() ? format_g17(report.stats[cursor]) : "nan";
      ++cursor;
    }
    out += ',';
    out += report.vanished[i] ? '1' : '0';
    out += '\n';
  }
  atomic_write_text(path, out);
}

void write_vanishing_csv(const std::filesystem::path& path, const VanishingTable& table,
                         const KvList& extra) {
  KvList header = extra;
  header.emplace_back("reps", std::to_string(table.reps));
  header.emplace_back("h", format_g17(table.h));

  std::string out;
  append_header(out, header);
  out += "n,reps,vanished,fraction\n";
  const std::vector<double> frac = table.fraction();
  for (std::size_t i = 0; i < table.n_values.size(); ++i) {
    out += std::to_string(table.n_values[i]);
    out += ',';
    out += std::to_string(table.reps);
    out += ',';
    out += std::to_string(table.vanished[i]);
    out += ',';
    out += format_g17(frac[i]);
    out += '\n';
  }
  atomic_write_text(path, out);
}

void write_bias_csv(const std::filesystem::path& path, const BiasReport& report,
                    const KvList& extra) {
  KvList header = extra;
  header.emplace_back("jump", report.law_name);
  if (report.decay) {
    header.emplace_back("decay_kind", report.decay->kind == CfDecay::Kind::supersmooth
                                          ? "supersmooth"
                                          : "ordinary_smooth");
    header.emplace_back("decay_exponent", format_g17(report.decay->exponent));
    header.emplace_back("decay_scale", format_g17(report.decay->scale));
  }
  header.emplace_back("x", format_g17(report.x));

  std::string out;
  append_header(out, header);
  out += "h,bias,rate,rate_ratio\n";
  for (std::size_t i = 0; i < report.h_values.size(); ++i) {
    out += format_g17(report.h_values[i]);
    out += ',';
    out += format_g17(report.bias[i]);
    out += ',';
    out += format_g17(report.rate[i]);
    out += ',';
    out += format_g17(report.rate_ratio[i]);
    out += '\n';
  }
  atomic_write_text(path, out);
}

void write_figure_csv(const std::filesystem::path& path, const FigureRun& run,
                      const KvList& extra) {
  std::string out;
  append_header(out, extra);
  out += "x,f_hat,f_true\n";
  for (std::size_t k = 0; k < run.estimate.x.size(); ++k) {
    out += format_g17(run.estimate.x[k]);
    out += ',';
    out += format_g17(run.estimate.f_hat[k]);
    out += ',';
    out += format_g17(run.f_true[k]);
    out += '\n';
  }
  atomic_write_text(path, out);
}

}  // namespace decompound
