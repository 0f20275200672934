#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "decompound/charfun.hpp"
#include "decompound/distlog.hpp"
#include "decompound/estimator.hpp"
#include "decompound/experiments.hpp"
#include "decompound/processes.hpp"

namespace decompound {

// 17 significant digits: lossless double round-trip.
std::string format_g17(double v);

// Ordered key=value pairs emitted as '# key=value' comment lines at the top
// of every output file, so each file carries its full resolved configuration.
using KvList = std::vector<std::pair<std::string, std::string>>;

// Same-directory temp file + rename; readers never observe a partial file.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

// Inverse of the comment headers: accepts 'key=value' lines with or without a
// leading '# ', silently skips anything without '='. A previously written
// output file is therefore itself a usable config file.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path);

// index,x,y,z,jump_count (y/z/jump_count require the breakdown).
void write_observations_csv(const std::filesystem::path& path, const ObservationSet& obs,
                            const KvList& header);

// t,re,im with the series kind recorded as '# kind=<tag>'.
void write_complex_series_csv(const std::filesystem::path& path, const ComplexSeries& series,
                              const KvList& header);

// t,log_re,arg_unwrapped with '# kind=unwrapped_log'.
void write_unwrapped_log_csv(const std::filesystem::path& path, const UnwrappedLog& log,
                             const KvList& header);

// x,f_hat,f_raw,truncation_hit plus a JSON sidecar at <path>.meta.json with
// the full config, seed/lambda/n, distlog status and min modulus.
void write_estimate_csv(const std::filesystem::path& path, const DensityEstimate& est,
                        const KvList& extra);

// rep,seed,f_raw,stat,vanished; summary moments land in the comment header.
void write_normality_csv(const std::filesystem::path& path, const NormalityReport& report,
                         std::uint64_t master_seed, const KvList& extra);

// n,reps,vanished,fraction.
void write_vanishing_csv(const std::filesystem::path& path, const VanishingTable& table,
                         const KvList& extra);

// h,bias,rate,rate_ratio.
void write_bias_csv(const std::filesystem::path& path, const BiasReport& report,
                    const KvList& extra);

// x,f_hat,f_true.
void write_figure_csv(const std::filesystem::path& path, const FigureRun& run,
                      const KvList& extra);

}  // namespace decompound
