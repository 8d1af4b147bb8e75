#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gradbandit/experiment.hpp"

namespace gradbandit {

// Trace CSV schema (one header line, then one line per checkpoint row,
// sorted by eta, then seed, then t):
//
//   run_seed,eta,t,subopt,log_subopt,underflow,pi_star,
//   count_1..count_K,theta_1..theta_K
//
// Floating-point fields use %.17g so rereading reproduces the exact bits.
std::string sweep_csv(const std::vector<RunTrace>& traces);
void write_sweep_csv(const std::string& path, const std::vector<RunTrace>& traces);

// summary.json: per-run terminal state plus any poisoned-run failures.
void write_summary(const std::string& path, const SweepResult& result);
std::string summary_json(const SweepResult& result);

// Minimal row form used by plot emission.
struct PlotRow {
  std::uint64_t seed = 0;
  double eta = 0.0;
  long long t = 0;
  double log_subopt = 0.0;
  bool underflow = false;
};

std::vector<PlotRow> read_sweep_csv(const std::string& path);

// Writes one file per eta, named plot_eta_<eta>.csv, with columns
// log_t,log_subopt,seed,underflow (natural log of t). Returns the file names
// written, in eta order. Throws on a missing or data-free input CSV.
std::vector<std::string> emit_plot_files(const std::string& csv_path,
                                         const std::string& out_dir);

// JSON config format mirrors ExperimentConfig field for field; see README.
ExperimentConfig config_from_json_file(const std::string& path);
std::string config_to_json(const ExperimentConfig& config);

RewardKind parse_reward_kind(const std::string& name);
std::string reward_kind_name(RewardKind kind);
DiagLevel parse_diag_level(const std::string& name);
std::string diag_level_name(DiagLevel level);

}  // namespace gradbandit
