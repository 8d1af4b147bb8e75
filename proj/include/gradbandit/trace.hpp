#pragma once

#include <cstdint>
#include <vector>

namespace gradbandit {

enum class DiagLevel { off, checkpointed, per_step };

// One recorded trace row. theta, counts and the policy-derived fields
// describe the state after completing iteration t; cum_subopt and
// cum_explore accumulate over the policies actually played at steps 1..t.
// The diagnostics vectors are filled only when the run collects them.
struct CheckpointRow {
  long long t = 0;
  double subopt = 0.0;
  double log_subopt = 0.0;
  bool underflow = false;  // subopt rounded to zero; log_subopt floored at -745
  double pi_star = 0.0;
  std::vector<long long> counts;
  std::vector<double> theta;
  double cum_subopt = 0.0;
  double cum_explore = 0.0;  // sum of (1 - pi_s(optimal)) over steps played
  std::vector<double> cum_noise;
  std::vector<double> cum_progress;
  std::vector<double> variance_proxy;
};

struct RunTrace {
  std::uint64_t seed = 0;
  double eta = 0.0;
  double r_max = 1.0;
  int optimal_arm = 0;
  DiagLevel diag = DiagLevel::off;
  long long horizon = 0;
  std::vector<CheckpointRow> rows;
  // Terminal state, valid even for a zero-length run with no rows.
  double final_subopt = 0.0;
  std::vector<long long> final_counts;
  std::vector<double> final_theta;

  int num_actions() const { return static_cast<int>(final_theta.size()); }
};

}  // namespace gradbandit
