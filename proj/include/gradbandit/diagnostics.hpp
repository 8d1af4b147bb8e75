#pragma once

#include <vector>

#include "gradbandit/env.hpp"
#include "gradbandit/trace.hpp"

namespace gradbandit {

// Online accumulators for the one-step decomposition
//
//   theta_{t+1}(a) = theta_1(a) + sum_s P_s(a) + sum_s W_s(a),
//
// where P_s(a) = eta * pi_s(a) * (r(a) - pi_s^T r) is the expected one-step
// drift evaluated at the true means ("progress") and W_s(a) is the realized
// remainder ("noise"), a martingale difference bounded by 3 * eta * r_max
// for rewards inside [-r_max, r_max]. variance_proxy tracks
// V_t(a) = (5/18) * sum_s pi_s(a) * (1 - pi_s(a)), the scale that enters the
// concentration envelope below.
struct DiagnosticsState {
  std::vector<long long> counts;
  std::vector<double> cum_progress;
  std::vector<double> cum_noise;
  std::vector<double> variance_proxy;
  std::vector<double> theta_initial;
  long long step = 0;

  explicit DiagnosticsState(std::vector<double> theta_init);

  // policy_before is the distribution the action was sampled from;
  // theta_before/theta_after bracket the update at this step.
  void record_step(const BanditEnv& env, const std::vector<double>& policy_before,
                   double eta, int action, const std::vector<double>& theta_before,
                   const std::vector<double>& theta_after);
};

// High-probability envelope for |cumulative noise| at variance proxy v:
//
//   36 eta r_max sqrt((v + 4/3) ln((v + 1) / delta))
//     + 12 eta r_max ln(1 / delta) + 8 eta r_max ln 3.
//
// Natural logarithms throughout. Monotone increasing in v and decreasing in
// delta; requires v >= 0 and delta in (0, 1).
double freedman_envelope(double v, double delta, double eta, double r_max);

// Fraction of runs whose |cum_noise(arm)| exceeds the envelope at any
// recorded row. Runs must carry per-row diagnostics vectors.
double envelope_violation_rate(const std::vector<RunTrace>& runs, int arm,
                               double delta);

struct ExplorationSummary {
  std::vector<long long> sorted_counts;  // descending
  long long second_count = 0;            // pulls of the second-most-sampled arm
};

ExplorationSummary exploration_summary(const RunTrace& trace);

}  // namespace gradbandit
