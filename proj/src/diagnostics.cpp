#include "gradbandit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gradbandit {

DiagnosticsState::DiagnosticsState(std::vector<double> theta_init)
    : counts(theta_init.size(), 0),
      cum_progress(theta_init.size(), 0.0),
      cum_noise(theta_init.size(), 0.0),
      variance_proxy(theta_init.size(), 0.0),
      theta_initial(std::move(theta_init)) {
  if (theta_initial.size() < 2)
    throw std::invalid_argument("DiagnosticsState: need at least two actions");
}

void DiagnosticsState::record_step(const BanditEnv& env,
                                   const std::vector<double>& policy_before,
                                   double eta, int action,
                                   const std::vector<double>& theta_before,
                                   const std::vector<double>& theta_after) {
  const std::size_t k = theta_initial.size();
  if (policy_before.size() != k || theta_before.size() != k ||
      theta_after.size() != k || env.means.size() != k)
    throw std::invalid_argument("record_step: size mismatch");
  if (action < 0 || action >= static_cast<int>(k))
    throw std::out_of_range("record_step: action index out of range");

  counts[action] += 1;
  double mean_reward = 0.0;
  for (std::size_t a = 0; a < k; ++a) mean_reward += policy_before[a] * env.means[a];
  for (std::size_t a = 0; a < k; ++a) {
    const double progress = eta * policy_before[a] * (env.means[a] - mean_reward);
    cum_progress[a] += progress;
    cum_noise[a] += (theta_after[a] - theta_before[a]) - progress;
    variance_proxy[a] += (5.0 / 18.0) * policy_before[a] * (1.0 - policy_before[a]);
  }
  step += 1;
}

double freedman_envelope(double v, double delta, double eta, double r_max) {
  if (!(v >= 0.0) || !std::isfinite(v))
    throw std::invalid_argument("freedman_envelope: v must be finite and >= 0");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("freedman_envelope: delta must lie in (0, 1)");
  if (!(eta > 0.0) || !(r_max > 0.0))
    throw std::invalid_argument("freedman_envelope: eta and r_max must be positive");
  const double scale = eta * r_max;
  return 36.0 * scale * std::sqrt((v + 4.0 / 3.0) * std::log((v + 1.0) / delta)) +
         12.0 * scale * std::log(1.0 / delta) + 8.0 * scale * std::log(3.0);
}

double envelope_violation_rate(const std::vector<RunTrace>& runs, int arm,
                               double delta) {
  if (runs.empty())
    throw std::invalid_argument("envelope_violation_rate: no runs");
  long long violating = 0;
  for (const RunTrace& trace : runs) {
    if (arm < 0 || arm >= trace.num_actions())
      throw std::out_of_range("envelope_violation_rate: arm index out of range");
    bool violated = false;
    for (const CheckpointRow& row : trace.rows) {
      if (row.variance_proxy.empty())
        throw std::invalid_argument(
            "envelope_violation_rate: trace lacks diagnostics rows");
      const double bound =
          freedman_envelope(row.variance_proxy[arm], delta, trace.eta, trace.r_max);
      if (std::fabs(row.cum_noise[arm]) > bound) {
        violated = true;
        break;
      }
    }
    if (violated) ++violating;
  }
  return static_cast<double>(violating) / static_cast<double>(runs.size());
}

ExplorationSummary exploration_summary(const RunTrace& trace) {
  if (trace.final_counts.size() < 2)
    throw std::invalid_argument("exploration_summary: need at least two arms");
  ExplorationSummary summary;
  summary.sorted_counts = trace.final_counts;
  std::sort(summary.sorted_counts.begin(), summary.sorted_counts.end(),
            std::greater<long long>());
  summary.second_count = summary.sorted_counts[1];
  return summary;
}

}  // namespace gradbandit
