#pragma once

#include <vector>

#include "gradbandit/env.hpp"
#include "gradbandit/policy.hpp"

namespace gradbandit {

struct UpdateInputs {
  double eta;    // step size, > 0
  int action;    // sampled arm
  double reward; // realized reward for that arm
};

// Importance-sampled reward vector: reward / pi(action) at the sampled arm,
// zero elsewhere.
struct ISEstimate {
  std::vector<double> r_hat;
};

// One gradient-bandit update:
//   theta(a)  += eta * (1 - pi(a)) * R   for the sampled arm,
//   theta(a') -= eta * pi(a') * R        for every other arm.
Parameters step_direct(const Parameters& params, const UpdateInputs& inputs,
                       const PolicyDist& policy);

// In-place form used by the simulation loop; assumes validated inputs.
void apply_step_direct(std::vector<double>& theta, const std::vector<double>& probs,
                       double eta, int action, double reward);

ISEstimate is_estimate(const PolicyDist& policy, int action, double reward);

// Stochastic-gradient-ascent form: theta + eta * (diag(pi) - pi pi^T) r_hat.
// Algebraically identical to step_direct; kept separate so the agreement can
// be checked numerically rather than assumed.
Parameters step_sga(const Parameters& params, double eta, const ISEstimate& estimate);

// (diag(pi) - pi pi^T) r evaluated at the true means; component a equals
// pi(a) * (r(a) - pi^T r).
std::vector<double> exact_gradient(const BanditEnv& env, const PolicyDist& policy);

// Expected one-step parameter change, by exhaustive enumeration over the
// sampled arm with rewards replaced by their means. Rewards enter the update
// linearly, so this is the exact expectation for every reward family; it
// serves as the brute-force oracle for unbiasedness checks and equals
// eta * exact_gradient.
std::vector<double> expected_update(const BanditEnv& env, const PolicyDist& policy,
                                    double eta);

}  // namespace gradbandit
