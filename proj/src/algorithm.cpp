#include "gradbandit/algorithm.hpp"

#include <cmath>
#include <stdexcept>

namespace gradbandit {

namespace {

void validate_step_inputs(const Parameters& params, const UpdateInputs& inputs,
                          const PolicyDist& policy) {
  const int k = params.num_actions();
  if (k < 2) throw std::invalid_argument("step: need at least two actions");
  if (policy.num_actions() != k)
    throw std::invalid_argument("step: policy/parameter size mismatch");
  if (inputs.action < 0 || inputs.action >= k)
    throw std::out_of_range("step: action index out of range");
  if (!std::isfinite(inputs.reward))
    throw std::invalid_argument("step: non-finite reward");
  if (!(inputs.eta > 0.0) || !std::isfinite(inputs.eta))
    throw std::invalid_argument("step: eta must be positive and finite");
}

}  // namespace

void apply_step_direct(std::vector<double>& theta, const std::vector<double>& probs,
                       double eta, int action, double reward) {
  const std::size_t k = theta.size();
  const double scaled = eta * reward;
  for (std::size_t a = 0; a < k; ++a) theta[a] -= scaled * probs[a];
  theta[action] += scaled;  // net effect: eta * (1 - pi(action)) * reward
}

Parameters step_direct(const Parameters& params, const UpdateInputs& inputs,
                       const PolicyDist& policy) {
  validate_step_inputs(params, inputs, policy);
  Parameters next = params;
  apply_step_direct(next.theta, policy.probs, inputs.eta, inputs.action,
                    inputs.reward);
  return next;
}

ISEstimate is_estimate(const PolicyDist& policy, int action, double reward) {
  const int k = policy.num_actions();
  if (action < 0 || action >= k)
    throw std::out_of_range("is_estimate: action index out of range");
  if (!(policy.probs[action] > 0.0))
    throw std::invalid_argument("is_estimate: sampled action has zero probability");
  ISEstimate est;
  est.r_hat.assign(k, 0.0);
  est.r_hat[action] = reward / policy.probs[action];
  return est;
}

Parameters step_sga(const Parameters& params, double eta, const ISEstimate& estimate) {
  const int k = params.num_actions();
  if (static_cast<int>(estimate.r_hat.size()) != k)
    throw std::invalid_argument("step_sga: estimate/parameter size mismatch");
  PolicyDist policy = softmax(params);
  const auto jac = softmax_jacobian(policy);
  Parameters next = params;
  for (int a = 0; a < k; ++a) {
    double grad = 0.0;
    for (int b = 0; b < k; ++b) grad += jac[a][b] * estimate.r_hat[b];
    next.theta[a] += eta * grad;
  }
  return next;
}

std::vector<double> exact_gradient(const BanditEnv& env, const PolicyDist& policy) {
  const int k = env.num_actions();
  if (policy.num_actions() != k)
    throw std::invalid_argument("exact_gradient: policy/arm count mismatch");
  double mean_reward = 0.0;
  for (int a = 0; a < k; ++a) mean_reward += policy.probs[a] * env.means[a];
  std::vector<double> grad(k);
  for (int a = 0; a < k; ++a)
    grad[a] = policy.probs[a] * (env.means[a] - mean_reward);
  return grad;
}

std::vector<double> expected_update(const BanditEnv& env, const PolicyDist& policy,
                                    double eta) {
  const int k = env.num_actions();
  if (policy.num_actions() != k)
    throw std::invalid_argument("expected_update: policy/arm count mismatch");
  std::vector<double> expected(k, 0.0);
  for (int sampled = 0; sampled < k; ++sampled) {
    const double weight = policy.probs[sampled];
    const double reward = env.means[sampled];
    for (int a = 0; a < k; ++a) {
      const double indicator = (a == sampled) ? 1.0 : 0.0;
      expected[a] += weight * eta * (indicator - policy.probs[a]) * reward;
    }
  }
  return expected;
}

}  // namespace gradbandit
