#include "gradbandit/policy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gradbandit {

void softmax_into(const std::vector<double>& theta, std::vector<double>& probs) {
  const std::size_t k = theta.size();
  probs.resize(k);
  double max_logit = -std::numeric_limits<double>::infinity();
  for (double v : theta) {
    if (v > max_logit) max_logit = v;
  }
  double sum = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    probs[a] = std::exp(theta[a] - max_logit);
    sum += probs[a];
  }
  const double inv = 1.0 / sum;  // sum >= 1 because the max term is exp(0)
  for (std::size_t a = 0; a < k; ++a) probs[a] *= inv;
}

PolicyDist softmax(const Parameters& params) {
  if (params.theta.size() < 2)
    throw std::invalid_argument("softmax: need at least two actions");
  for (double v : params.theta)
    if (!std::isfinite(v)) throw std::invalid_argument("softmax: non-finite logit");
  PolicyDist policy;
  softmax_into(params.theta, policy.probs);
  return policy;
}

std::vector<std::vector<double>> softmax_jacobian(const PolicyDist& policy) {
  const std::size_t k = policy.probs.size();
  if (k < 2) throw std::invalid_argument("softmax_jacobian: need at least two actions");
  std::vector<std::vector<double>> jac(k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      jac[i][j] = (i == j ? policy.probs[i] : 0.0) - policy.probs[i] * policy.probs[j];
    }
  }
  return jac;
}

int sample_action(const std::vector<double>& probs, RandomStream& rng) {
  const double u = rng.next_unit();
  double cum = 0.0;
  const int k = static_cast<int>(probs.size());
  for (int a = 0; a < k; ++a) {
    cum += probs[a];
    if (u < cum) return a;
  }
  // Rounding can leave the total CDF a few ulps below 1; land on the last arm.
  return k - 1;
}

int sample_action(const PolicyDist& policy, RandomStream& rng) {
  if (policy.probs.size() < 2)
    throw std::invalid_argument("sample_action: need at least two actions");
  return sample_action(policy.probs, rng);
}

}  // namespace gradbandit
