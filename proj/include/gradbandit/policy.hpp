#pragma once

#include <vector>

#include "gradbandit/rng.hpp"

namespace gradbandit {

// Logit vector of a softmax policy over K >= 2 actions.
struct Parameters {
  std::vector<double> theta;

  int num_actions() const { return static_cast<int>(theta.size()); }
  static Parameters zeros(int k) { return Parameters{std::vector<double>(k, 0.0)}; }
};

// Probability vector: entries positive (up to floating-point underflow for
// logit spreads beyond ~745) and summing to one.
struct PolicyDist {
  std::vector<double> probs;

  int num_actions() const { return static_cast<int>(probs.size()); }
};

// Max-shifted softmax: pi(a) = exp(theta(a) - m) / sum_b exp(theta(b) - m)
// with m = max_b theta(b). The shift cancels algebraically, so ratios are
// exact, and no entry can overflow regardless of logit magnitude.
PolicyDist softmax(const Parameters& params);

// In-place core used by the simulation loop; assumes finite logits.
void softmax_into(const std::vector<double>& theta, std::vector<double>& probs);

// d pi / d theta = diag(pi) - pi pi^T. Symmetric; every row sums to zero.
std::vector<std::vector<double>> softmax_jacobian(const PolicyDist& policy);

// Inverse-CDF sample: scans actions in index order against one uniform draw,
// so ties and tiny probabilities resolve deterministically.
int sample_action(const PolicyDist& policy, RandomStream& rng);
int sample_action(const std::vector<double>& probs, RandomStream& rng);

}  // namespace gradbandit
