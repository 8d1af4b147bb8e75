#pragma once

#include <vector>

#include "gradbandit/policy.hpp"
#include "gradbandit/rng.hpp"

namespace gradbandit {

enum class RewardKind { point_mass, gaussian, bernoulli };

// A stationary stochastic bandit: per-arm mean rewards plus a sampling
// family. Means must be pairwise distinct so the optimal arm and the reward
// gap are well defined.
//
// Reward families:
//   point_mass  deterministic, reward == mean
//   gaussian    mean + sigma * Z; support is unbounded, so realized rewards
//               can land outside [-r_max, r_max] (flagged below)
//   bernoulli   values in {-1, +1} with P(+1) = (1 + mean) / 2; needs
//               |mean| <= 1 and r_max >= 1
struct BanditEnv {
  std::vector<double> means;
  RewardKind kind = RewardKind::point_mass;
  std::vector<double> sigmas;  // gaussian only, one per arm
  double r_max = 1.0;
  int optimal_arm = 0;  // argmax of means
  double gap = 0.0;     // means[optimal_arm] minus the best other mean
  bool unbounded_support = false;

  int num_actions() const { return static_cast<int>(means.size()); }
};

struct RewardSample {
  int arm;
  double value;
};

BanditEnv make_env(std::vector<double> means, RewardKind kind, double sigma,
                   double r_max);
BanditEnv make_env(std::vector<double> means, RewardKind kind,
                   std::vector<double> sigmas, double r_max);

// Draws one reward, consuming exactly one uniform from the stream for every
// kind so the per-iteration draw count is independent of the distribution.
RewardSample sample_reward(const BanditEnv& env, int arm, RandomStream& rng);
double sample_reward_value(const BanditEnv& env, int arm, RandomStream& rng);

// r(a*) - pi^T r, accumulated as sum_a pi(a) (r(a*) - r(a)): every term is
// nonnegative, so the result stays nonnegative in floating point.
double suboptimality(const BanditEnv& env, const PolicyDist& policy);
double suboptimality(const BanditEnv& env, const std::vector<double>& probs);

// gap^2 / (40 K^{3/2} r_max^3): the largest constant step size covered by
// small-step analyses of this update; reported for scale, never enforced.
double critical_learning_rate(const BanditEnv& env);

}  // namespace gradbandit
