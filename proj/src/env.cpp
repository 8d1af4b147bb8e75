#include "gradbandit/env.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gradbandit {

namespace {

void validate_common(const std::vector<double>& means, double r_max) {
  if (means.size() < 2)
    throw std::invalid_argument("make_env: need at least two arms");
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw std::invalid_argument("make_env: r_max must be positive and finite");
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (!std::isfinite(means[i]))
      throw std::invalid_argument("make_env: non-finite mean");
    if (std::fabs(means[i]) > r_max)
      throw std::invalid_argument("make_env: |mean| exceeds r_max for arm " +
                                  std::to_string(i + 1));
    for (std::size_t j = 0; j < i; ++j)
      if (means[i] == means[j])
        throw std::invalid_argument("make_env: means must be pairwise distinct");
  }
}

}  // namespace

BanditEnv make_env(std::vector<double> means, RewardKind kind,
                   std::vector<double> sigmas, double r_max) {
  validate_common(means, r_max);
  BanditEnv env;
  env.kind = kind;
  env.r_max = r_max;
  switch (kind) {
    case RewardKind::point_mass:
      break;
    case RewardKind::gaussian: {
      if (sigmas.size() != means.size())
        throw std::invalid_argument("make_env: need one sigma per arm");
      for (double s : sigmas)
        if (!(s >= 0.0) || !std::isfinite(s))
          throw std::invalid_argument("make_env: sigma must be finite and >= 0");
      for (double s : sigmas)
        if (s > 0.0) env.unbounded_support = true;
      env.sigmas = std::move(sigmas);
      break;
    }
    case RewardKind::bernoulli: {
      // Support is {-1, +1}, so the mean must be a valid bias and the reward
      // scale must cover the realized values, not just the means.
      for (double m : means)
        if (std::fabs(m) > 1.0)
          throw std::invalid_argument("make_env: bernoulli means must lie in [-1, 1]");
      if (r_max < 1.0)
        throw std::invalid_argument("make_env: bernoulli rewards need r_max >= 1");
      break;
    }
  }
  int best = 0;
  for (int a = 1; a < static_cast<int>(means.size()); ++a)
    if (means[a] > means[best]) best = a;
  env.optimal_arm = best;
  double second = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < static_cast<int>(means.size()); ++a)
    if (a != best && means[a] > second) second = means[a];
  env.gap = means[best] - second;
  env.means = std::move(means);
  return env;
}

BanditEnv make_env(std::vector<double> means, RewardKind kind, double sigma,
                   double r_max) {
  std::vector<double> sigmas;
  if (kind == RewardKind::gaussian) sigmas.assign(means.size(), sigma);
  return make_env(std::move(means), kind, std::move(sigmas), r_max);
}

double sample_reward_value(const BanditEnv& env, int arm, RandomStream& rng) {
  if (arm < 0 || arm >= env.num_actions())
    throw std::out_of_range("sample_reward: arm index out of range");
  const double u = rng.next_unit_open();
  switch (env.kind) {
    case RewardKind::point_mass:
      return env.means[arm];  // the draw is still consumed
    case RewardKind::gaussian: {
      static const boost::math::normal_distribution<double> std_normal(0.0, 1.0);
      return env.means[arm] + env.sigmas[arm] * boost::math::quantile(std_normal, u);
    }
    case RewardKind::bernoulli:
      return u < 0.5 * (1.0 + env.means[arm]) ? 1.0 : -1.0;
  }
  throw std::logic_error("sample_reward: unknown reward kind");
}

RewardSample sample_reward(const BanditEnv& env, int arm, RandomStream& rng) {
  return RewardSample{arm, sample_reward_value(env, arm, rng)};
}

double suboptimality(const BanditEnv& env, const std::vector<double>& probs) {
  if (probs.size() != env.means.size())
    throw std::invalid_argument("suboptimality: policy/arm count mismatch");
  const double best = env.means[env.optimal_arm];
  double total = 0.0;
  for (std::size_t a = 0; a < probs.size(); ++a)
    total += probs[a] * (best - env.means[a]);
  return total;
}

double suboptimality(const BanditEnv& env, const PolicyDist& policy) {
  return suboptimality(env, policy.probs);
}

double critical_learning_rate(const BanditEnv& env) {
  const double k = static_cast<double>(env.num_actions());
  return env.gap * env.gap /
         (40.0 * k * std::sqrt(k) * env.r_max * env.r_max * env.r_max);
}

}  // namespace gradbandit
