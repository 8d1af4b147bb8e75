#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gradbandit/env.hpp"

using namespace gradbandit;

namespace {
const std::vector<double> kFourArm{0.2, 0.05, -0.1, -0.4};
}

TEST_CASE("make_env derives optimal arm, gap, and support flag") {
  BanditEnv env = make_env(kFourArm, RewardKind::gaussian, 0.1, 1.0);
  CHECK(env.optimal_arm == 0);
  CHECK(env.gap == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(env.unbounded_support);
  CHECK(env.sigmas == std::vector<double>{0.1, 0.1, 0.1, 0.1});

  BanditEnv pm = make_env({-0.25, -0.05}, RewardKind::point_mass, 0.0, 1.0);
  CHECK(pm.optimal_arm == 1);
  CHECK(pm.gap == doctest::Approx(0.2).epsilon(1e-15));
  CHECK_FALSE(pm.unbounded_support);
  CHECK_FALSE(make_env(kFourArm, RewardKind::bernoulli, 0.0, 1.0).unbounded_support);
}

TEST_CASE("make_env validation") {
  CHECK_THROWS_AS(make_env({0.5}, RewardKind::point_mass, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_env({0.1, 0.1}, RewardKind::point_mass, 0.0, 1.0),
                  std::invalid_argument);  // tied means
  CHECK_THROWS_AS(make_env({0.1, 2.0}, RewardKind::point_mass, 0.0, 1.0),
                  std::invalid_argument);  // mean above r_max
  CHECK_THROWS_AS(make_env({0.1, 1.5}, RewardKind::bernoulli, 0.0, 2.0),
                  std::invalid_argument);  // bernoulli needs |mean| <= 1
  CHECK_THROWS_AS(make_env({0.1, 0.2}, RewardKind::gaussian, -0.5, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      make_env({0.1, 0.2}, RewardKind::gaussian, std::vector<double>{0.1}, 1.0),
      std::invalid_argument);  // sigma vector length
}

TEST_CASE("suboptimality oracles on the four-arm benchmark") {
  BanditEnv env = make_env(kFourArm, RewardKind::point_mass, 0.0, 1.0);
  PolicyDist uniform{{0.25, 0.25, 0.25, 0.25}};
  CHECK(suboptimality(env, uniform) == doctest::Approx(0.2625).epsilon(1e-14));
  PolicyDist on_worst{{0.0, 0.0, 0.0, 1.0}};
  CHECK(suboptimality(env, on_worst) == doctest::Approx(0.6).epsilon(1e-15));
  PolicyDist on_best{{1.0, 0.0, 0.0, 0.0}};
  CHECK(suboptimality(env, on_best) == 0.0);
}

TEST_CASE("suboptimality never goes negative") {
  BanditEnv env = make_env(kFourArm, RewardKind::point_mass, 0.0, 1.0);
  // A distribution numerically concentrated on the best arm.
  PolicyDist nearly{{1.0 - 3e-16, 1e-16, 1e-16, 1e-16}};
  CHECK(suboptimality(env, nearly) >= 0.0);
}

TEST_CASE("critical learning rate oracles") {
  BanditEnv four = make_env(kFourArm, RewardKind::gaussian, 0.1, 1.0);
  CHECK(critical_learning_rate(four) == doctest::Approx(7.03125e-5).epsilon(1e-12));
  BanditEnv two = make_env({-0.05, -0.25}, RewardKind::gaussian, 0.1, 1.0);
  CHECK(critical_learning_rate(two) ==
        doctest::Approx(3.5355339059327378e-4).epsilon(1e-12));
}

TEST_CASE("point-mass rewards are exact and still consume one draw") {
  BanditEnv env = make_env(kFourArm, RewardKind::point_mass, 0.0, 1.0);
  RandomStream rng(99);
  CHECK(sample_reward_value(env, 2, rng) == -0.1);
  // The draw above advanced the stream by exactly one u64.
  RandomStream fresh(99);
  fresh.next_u64();
  CHECK(rng.next_u64() == fresh.next_u64());
}

TEST_CASE("bernoulli rewards take values in {-1, +1} with the right mean") {
  BanditEnv env = make_env(kFourArm, RewardKind::bernoulli, 0.0, 1.0);
  RandomStream rng(7);
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = sample_reward_value(env, 0, rng);
    CHECK((r == 1.0 || r == -1.0));
    sum += r;
  }
  // 6-sigma band around the mean 0.2: sd = sqrt(1 - 0.04) / sqrt(n).
  CHECK(std::fabs(sum / n - 0.2) <= 6.0 * std::sqrt(0.96 / n));
}

TEST_CASE("gaussian rewards match their first two moments") {
  BanditEnv env = make_env(kFourArm, RewardKind::gaussian, 0.1, 1.0);
  RandomStream rng(11);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = sample_reward_value(env, 1, rng);
    sum += r;
    sum2 += r * r;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::fabs(mean - 0.05) <= 6.0 * 0.1 / std::sqrt(n));
  CHECK(var == doctest::Approx(0.01).epsilon(0.05));
}

TEST_CASE("sample_reward echoes the arm it was asked for") {
  BanditEnv env = make_env(kFourArm, RewardKind::point_mass, 0.0, 1.0);
  RandomStream rng(1);
  RewardSample s = sample_reward(env, 3, rng);
  CHECK(s.arm == 3);
  CHECK(s.value == -0.4);
}
