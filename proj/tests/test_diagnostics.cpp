#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gradbandit/diagnostics.hpp"
#include "gradbandit/env.hpp"

using namespace gradbandit;

namespace {

// Hand-worked fixture: point-mass means {0.5, -0.25}, uniform policy, eta 1.
// Sampling arm 0 moves theta by (+0.25, -0.25); the expected one-step drift
// is (+0.1875, -0.1875), so the noise term is (+0.0625, -0.0625). Sampling
// arm 1 from the same state gives the mirror image, and each step adds
// (5/18) * 0.25 = 5/72 of variance proxy per arm.
const BanditEnv kEnv = make_env({0.5, -0.25}, RewardKind::point_mass, 0.0, 1.0);
const std::vector<double> kUniform{0.5, 0.5};
const std::vector<double> kZeros{0.0, 0.0};

}  // namespace

TEST_CASE("record_step splits an update into progress and noise") {
  DiagnosticsState diag(kZeros);
  diag.record_step(kEnv, kUniform, 1.0, 0, kZeros, {0.25, -0.25});
  CHECK(diag.cum_progress == std::vector<double>{0.1875, -0.1875});
  CHECK(diag.cum_noise == std::vector<double>{0.0625, -0.0625});
  CHECK(diag.counts == std::vector<long long>{1, 0});
  CHECK(diag.variance_proxy[0] == doctest::Approx(5.0 / 72.0).epsilon(1e-15));
  CHECK(diag.step == 1);

  // The mirror step cancels the noise exactly and doubles everything else.
  diag.record_step(kEnv, kUniform, 1.0, 1, kZeros, {0.125, -0.125});
  CHECK(diag.cum_progress == std::vector<double>{0.375, -0.375});
  CHECK(diag.cum_noise == std::vector<double>{0.0, 0.0});
  CHECK(diag.counts == std::vector<long long>{1, 1});
  CHECK(diag.variance_proxy[1] == doctest::Approx(5.0 / 36.0).epsilon(1e-15));
}

TEST_CASE("record_step validates sizes and the action index") {
  DiagnosticsState diag(kZeros);
  CHECK_THROWS_AS(diag.record_step(kEnv, {1.0}, 1.0, 0, kZeros, kZeros),
                  std::invalid_argument);
  CHECK_THROWS_AS(diag.record_step(kEnv, kUniform, 1.0, 2, kZeros, kZeros),
                  std::out_of_range);
  CHECK_THROWS_AS(DiagnosticsState(std::vector<double>{0.0}), std::invalid_argument);
}

TEST_CASE("freedman envelope oracles at eta = r_max = 1") {
  CHECK(freedman_envelope(0.0, 0.05, 1.0, 1.0) ==
        doctest::Approx(116.68645464818506).epsilon(1e-12));
  CHECK(freedman_envelope(10.0, 0.05, 1.0, 1.0) ==
        doctest::Approx(326.2010071826105).epsilon(1e-12));
  // As delta -> 1 at v = 0 only the additive 8 ln 3 term survives.
  CHECK(freedman_envelope(0.0, 0.999999, 1.0, 1.0) ==
        doctest::Approx(8.830479539124958).epsilon(1e-12));
  CHECK(freedman_envelope(0.0, 0.999999, 1.0, 1.0) >
        8.0 * std::log(3.0));
  // Scale is linear in eta * r_max.
  CHECK(freedman_envelope(2.0, 0.1, 3.0, 0.5) ==
        doctest::Approx(1.5 * freedman_envelope(2.0, 0.1, 1.0, 1.0)).epsilon(1e-14));
}

TEST_CASE("freedman envelope is monotone in v and in 1/delta") {
  double prev = 0.0;
  for (double v : {0.0, 0.5, 1.0, 4.0, 100.0}) {
    const double e = freedman_envelope(v, 0.05, 1.0, 1.0);
    CHECK(e > prev);
    prev = e;
  }
  CHECK(freedman_envelope(1.0, 0.01, 1.0, 1.0) > freedman_envelope(1.0, 0.05, 1.0, 1.0));
  CHECK(freedman_envelope(1.0, 0.05, 1.0, 1.0) > freedman_envelope(1.0, 0.5, 1.0, 1.0));
}

TEST_CASE("freedman envelope input validation") {
  CHECK_THROWS_AS(freedman_envelope(-1.0, 0.05, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(freedman_envelope(0.0, 0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(freedman_envelope(0.0, 1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(freedman_envelope(0.0, 0.05, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(freedman_envelope(0.0, 0.05, 1.0, -1.0), std::invalid_argument);
}

namespace {

RunTrace synthetic_trace(double noise0, double proxy0) {
  RunTrace trace;
  trace.eta = 1.0;
  trace.r_max = 1.0;
  trace.final_theta = {0.0, 0.0};
  trace.final_counts = {0, 0};
  CheckpointRow row;
  row.t = 1;
  row.cum_noise = {noise0, 0.0};
  row.variance_proxy = {proxy0, proxy0};
  trace.rows.push_back(row);
  return trace;
}

}  // namespace

TEST_CASE("envelope violation rate counts runs, not rows") {
  // At v = 0 and delta = 0.05 the envelope is ~116.7, so a noise of 1000
  // violates it and a noise of 0 cannot.
  std::vector<RunTrace> runs{synthetic_trace(1000.0, 0.0), synthetic_trace(0.0, 0.0)};
  CHECK(envelope_violation_rate(runs, 0, 0.05) == 0.5);
  CHECK(envelope_violation_rate(runs, 1, 0.05) == 0.0);
  CHECK(envelope_violation_rate({synthetic_trace(0.0, 5.0)}, 0, 0.05) == 0.0);
}

TEST_CASE("envelope violation rate rejects bad inputs") {
  CHECK_THROWS_AS(envelope_violation_rate({}, 0, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(envelope_violation_rate({synthetic_trace(0.0, 0.0)}, 5, 0.05),
                  std::out_of_range);
  RunTrace bare = synthetic_trace(0.0, 0.0);
  bare.rows[0].variance_proxy.clear();
  CHECK_THROWS_AS(envelope_violation_rate({bare}, 0, 0.05), std::invalid_argument);
}

TEST_CASE("exploration summary sorts counts and reports the runner-up") {
  RunTrace trace;
  trace.final_counts = {5, 100, 7, 0};
  trace.final_theta = {0.0, 0.0, 0.0, 0.0};
  ExplorationSummary s = exploration_summary(trace);
  CHECK(s.sorted_counts == std::vector<long long>{100, 7, 5, 0});
  CHECK(s.second_count == 7);
}

TEST_CASE("a sampler that never leaves one arm shows a zero runner-up") {
  RunTrace trace;
  trace.final_counts = {100000, 0, 0, 0};
  trace.final_theta = {0.0, 0.0, 0.0, 0.0};
  CHECK(exploration_summary(trace).second_count == 0);

  RunTrace tiny;
  tiny.final_counts = {3};
  tiny.final_theta = {0.0};
  CHECK_THROWS_AS(exploration_summary(tiny), std::invalid_argument);
}
