#include "gradbandit/verify.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "gradbandit/diagnostics.hpp"
#include "gradbandit/env.hpp"
#include "gradbandit/experiment.hpp"
#include "gradbandit/io.hpp"
#include "gradbandit/rate_bounds.hpp"
#include "gradbandit/rng.hpp"

namespace gradbandit {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// Records the first failure; later checks still run but cannot overwrite it.
struct Check {
  bool pass = true;
  std::string detail;

  void fail(const std::string& message) {
    if (pass) {
      pass = false;
      detail = message;
    }
  }
  void require(bool ok, const std::string& message) {
    if (!ok) fail(message);
  }
  SuiteResult done(const std::string& name, const std::string& pass_detail) {
    return SuiteResult{name, pass, pass ? pass_detail : detail};
  }
};

std::vector<double> random_theta(RandomStream& rng, int k, double lo, double hi) {
  std::vector<double> theta(k);
  for (double& v : theta) v = lo + (hi - lo) * rng.next_unit();
  return theta;
}

// Point-mass env with means separated by at least 1e-3 so signs and argmaxes
// are unambiguous.
BanditEnv random_point_mass_env(RandomStream& rng, int k) {
  for (;;) {
    std::vector<double> means(k);
    for (double& m : means) m = -1.0 + 2.0 * rng.next_unit();
    bool separated = true;
    for (int i = 0; i < k && separated; ++i)
      for (int j = 0; j < i; ++j)
        if (std::fabs(means[i] - means[j]) < 1e-3) {
          separated = false;
          break;
        }
    if (separated) return make_env(means, RewardKind::point_mass, 0.0, 1.0);
  }
}

}  // namespace

SuiteResult verify_softmax() {
  Check check;
  RandomStream rng(0x50F7A0701ull);
  double worst_sum = 0.0;

  for (int trial = 0; trial < 400 && check.pass; ++trial) {
    const int k = 2 + trial % 7;
    const double range = trial % 2 == 0 ? 5.0 : 100.0;
    Parameters params{random_theta(rng, k, -range, range)};
    PolicyDist policy = softmax(params);

    double sum = 0.0;
    int arg_pi = 0, arg_theta = 0;
    for (int a = 0; a < k; ++a) {
      sum += policy.probs[a];
      check.require(policy.probs[a] > 0.0,
                    "softmax: nonpositive probability " + fmt(policy.probs[a]) +
                        " at logit range " + fmt(range));
      if (policy.probs[a] > policy.probs[arg_pi]) arg_pi = a;
      if (params.theta[a] > params.theta[arg_theta]) arg_theta = a;
    }
    worst_sum = std::max(worst_sum, std::fabs(sum - 1.0));
    check.require(std::fabs(sum - 1.0) <= 1e-12,
                  "softmax: probabilities sum to " + fmt(sum));
    check.require(arg_pi == arg_theta, "softmax: argmax not preserved");

    // Constant shifts leave the distribution unchanged.
    const double shift = trial % 2 == 0 ? 7.25 : -100.0;
    Parameters shifted = params;
    for (double& v : shifted.theta) v += shift;
    PolicyDist policy2 = softmax(shifted);
    for (int a = 0; a < k; ++a)
      check.require(std::fabs(policy2.probs[a] - policy.probs[a]) <= 1e-12,
                    "softmax: shift by " + fmt(shift) + " moved pi(" +
                        std::to_string(a) + ") by " +
                        fmt(policy2.probs[a] - policy.probs[a]));
  }

  // Jacobian against central finite differences.
  double worst_fd = 0.0;
  for (int trial = 0; trial < 100 && check.pass; ++trial) {
    const int k = 2 + trial % 5;
    Parameters params{random_theta(rng, k, -5.0, 5.0)};
    const auto jac = softmax_jacobian(softmax(params));
    const double h = 1e-6;
    for (int j = 0; j < k; ++j) {
      Parameters up = params, down = params;
      up.theta[j] += h;
      down.theta[j] -= h;
      PolicyDist pi_up = softmax(up), pi_down = softmax(down);
      for (int i = 0; i < k; ++i) {
        const double fd = (pi_up.probs[i] - pi_down.probs[i]) / (2.0 * h);
        worst_fd = std::max(worst_fd, std::fabs(fd - jac[i][j]));
        check.require(std::fabs(fd - jac[i][j]) <= 1e-6,
                      "jacobian: entry (" + std::to_string(i) + "," +
                          std::to_string(j) + ") differs from finite difference by " +
                          fmt(fd - jac[i][j]));
      }
    }
    for (int i = 0; i < k; ++i) {
      double row_sum = 0.0;
      for (int j = 0; j < k; ++j) {
        row_sum += jac[i][j];
        check.require(std::fabs(jac[i][j] - jac[j][i]) <= 1e-16,
                      "jacobian: asymmetric");
      }
      check.require(std::fabs(row_sum) <= 1e-14,
                    "jacobian: row sum " + fmt(row_sum));
    }
  }

  // Extreme logits must not overflow or produce NaN.
  {
    PolicyDist policy = softmax(Parameters{{1000.0, 0.0}});
    check.require(policy.probs[0] == 1.0 && policy.probs[1] >= 0.0,
                  "softmax: extreme logits mishandled");
    PolicyDist tiny = softmax(Parameters{{-1000.0, 0.0}});
    check.require(tiny.probs[1] == 1.0, "softmax: extreme negative logits mishandled");
    for (double v : policy.probs)
      check.require(std::isfinite(v), "softmax: non-finite output at extreme logits");
  }

  return check.done("softmax", "400 states; worst |sum-1| " + fmt(worst_sum) +
                                   ", worst jacobian FD gap " + fmt(worst_fd));
}

SuiteResult verify_environment() {
  Check check;
  RandomStream rng(0xE177B0ull);

  // Suboptimality: nonnegative always, linear in the policy, zero only when
  // the policy concentrates on the optimal arm.
  double worst_linearity = 0.0;
  for (int trial = 0; trial < 200 && check.pass; ++trial) {
    const int k = 2 + trial % 5;
    BanditEnv env = random_point_mass_env(rng, k);
    check.require(env.gap > 0.0, "env: nonpositive gap");
    for (int a = 0; a < k; ++a)
      check.require(env.means[env.optimal_arm] >= env.means[a],
                    "env: optimal_arm is not the argmax");

    PolicyDist pi_a = softmax(Parameters{random_theta(rng, k, -30.0, 30.0)});
    PolicyDist pi_b = softmax(Parameters{random_theta(rng, k, -30.0, 30.0)});
    const double sub_a = suboptimality(env, pi_a);
    const double sub_b = suboptimality(env, pi_b);
    check.require(sub_a >= 0.0 && sub_b >= 0.0,
                  "suboptimality: negative value " + fmt(std::min(sub_a, sub_b)));
    for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      std::vector<double> mix(k);
      for (int a = 0; a < k; ++a)
        mix[a] = lambda * pi_a.probs[a] + (1.0 - lambda) * pi_b.probs[a];
      const double direct = suboptimality(env, mix);
      const double linear = lambda * sub_a + (1.0 - lambda) * sub_b;
      worst_linearity = std::max(worst_linearity, std::fabs(direct - linear));
      check.require(std::fabs(direct - linear) <= 1e-12,
                    "suboptimality: not linear in the policy, gap " +
                        fmt(direct - linear));
    }

    std::vector<double> one_hot(k, 0.0);
    one_hot[env.optimal_arm] = 1.0;
    check.require(suboptimality(env, one_hot) == 0.0,
                  "suboptimality: nonzero on the optimal one-hot policy");
    std::vector<double> interior(k, 1.0 / k);
    check.require(suboptimality(env, interior) > 0.0,
                  "suboptimality: zero on an interior policy");
  }

  // Reward sampling: empirical means match, supports are as documented.
  {
    BanditEnv gauss = make_env({0.2, 0.05, -0.1, -0.4}, RewardKind::gaussian, 0.1, 1.0);
    check.require(gauss.unbounded_support, "gaussian env: unbounded flag missing");
    const int n = 200000;
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += sample_reward_value(gauss, 0, rng);
    const double err = std::fabs(total / n - 0.2);
    check.require(err <= 6.0 * 0.1 / std::sqrt(static_cast<double>(n)),
                  "gaussian sampling: empirical mean off by " + fmt(err));

    BanditEnv bern = make_env({0.2, 0.05, -0.1, -0.4}, RewardKind::bernoulli, 0.0, 1.0);
    check.require(!bern.unbounded_support, "bernoulli env: unbounded flag set");
    double btotal = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = sample_reward_value(bern, 1, rng);
      check.require(r == 1.0 || r == -1.0, "bernoulli sampling: value off support");
      btotal += r;
    }
    const double berr = std::fabs(btotal / n - 0.05);
    check.require(berr <= 6.0 / std::sqrt(static_cast<double>(n)),
                  "bernoulli sampling: empirical mean off by " + fmt(berr));

    BanditEnv point = make_env({0.3, -0.2}, RewardKind::point_mass, 0.0, 1.0);
    for (int i = 0; i < 100; ++i)
      check.require(sample_reward_value(point, 0, rng) == 0.3,
                    "point-mass sampling: value differs from the mean");
    check.require(critical_learning_rate(gauss) > 0.0,
                  "critical learning rate: nonpositive");
  }

  return check.done("environment",
                    "200 envs; worst linearity gap " + fmt(worst_linearity));
}

SuiteResult verify_equivalence(DirectStepFn step) {
  Check check;
  RandomStream rng(0xE901Aull);
  double worst = 0.0;

  for (int trial = 0; trial < 1000 && check.pass; ++trial) {
    const int k = 2 + trial % 7;  // every arm count from 2 through 8
    Parameters params{random_theta(rng, k, -10.0, 10.0)};
    PolicyDist policy = softmax(params);
    const double eta =
        std::exp(std::log(0.01) + rng.next_unit() * std::log(1000.0 / 0.01));
    const double reward = -1.0 + 2.0 * rng.next_unit();
    const int action = sample_action(policy, rng);

    Parameters direct = step(params, UpdateInputs{eta, action, reward}, policy);
    Parameters sga = step_sga(params, eta, is_estimate(policy, action, reward));
    for (int a = 0; a < k; ++a) {
      const double gap = std::fabs(direct.theta[a] - sga.theta[a]);
      worst = std::max(worst, gap);
      check.require(gap <= 1e-12,
                    "equivalence: direct and SGA forms differ by " + fmt(gap) +
                        " (eta " + fmt(eta) + ", k " + std::to_string(k) + ")");
    }

    // The update is mean-preserving in the logits.
    double sum_before = 0.0, sum_after = 0.0;
    for (int a = 0; a < k; ++a) {
      sum_before += params.theta[a];
      sum_after += direct.theta[a];
    }
    const double drift = std::fabs(sum_after - sum_before);
    check.require(drift <= 1e-12 * (1.0 + eta * std::fabs(reward)) * k,
                  "equivalence: logit sum drifted by " + fmt(drift) + " at eta " +
                      fmt(eta));
  }
  return check.done("equivalence",
                    "1000 states; worst componentwise gap " + fmt(worst));
}

SuiteResult verify_unbiasedness(DirectStepFn step) {
  Check check;
  RandomStream rng(0x0B1A5ull);
  double worst = 0.0;

  for (int trial = 0; trial < 200 && check.pass; ++trial) {
    const int k = 2 + trial % 5;
    BanditEnv env = random_point_mass_env(rng, k);
    Parameters params{random_theta(rng, k, -5.0, 5.0)};
    PolicyDist policy = softmax(params);
    const double etas[] = {0.1, 1.0, 37.5};
    const double eta = etas[trial % 3];

    // Route A: enumerate the sampled arm through the update rule itself.
    std::vector<double> averaged(k, 0.0);
    for (int sampled = 0; sampled < k; ++sampled) {
      Parameters next =
          step(params, UpdateInputs{eta, sampled, env.means[sampled]}, policy);
      for (int a = 0; a < k; ++a)
        averaged[a] += policy.probs[sampled] * (next.theta[a] - params.theta[a]);
    }
    // Route B: closed-form gradient. Route C: the enumeration oracle.
    const std::vector<double> grad = exact_gradient(env, policy);
    const std::vector<double> expected = expected_update(env, policy, eta);
    for (int a = 0; a < k; ++a) {
      const double gap_a = std::fabs(averaged[a] - eta * grad[a]);
      const double gap_c = std::fabs(expected[a] - eta * grad[a]);
      worst = std::max(worst, std::max(gap_a, gap_c));
      check.require(gap_a <= 1e-12 * (1.0 + eta),
                    "unbiasedness: averaged update differs from eta*gradient by " +
                        fmt(gap_a) + " at eta " + fmt(eta));
      check.require(gap_c <= 1e-12 * (1.0 + eta),
                    "unbiasedness: expected_update differs from eta*gradient by " +
                        fmt(gap_c));
    }
  }

  // Two arms: the drift pushes the better arm up and the worse arm down.
  for (int trial = 0; trial < 50 && check.pass; ++trial) {
    BanditEnv env = random_point_mass_env(rng, 2);
    PolicyDist policy = softmax(Parameters{random_theta(rng, 2, -3.0, 3.0)});
    const std::vector<double> expected = expected_update(env, policy, 1.0);
    const int best = env.optimal_arm;
    check.require(expected[best] > 0.0 && expected[1 - best] < 0.0,
                  "unbiasedness: two-arm drift signs wrong (" + fmt(expected[0]) +
                      ", " + fmt(expected[1]) + ")");
  }
  return check.done("unbiasedness", "200 envs x 3 etas; worst gap " + fmt(worst));
}

SuiteResult verify_decomposition() {
  Check check;

  ExperimentConfig base;
  base.means = {0.2, 0.05, -0.1, -0.4};
  base.r_max = 1.0;
  base.horizon = 10000;
  base.diag = DiagLevel::per_step;
  base.seeds = {1};
  base.etas = {1.0};

  double worst_residual = 0.0;
  for (RewardKind kind : {RewardKind::point_mass, RewardKind::gaussian}) {
    for (double eta : {1.0, 100.0}) {
      if (!check.pass) break;
      ExperimentConfig config = base;
      config.kind = kind;
      config.sigma = kind == RewardKind::gaussian ? 0.1 : 0.0;
      RunTrace trace = run_single(config, 7, eta);
      const int k = trace.num_actions();
      const std::string label = reward_kind_name(kind) + " eta " + fmt(eta);

      std::vector<double> prev_theta(k, 0.0), probs;
      std::vector<double> v_offline(k, 0.0);
      long long prev_t = 0;
      for (const CheckpointRow& row : trace.rows) {
        long long total = 0;
        for (long long c : row.counts) total += c;
        check.require(total == row.t,
                      "decomposition: counts sum to " + std::to_string(total) +
                          " at step " + std::to_string(row.t) + " (" + label + ")");
        check.require(row.t == prev_t + 1,
                      "decomposition: per-step trace skipped a step");
        prev_t = row.t;

        double scale = 1.0;
        for (int a = 0; a < k; ++a) scale = std::max(scale, std::fabs(row.theta[a]));
        for (int a = 0; a < k; ++a) {
          const double residual =
              std::fabs(row.theta[a] - (row.cum_progress[a] + row.cum_noise[a]));
          worst_residual = std::max(worst_residual, residual / scale);
          check.require(residual <= 1e-8 * scale,
                        "decomposition: residual " + fmt(residual) + " at step " +
                            std::to_string(row.t) + " (" + label + ")");
        }

        // Recompute the variance proxy offline from the pre-step policies.
        softmax_into(prev_theta, probs);
        for (int a = 0; a < k; ++a) {
          v_offline[a] += (5.0 / 18.0) * probs[a] * (1.0 - probs[a]);
          const double v_gap = std::fabs(v_offline[a] - row.variance_proxy[a]);
          check.require(v_gap <= 1e-9 * (1.0 + v_offline[a]),
                        "decomposition: variance proxy differs offline by " +
                            fmt(v_gap) + " (" + label + ")");
        }
        prev_theta = row.theta;
      }

      // Per-step noise stays inside 3*eta*r_max for bounded rewards.
      if (kind == RewardKind::point_mass) {
        double prev_noise = 0.0;
        for (const CheckpointRow& row : trace.rows) {
          const double w = row.cum_noise[0] - prev_noise;
          check.require(std::fabs(w) <= 3.0 * eta * trace.r_max + 1e-9,
                        "decomposition: single-step noise " + fmt(w) +
                            " exceeds 3*eta*r_max (" + label + ")");
          prev_noise = row.cum_noise[0];
        }
      }
    }
  }

  // Ensemble mean of the one-step noise is zero within Monte Carlo error.
  {
    BanditEnv env = make_env({0.2, 0.05, -0.1, -0.4}, RewardKind::bernoulli, 0.0, 1.0);
    Parameters params{{0.3, -0.2, 0.1, 0.0}};
    PolicyDist policy = softmax(params);
    const double eta = 1.0;
    const std::vector<double> drift = expected_update(env, policy, eta);
    RandomStream rng(0xDECAFull);
    const int n = 10000;
    std::vector<double> mean_noise(4, 0.0);
    for (int i = 0; i < n; ++i) {
      const int action = sample_action(policy, rng);
      const double reward = sample_reward_value(env, action, rng);
      Parameters next =
          step_direct(params, UpdateInputs{eta, action, reward}, policy);
      for (int a = 0; a < 4; ++a)
        mean_noise[a] += (next.theta[a] - params.theta[a]) - drift[a];
    }
    for (int a = 0; a < 4; ++a) {
      const double mean = mean_noise[a] / n;
      check.require(std::fabs(mean) <= 0.15,
                    "decomposition: one-step noise has nonzero mean " + fmt(mean));
    }
  }

  return check.done("decomposition",
                    "4 traced runs; worst relative residual " + fmt(worst_residual));
}

SuiteResult verify_recurrence() {
  Check check;
  double smallest_margin = 1e300;  // least slack between iterate and bound

  for (double b : {1.0, 2.0, 5.0}) {
    for (double c : {0.1, 1.0, 10.0}) {
      if (!check.pass) break;
      RecurrenceSpec spec;
      spec.b = b;
      spec.c = c;
      spec.y0 = std::max(b, std::log(b * c) / c);
      spec.n_max = 1000000;
      const std::vector<double> y = iterate_recurrence(spec);
      double min_margin = 1e300;
      for (long long n = 0; n <= spec.n_max; ++n) {
        const double bound = log_bound(spec, n);
        min_margin = std::min(min_margin, bound - y[n]);
        if (y[n] > bound) {
          check.fail("recurrence: iterate " + fmt(y[n]) + " exceeds bound " +
                     fmt(bound) + " at n=" + std::to_string(n) + " (b " + fmt(b) +
                     ", c " + fmt(c) + ")");
          break;
        }
        // Increments below one ulp round away, so monotonicity is only
        // checkable non-strictly.
        if (n > 0 && y[n] < y[n - 1]) {
          check.fail("recurrence: iterates decreased at n=" + std::to_string(n));
          break;
        }
      }
      smallest_margin = std::min(smallest_margin, min_margin);
    }
  }

  // A sequence obeying the same inequality from a lower start stays below.
  {
    RecurrenceSpec spec{2.0, 1.0, 2.0, 0};
    std::vector<double> x;
    double value = 1.0;
    for (int n = 0; n < 10000; ++n) {
      x.push_back(value);
      value += spec.b * std::exp(-spec.c * value);
    }
    check.require(dominated_sequence_check(spec, x),
                  "recurrence: domination check rejected a conforming sequence");
    check.require(dominated_sequence_check(spec, std::vector<double>(10000, 0.0)),
                  "recurrence: domination check rejected the zero sequence");
  }

  // The start condition is enforced.
  {
    bool threw = false;
    try {
      log_bound(RecurrenceSpec{5.0, 1.0, 1.0, 0}, 10);
    } catch (const std::invalid_argument&) {
      threw = true;
    }
    check.require(threw, "recurrence: start condition not enforced");
  }

  return check.done("recurrence",
                    "9 (b,c) pairs to n=1e6; smallest bound margin " +
                        fmt(smallest_margin));
}

SuiteResult verify_freedman() {
  Check check;

  // Envelope shape: grows with the variance proxy, shrinks with delta.
  for (double eta : {0.1, 1.0}) {
    double prev = -1.0;
    for (double v : {0.0, 0.5, 1.0, 5.0, 50.0}) {
      const double env_v = freedman_envelope(v, 0.05, eta, 1.0);
      check.require(env_v > prev, "freedman: envelope not increasing in v");
      prev = env_v;
    }
    double prev_delta = 1e300;
    for (double delta : {0.01, 0.05, 0.5, 0.999}) {
      const double env_d = freedman_envelope(1.0, delta, eta, 1.0);
      check.require(env_d < prev_delta, "freedman: envelope not decreasing in delta");
      prev_delta = env_d;
    }
    check.require(freedman_envelope(0.0, 0.999999, eta, 1.0) > 0.0,
                  "freedman: envelope vanishes at v=0");
  }

  // Ensemble check: at delta = 0.05, at most a small fraction of runs may
  // ever leave the envelope. 300 runs of 1000 bounded-reward steps; the
  // threshold is delta plus three binomial standard errors.
  ExperimentConfig config;
  config.means = {0.2, 0.05, -0.1, -0.4};
  config.kind = RewardKind::bernoulli;
  config.sigma = 0.0;
  config.r_max = 1.0;
  config.horizon = 1000;
  config.diag = DiagLevel::per_step;
  config.etas = {1.0};
  config.seeds = {1};

  std::vector<RunTrace> runs;
  runs.reserve(300);
  for (std::uint64_t seed = 1; seed <= 300; ++seed)
    runs.push_back(run_single(config, seed, 1.0));
  const double delta = 0.05;
  const double threshold =
      delta + 3.0 * std::sqrt(delta * (1.0 - delta) / 300.0);
  double worst_rate = 0.0;
  for (int arm = 0; arm < 4; ++arm) {
    const double rate = envelope_violation_rate(runs, arm, delta);
    worst_rate = std::max(worst_rate, rate);
    check.require(rate <= threshold,
                  "freedman: violation rate " + fmt(rate) + " on arm " +
                      std::to_string(arm + 1) + " exceeds " + fmt(threshold));
  }

  return check.done("freedman", "300 runs x 1000 steps; worst violation rate " +
                                    fmt(worst_rate));
}

SuiteResult verify_experiment() {
  Check check;

  // Determinism: identical inputs give identical traces and CSV bytes, and
  // permuting the seed and eta lists changes nothing.
  {
    ExperimentConfig config;
    config.means = {0.3, -0.1};
    config.kind = RewardKind::point_mass;
    config.sigma = 0.0;
    config.horizon = 500;
    config.diag = DiagLevel::checkpointed;
    config.etas = {0.5, 2.0};
    config.seeds = {11, 3};

    const SweepResult first = run_sweep(config);
    ExperimentConfig permuted = config;
    permuted.etas = {2.0, 0.5};
    permuted.seeds = {3, 11};
    const SweepResult second = run_sweep(permuted);
    check.require(sweep_csv(first.traces) == sweep_csv(second.traces),
                  "experiment: permuting seeds/etas changed the sweep output");

    const RunTrace once = run_single(config, 11, 2.0);
    const RunTrace twice = run_single(config, 11, 2.0);
    check.require(once.rows.size() == twice.rows.size() &&
                      once.final_theta == twice.final_theta &&
                      once.final_counts == twice.final_counts,
                  "experiment: repeated run differs");
    for (std::size_t i = 0; i < once.rows.size() && check.pass; ++i)
      check.require(once.rows[i].theta == twice.rows[i].theta &&
                        once.rows[i].cum_noise == twice.rows[i].cum_noise,
                    "experiment: repeated run differs at a checkpoint");
  }

  // Checkpoint schedule: starts at 1, ends at the horizon, strictly
  // increasing, and stays compact even for 1e6 steps.
  {
    const auto schedule = checkpoint_schedule(1000000, 1.1);
    check.require(!schedule.empty() && schedule.front() == 1 &&
                      schedule.back() == 1000000,
                  "experiment: schedule endpoints wrong");
    for (std::size_t i = 1; i < schedule.size(); ++i)
      check.require(schedule[i] > schedule[i - 1],
                    "experiment: schedule not strictly increasing");
    check.require(schedule.size() <= 200,
                  "experiment: schedule has " + std::to_string(schedule.size()) +
                      " rows for horizon 1e6");
    check.require(checkpoint_schedule(1).size() == 1 &&
                      checkpoint_schedule(0).empty(),
                  "experiment: degenerate schedules wrong");
  }

  // Per-checkpoint invariants on a stochastic run.
  {
    ExperimentConfig config;
    config.means = {0.2, 0.05, -0.1, -0.4};
    config.kind = RewardKind::gaussian;
    config.sigma = 0.1;
    config.horizon = 10000;
    config.diag = DiagLevel::checkpointed;
    RunTrace trace = run_single(config, 5, 10.0);
    for (const CheckpointRow& row : trace.rows) {
      long long total = 0;
      for (long long c : row.counts) total += c;
      check.require(total == row.t, "experiment: counts identity fails");
      check.require(row.subopt >= 0.0 && row.pi_star > 0.0 && row.pi_star <= 1.0,
                    "experiment: row fields out of range");
      double scale = 1.0;
      for (double v : row.theta) scale = std::max(scale, std::fabs(v));
      for (int a = 0; a < 4; ++a)
        check.require(std::fabs(row.theta[a] -
                                (row.cum_progress[a] + row.cum_noise[a])) <=
                          1e-8 * scale,
                      "experiment: checkpoint decomposition fails");
    }
  }

  // Config validation rejects the documented bad inputs.
  {
    auto rejects = [](ExperimentConfig bad) {
      try {
        validate_config(bad);
      } catch (const std::invalid_argument&) {
        return true;
      }
      return false;
    };
    ExperimentConfig good = default_four_arm_config();
    ExperimentConfig dup = good;
    dup.seeds = {1, 1};
    ExperimentConfig bad_eta = good;
    bad_eta.etas = {0.0};
    ExperimentConfig big_mean = good;
    big_mean.means = {2.0, 0.0, -0.1, -0.4};
    ExperimentConfig tied = good;
    tied.means = {0.2, 0.2, -0.1, -0.4};
    check.require(rejects(dup) && rejects(bad_eta) && rejects(big_mean) &&
                      rejects(tied),
                  "experiment: config validation admits bad inputs");
    validate_config(good);
  }

  return check.done("experiment", "determinism, schedule, and trace invariants hold");
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {
      "softmax",    "environment",   "equivalence", "unbiasedness",
      "decomposition", "recurrence", "freedman",    "experiment"};
  return names;
}

SuiteResult run_verify_suite(const std::string& name) {
  if (name == "softmax") return verify_softmax();
  if (name == "environment") return verify_environment();
  if (name == "equivalence") return verify_equivalence();
  if (name == "unbiasedness") return verify_unbiasedness();
  if (name == "decomposition") return verify_decomposition();
  if (name == "recurrence") return verify_recurrence();
  if (name == "freedman") return verify_freedman();
  if (name == "experiment") return verify_experiment();
  throw std::invalid_argument("unknown verification suite: " + name);
}

std::vector<SuiteResult> run_all_verify_suites() {
  std::vector<SuiteResult> results;
  for (const std::string& name : verify_suite_names())
    results.push_back(run_verify_suite(name));
  return results;
}

}  // namespace gradbandit
