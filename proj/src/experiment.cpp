#include "gradbandit/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <thread>

#include "gradbandit/algorithm.hpp"
#include "gradbandit/diagnostics.hpp"
#include "gradbandit/policy.hpp"
#include "gradbandit/rng.hpp"

namespace gradbandit {

namespace {

// ln of the smallest positive double is about -744.44; the trace floors
// log-suboptimality here and flags the row instead of emitting -inf.
constexpr double kLogUnderflowFloor = -745.0;

}  // namespace

BanditEnv ExperimentConfig::make_environment() const {
  return make_env(means, kind, sigma, r_max);
}

void validate_config(const ExperimentConfig& config) {
  config.make_environment();  // environment errors surface verbatim
  if (config.horizon < 0)
    throw std::invalid_argument("config: horizon must be nonnegative");
  if (!(config.checkpoint_ratio > 1.0))
    throw std::invalid_argument("config: checkpoint ratio must exceed 1");
  for (double eta : config.etas)
    if (!(eta > 0.0) || !std::isfinite(eta))
      throw std::invalid_argument("config: every eta must be positive and finite");
  for (std::size_t i = 0; i < config.seeds.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (config.seeds[i] == config.seeds[j])
        throw std::invalid_argument("config: seeds must be distinct");
  if (!config.theta_init.empty()) {
    if (config.theta_init.size() != config.means.size())
      throw std::invalid_argument("config: theta_init size must match arm count");
    for (double v : config.theta_init)
      if (!std::isfinite(v))
        throw std::invalid_argument("config: theta_init must be finite");
  }
}

PoisonedStateError::PoisonedStateError(std::uint64_t seed_, double eta_,
                                       long long step_)
    : std::runtime_error("poisoned state: non-finite logit at step " +
                         std::to_string(step_) + " (seed " +
                         std::to_string(seed_) + ", eta " +
                         std::to_string(eta_) + ")"),
      seed(seed_),
      eta(eta_),
      step(step_) {}

std::vector<long long> checkpoint_schedule(long long horizon, double ratio) {
  if (horizon < 0)
    throw std::invalid_argument("checkpoint_schedule: negative horizon");
  if (!(ratio > 1.0))
    throw std::invalid_argument("checkpoint_schedule: ratio must exceed 1");
  std::vector<long long> schedule;
  long long t = 1;
  while (t < horizon) {
    schedule.push_back(t);
    t = std::max(t + 1, static_cast<long long>(static_cast<double>(t) * ratio));
  }
  if (horizon >= 1) schedule.push_back(horizon);
  return schedule;
}

RunTrace run_single(const ExperimentConfig& config, std::uint64_t seed, double eta) {
  validate_config(config);
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw std::invalid_argument("run_single: eta must be positive and finite");
  const BanditEnv env = config.make_environment();
  const int k = env.num_actions();
  const double best_mean = env.means[env.optimal_arm];

  std::vector<double> theta =
      config.theta_init.empty() ? std::vector<double>(k, 0.0) : config.theta_init;

  RandomStream rng = RandomStream::for_run(config.seed_base, seed);

  RunTrace trace;
  trace.seed = seed;
  trace.eta = eta;
  trace.r_max = env.r_max;
  trace.optimal_arm = env.optimal_arm;
  trace.diag = config.diag;
  trace.horizon = config.horizon;

  const bool per_step = config.diag == DiagLevel::per_step;
  const bool with_diag = config.diag != DiagLevel::off;
  std::vector<long long> schedule;
  if (!per_step) schedule = checkpoint_schedule(config.horizon, config.checkpoint_ratio);
  trace.rows.reserve(per_step ? static_cast<std::size_t>(config.horizon)
                              : schedule.size());

  DiagnosticsState diag(theta);
  std::vector<double> probs(k), post_probs(k), theta_prev;
  if (with_diag) theta_prev.resize(k);
  std::vector<long long> counts(k, 0);
  double cum_subopt = 0.0, cum_explore = 0.0;
  std::size_t next_checkpoint = 0;

  for (long long t = 1; t <= config.horizon; ++t) {
    softmax_into(theta, probs);
    double played_subopt = 0.0;
    for (int a = 0; a < k; ++a) played_subopt += probs[a] * (best_mean - env.means[a]);
    cum_subopt += played_subopt;
    cum_explore += 1.0 - probs[env.optimal_arm];

    const int action = sample_action(probs, rng);
    const double reward = sample_reward_value(env, action, rng);
    counts[action] += 1;

    if (with_diag) theta_prev = theta;
    apply_step_direct(theta, probs, eta, action, reward);
    for (int a = 0; a < k; ++a)
      if (!std::isfinite(theta[a])) throw PoisonedStateError(seed, eta, t);
    if (with_diag) diag.record_step(env, probs, eta, action, theta_prev, theta);

    const bool record =
        per_step ||
        (next_checkpoint < schedule.size() && schedule[next_checkpoint] == t);
    if (!record) continue;
    if (!per_step) ++next_checkpoint;

    CheckpointRow row;
    row.t = t;
    softmax_into(theta, post_probs);
    row.subopt = suboptimality(env, post_probs);
    row.underflow = !(row.subopt > 0.0);
    row.log_subopt = row.underflow ? kLogUnderflowFloor : std::log(row.subopt);
    row.pi_star = post_probs[env.optimal_arm];
    row.counts = counts;
    row.theta = theta;
    row.cum_subopt = cum_subopt;
    row.cum_explore = cum_explore;
    if (with_diag) {
      row.cum_noise = diag.cum_noise;
      row.cum_progress = diag.cum_progress;
      row.variance_proxy = diag.variance_proxy;
    }
    trace.rows.push_back(std::move(row));
  }

  softmax_into(theta, probs);
  trace.final_subopt = suboptimality(env, probs);
  trace.final_counts = counts;
  trace.final_theta = theta;
  return trace;
}

SweepResult run_sweep(const ExperimentConfig& config, int parallelism) {
  validate_config(config);
  if (parallelism < 1)
    throw std::invalid_argument("run_sweep: parallelism must be >= 1");
  if (config.etas.empty() || config.seeds.empty())
    throw std::invalid_argument("run_sweep: need at least one eta and one seed");

  std::vector<double> etas = config.etas;
  std::sort(etas.begin(), etas.end());
  std::vector<std::uint64_t> seeds = config.seeds;
  std::sort(seeds.begin(), seeds.end());

  struct Job {
    double eta;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  jobs.reserve(etas.size() * seeds.size());
  for (double eta : etas)
    for (std::uint64_t seed : seeds) jobs.push_back({eta, seed});

  std::vector<std::optional<RunTrace>> slots(jobs.size());
  std::vector<std::optional<SweepFailure>> failures(jobs.size());
  std::atomic<std::size_t> cursor{0};

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        slots[i] = run_single(config, jobs[i].seed, jobs[i].eta);
      } catch (const PoisonedStateError& err) {
        failures[i] = SweepFailure{jobs[i].seed, jobs[i].eta, err.step, err.what()};
      }
    }
  };

  const int threads =
      std::min<std::size_t>(static_cast<std::size_t>(parallelism), jobs.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  SweepResult result;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (slots[i]) result.traces.push_back(std::move(*slots[i]));
    if (failures[i]) result.failures.push_back(std::move(*failures[i]));
  }
  return result;
}

ExperimentConfig default_four_arm_config() {
  ExperimentConfig config;
  config.means = {0.2, 0.05, -0.1, -0.4};
  config.kind = RewardKind::gaussian;
  config.sigma = 0.1;
  config.r_max = 1.0;
  config.etas = {1.0, 10.0, 100.0, 1000.0};
  config.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  config.horizon = 1000000;
  return config;
}

ExperimentConfig two_action_config() {
  ExperimentConfig config = default_four_arm_config();
  config.means = {-0.05, -0.25};
  return config;
}

}  // namespace gradbandit
