#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gradbandit/experiment.hpp"
#include "gradbandit/io.hpp"
#include "gradbandit/rate_bounds.hpp"
#include "gradbandit/verify.hpp"

namespace gb = gradbandit;

namespace {

// Exit codes: 0 success, 1 verification failure, 2 usage/config/IO error,
// 3 poisoned numeric state.
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPoisoned = 3;

struct ConfigOptions {
  std::string config_path;
  bool four_arm_default = false;
  bool two_action = false;
  std::vector<double> etas;
  std::vector<std::uint64_t> seed_list;
  long long seed_count = -1;
  long long horizon = -1;
  std::string diag;
  std::string out_dir = ".";
  int parallel = 1;
};

void add_config_options(CLI::App* cmd, ConfigOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON experiment config file");
  cmd->add_flag("--paper-default", opts.four_arm_default,
                "four-arm reference benchmark (gaussian, etas 1..1000)");
  cmd->add_flag("--two-action", opts.two_action, "two-arm reference benchmark");
  cmd->add_option("--eta", opts.etas, "step size(s), comma separated")
      ->delimiter(',');
  cmd->add_option("--seed", opts.seed_list, "explicit run seed(s)")->delimiter(',');
  cmd->add_option("--seeds", opts.seed_count, "use seeds 1..N")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--T", opts.horizon, "horizon (iterations per run)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--diag", opts.diag, "diagnostics level")
      ->check(CLI::IsMember({"off", "ckpt", "step"}));
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--parallel", opts.parallel, "worker threads")
      ->check(CLI::PositiveNumber);
}

gb::ExperimentConfig build_config(const ConfigOptions& opts) {
  const int sources = static_cast<int>(!opts.config_path.empty()) +
                      static_cast<int>(opts.four_arm_default) +
                      static_cast<int>(opts.two_action);
  if (sources == 0)
    throw std::runtime_error(
        "no configuration: pass --config PATH, --paper-default, or --two-action");
  if (sources > 1)
    throw std::runtime_error(
        "pass exactly one of --config, --paper-default, --two-action");

  gb::ExperimentConfig config;
  if (!opts.config_path.empty())
    config = gb::config_from_json_file(opts.config_path);
  else if (opts.four_arm_default)
    config = gb::default_four_arm_config();
  else
    config = gb::two_action_config();

  if (const char* base = std::getenv("GRADBANDIT_SEED_BASE")) {
    try {
      config.seed_base = std::stoull(base);
    } catch (const std::exception&) {
      throw std::runtime_error(std::string("GRADBANDIT_SEED_BASE is not a valid "
                                           "unsigned integer: ") + base);
    }
  }

  if (!opts.etas.empty()) config.etas = opts.etas;
  if (!opts.seed_list.empty() && opts.seed_count >= 0)
    throw std::runtime_error("pass either --seed or --seeds, not both");
  if (!opts.seed_list.empty()) config.seeds = opts.seed_list;
  if (opts.seed_count >= 0) {
    config.seeds.clear();
    for (long long i = 1; i <= opts.seed_count; ++i)
      config.seeds.push_back(static_cast<std::uint64_t>(i));
  }
  if (opts.horizon >= 0) config.horizon = opts.horizon;
  if (!opts.diag.empty()) config.diag = gb::parse_diag_level(opts.diag);

  gb::validate_config(config);
  if (config.etas.empty())
    throw std::runtime_error("need at least one step size (--eta or config etas)");
  if (config.seeds.empty())
    throw std::runtime_error("need at least one seed (--seed, --seeds, or config)");
  return config;
}

int cmd_sweep(const ConfigOptions& opts) {
  const gb::ExperimentConfig config = build_config(opts);
  const gb::SweepResult result = gb::run_sweep(config, opts.parallel);

  std::filesystem::create_directories(opts.out_dir);
  const std::filesystem::path dir(opts.out_dir);
  if (!result.traces.empty())
    gb::write_sweep_csv((dir / "sweep.csv").string(), result.traces);
  gb::write_summary((dir / "summary.json").string(), result);

  std::size_t rows = 0;
  for (const gb::RunTrace& trace : result.traces) rows += trace.rows.size();
  std::cout << result.traces.size() << " run(s) completed, " << rows
            << " checkpoint rows";
  if (!result.traces.empty())
    std::cout << " -> " << (dir / "sweep.csv").string();
  std::cout << "\nsummary -> " << (dir / "summary.json").string() << "\n";

  if (!result.failures.empty()) {
    for (const gb::SweepFailure& failure : result.failures)
      std::cerr << "poisoned state: seed " << failure.seed << ", eta "
                << failure.eta << ", first bad step " << failure.step << "\n";
    return kExitPoisoned;
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite) {
  std::vector<gb::SuiteResult> results;
  if (suite.empty()) {
    results = gb::run_all_verify_suites();
  } else {
    results.push_back(gb::run_verify_suite(suite));
  }
  bool all_pass = true;
  for (const gb::SuiteResult& result : results) {
    std::cout << (result.pass ? "[PASS] " : "[FAIL] ") << result.name;
    if (!result.detail.empty()) std::cout << ": " << result.detail;
    std::cout << "\n";
    all_pass = all_pass && result.pass;
  }
  std::cout << (all_pass ? "verification passed" : "verification FAILED") << "\n";
  return all_pass ? kExitOk : kExitVerifyFailure;
}

int cmd_rate_check(const ConfigOptions& opts, double c_candidate) {
  const gb::ExperimentConfig config = build_config(opts);
  const gb::SweepResult result = gb::run_sweep(config, opts.parallel);

  int checked = 0, failed = 0;
  for (const gb::RunTrace& trace : result.traces) {
    std::cout << "eta " << trace.eta << " seed " << trace.seed << ": ";
    const long long tau = gb::default_rate_tau(trace);
    if (tau < 0) {
      std::cout << "pi_star never reached 1/2; skipped\n";
      continue;
    }
    const double candidate = c_candidate;
    const gb::RateCheckResult rate = gb::average_suboptimality_bound_check(
        trace, tau, candidate > 0.0 ? candidate : 1e300);
    ++checked;
    const bool ok = candidate > 0.0 ? rate.holds : true;
    if (!ok) ++failed;
    std::cout << "tau " << rate.tau << ", fitted constant " << rate.c_fit << ", "
              << rate.checkpoints_checked << " checkpoints"
              << (candidate > 0.0 ? (ok ? ", bound holds" : ", bound FAILS") : "")
              << "\n";
  }
  for (const gb::SweepFailure& failure : result.failures)
    std::cout << "eta " << failure.eta << " seed " << failure.seed
              << ": poisoned at step " << failure.step << "; skipped\n";

  // Step-size dependence of the terminal error, recorded for inspection.
  for (double eta : config.etas) {
    double total = 0.0;
    int n = 0;
    for (const gb::RunTrace& trace : result.traces) {
      if (trace.eta != eta || trace.rows.empty()) continue;
      total += trace.rows.back().log_subopt;
      ++n;
    }
    if (n > 0)
      std::cout << "eta " << eta << ": mean final log sub-optimality "
                << total / n << " over " << n << " run(s)\n";
  }

  if (checked == 0) {
    std::cerr << "rate-check: no run reached pi_star >= 1/2\n";
    return kExitVerifyFailure;
  }
  if (failed > 0) {
    std::cerr << "rate-check: " << failed << " run(s) exceed the candidate bound\n";
    return kExitVerifyFailure;
  }
  return kExitOk;
}

int cmd_emit_plots(const std::string& csv_path, const std::string& out_dir) {
  const std::vector<std::string> names = gb::emit_plot_files(csv_path, out_dir);
  for (const std::string& name : names)
    std::cout << (std::filesystem::path(out_dir) / name).string() << "\n";
  std::cout << names.size() << " plot file(s)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic gradient bandit simulator and diagnostics"};
  app.require_subcommand(1);

  ConfigOptions run_opts;
  CLI::App* run_cmd = app.add_subcommand("run", "simulate and write trace CSV");
  add_config_options(run_cmd, run_opts);

  ConfigOptions sweep_opts;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "simulate an eta x seed grid and write trace CSV");
  add_config_options(sweep_cmd, sweep_opts);

  std::string suite;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the built-in verification suites");
  verify_cmd->add_option("--suite", suite, "run one suite by name");

  ConfigOptions rate_opts;
  double c_candidate = 0.0;
  CLI::App* rate_cmd = app.add_subcommand(
      "rate-check", "fit and test the average sub-optimality bound");
  add_config_options(rate_cmd, rate_opts);
  rate_cmd->add_option("--c", c_candidate,
                       "candidate constant for the bound (default: fit only)");

  std::string plots_csv;
  std::string plots_out = "plots";
  CLI::App* plots_cmd =
      app.add_subcommand("emit-plots", "write per-eta log-log scatter files");
  plots_cmd->add_option("csv", plots_csv, "sweep CSV to read")->required();
  plots_cmd->add_option("--out", plots_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_sweep(run_opts);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts);
    if (verify_cmd->parsed()) return cmd_verify(suite);
    if (rate_cmd->parsed()) return cmd_rate_check(rate_opts, c_candidate);
    if (plots_cmd->parsed()) return cmd_emit_plots(plots_csv, plots_out);
  } catch (const gb::PoisonedStateError& err) {
    std::cerr << err.what() << "\n";
    return kExitPoisoned;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
