#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs the binary through the shell, capturing exit code and both streams.
CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / "gradbandit_cli_streams";
  fs::create_directories(dir);
  const fs::path out_path = dir / ("out" + std::to_string(counter));
  const fs::path err_path = dir / ("err" + std::to_string(counter));
  ++counter;

  const std::string cmd = env_prefix + std::string(GRADBANDIT_BIN) + " " + args +
                          " >" + out_path.string() + " 2>" + err_path.string();
  const int status = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

fs::path scratch_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("gradbandit_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

long count_lines(const std::string& text) {
  long n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("").exit_code == 2);                        // no subcommand
  CHECK(run_cli("frobnicate").exit_code == 2);              // unknown subcommand
  CHECK(run_cli("run --no-such-flag").exit_code == 2);      // unknown flag
  CHECK(run_cli("run").exit_code == 2);                     // no config source
  CHECK(run_cli("run --paper-default --two-action --T 10").exit_code == 2);
  CHECK(run_cli("run --two-action --seed 1 --seeds 3 --T 10").exit_code == 2);
  CHECK(run_cli("run --config /no/such/config.json").exit_code == 2);
  CHECK(run_cli("verify --suite nonsense").exit_code == 2);
  CHECK(run_cli("emit-plots /no/such/sweep.csv").exit_code == 2);
}

TEST_CASE("single verification suites run clean") {
  CliResult r = run_cli("verify --suite softmax");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("[PASS] softmax") != std::string::npos);
  CHECK(r.out.find("verification passed") != std::string::npos);
}

TEST_CASE("a sweep writes the CSV and summary with the pinned shapes") {
  fs::path dir = scratch_dir("sweep");
  CliResult r = run_cli("run --two-action --eta 1,10 --seeds 2 --T 100000 --out " +
                        dir.string());
  CHECK(r.exit_code == 0);
  REQUIRE(fs::exists(dir / "sweep.csv"));
  REQUIRE(fs::exists(dir / "summary.json"));

  // 112 checkpoint rows per run at T = 1e5, four runs, one header.
  const std::string csv = slurp(dir / "sweep.csv");
  CHECK(count_lines(csv) == 1 + 4 * 112);
  CHECK(csv.rfind("run_seed,eta,t,subopt,log_subopt,underflow,pi_star,", 0) == 0);

  json summary = json::parse(slurp(dir / "summary.json"));
  CHECK(summary["runs"].size() == 4);
  CHECK(summary["failures"].empty());
  for (const auto& run : summary["runs"]) {
    CHECK(run["horizon"].get<long long>() == 100000);
    CHECK(run["final_counts"].size() == 2);
  }
  fs::remove_all(dir);
}

TEST_CASE("an explicit seed list selects exactly those runs") {
  fs::path dir = scratch_dir("seed7");
  CHECK(run_cli("run --two-action --eta 1 --seed 7 --T 1000 --out " + dir.string())
            .exit_code == 0);
  json summary = json::parse(slurp(dir / "summary.json"));
  REQUIRE(summary["runs"].size() == 1);
  CHECK(summary["runs"][0]["seed"].get<std::uint64_t>() == 7);
  CHECK(count_lines(slurp(dir / "sweep.csv")) == 1 + 64);
  fs::remove_all(dir);
}

TEST_CASE("a zero-length horizon still produces outputs") {
  fs::path dir = scratch_dir("zero");
  CliResult r = run_cli("run --two-action --eta 1 --seeds 2 --T 0 --out " +
                        dir.string());
  CHECK(r.exit_code == 0);
  CHECK(count_lines(slurp(dir / "sweep.csv")) == 1);  // header only
  json summary = json::parse(slurp(dir / "summary.json"));
  REQUIRE(summary["runs"].size() == 2);
  // With no steps the policy stays uniform over means {-0.05, -0.25}.
  CHECK(summary["runs"][0]["final_subopt"].get<double>() ==
        doctest::Approx(0.1).epsilon(1e-14));
  fs::remove_all(dir);
}

TEST_CASE("identical invocations produce identical bytes") {
  fs::path a = scratch_dir("det_a");
  fs::path b = scratch_dir("det_b");
  const std::string args = "run --two-action --eta 1 --seeds 3 --T 2000 --out ";
  CHECK(run_cli(args + a.string()).exit_code == 0);
  CHECK(run_cli(args + b.string()).exit_code == 0);
  CHECK(slurp(a / "sweep.csv") == slurp(b / "sweep.csv"));
  CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));

  // --parallel shards the work without changing the artifact.
  fs::path c = scratch_dir("det_c");
  CHECK(run_cli(args + c.string() + " --parallel 2").exit_code == 0);
  CHECK(slurp(a / "sweep.csv") == slurp(c / "sweep.csv"));
  fs::remove_all(a);
  fs::remove_all(b);
  fs::remove_all(c);
}

TEST_CASE("the seed base environment variable reroutes every stream") {
  fs::path a = scratch_dir("base_a");
  fs::path b = scratch_dir("base_b");
  fs::path c = scratch_dir("base_c");
  const std::string args = "run --two-action --eta 1 --seeds 2 --T 500 --out ";
  CHECK(run_cli(args + a.string()).exit_code == 0);
  CHECK(run_cli(args + b.string(), "GRADBANDIT_SEED_BASE=123 ").exit_code == 0);
  CHECK(run_cli(args + c.string(), "GRADBANDIT_SEED_BASE=123 ").exit_code == 0);
  CHECK(slurp(a / "sweep.csv") != slurp(b / "sweep.csv"));
  CHECK(slurp(b / "sweep.csv") == slurp(c / "sweep.csv"));
  CHECK(run_cli("run --two-action --T 10", "GRADBANDIT_SEED_BASE=tuesday ")
            .exit_code == 2);
  fs::remove_all(a);
  fs::remove_all(b);
  fs::remove_all(c);
}

TEST_CASE("a poisoned sweep reports failures and exits 3") {
  fs::path dir = scratch_dir("poison");
  const fs::path cfg = dir / "config.json";
  std::ofstream(cfg) << R"({
    "means": [0.2, 0.05, -0.1, -0.4],
    "dist_kind": "gaussian",
    "sigma": 1e300,
    "r_max": 1e300,
    "etas": [1e300],
    "seeds": [1],
    "horizon": 100
  })";
  CliResult r = run_cli("run --config " + cfg.string() + " --out " + dir.string());
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("poisoned state") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "sweep.csv"));  // no healthy runs to tabulate
  json summary = json::parse(slurp(dir / "summary.json"));
  CHECK(summary["runs"].empty());
  REQUIRE(summary["failures"].size() == 1);
  CHECK(summary["failures"][0]["step"].get<long long>() >= 1);
  fs::remove_all(dir);
}

TEST_CASE("rate-check fits constants and enforces a candidate") {
  // Fit-only: reports tau and the fitted constant for each run.
  CliResult fit = run_cli("rate-check --two-action --eta 1 --seeds 2 --T 2000");
  CHECK(fit.exit_code == 0);
  CHECK(fit.out.find("fitted constant") != std::string::npos);
  CHECK(fit.out.find("mean final log sub-optimality") != std::string::npos);

  // A generous candidate holds; an absurdly small one is rejected.
  CHECK(run_cli("rate-check --two-action --eta 1 --seeds 2 --T 2000 --c 1e6")
            .exit_code == 0);
  CliResult tiny =
      run_cli("rate-check --two-action --eta 1 --seeds 2 --T 2000 --c 1e-12");
  CHECK(tiny.exit_code == 1);
  CHECK(tiny.err.find("exceed the candidate bound") != std::string::npos);
}

TEST_CASE("rate-check refuses a sweep that never commits to the optimal arm") {
  fs::path dir = scratch_dir("rate_stuck");
  const fs::path cfg = dir / "config.json";
  // Start buried twenty logits below the suboptimal arm; a hundred tiny
  // steps cannot dig out, so pi_star stays near 2e-9 at every checkpoint.
  std::ofstream(cfg) << R"({
    "means": [-0.05, -0.25],
    "dist_kind": "gaussian",
    "sigma": 0.1,
    "r_max": 1,
    "etas": [0.0001],
    "seeds": [1, 2],
    "horizon": 100,
    "theta_init": [-20.0, 0.0]
  })";
  CliResult r = run_cli("rate-check --config " + cfg.string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("no run reached pi_star >= 1/2") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("emit-plots writes one scatter file per eta") {
  fs::path dir = scratch_dir("plots");
  CHECK(run_cli("run --two-action --eta 1,10 --seeds 2 --T 1000 --out " +
                dir.string())
            .exit_code == 0);
  CliResult r = run_cli("emit-plots " + (dir / "sweep.csv").string() + " --out " +
                        (dir / "plots").string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("2 plot file(s)") != std::string::npos);
  REQUIRE(fs::exists(dir / "plots" / "plot_eta_1.csv"));
  REQUIRE(fs::exists(dir / "plots" / "plot_eta_10.csv"));
  const std::string body = slurp(dir / "plots" / "plot_eta_1.csv");
  CHECK(body.rfind("log_t,log_subopt,seed,underflow\n", 0) == 0);
  CHECK(count_lines(body) == 1 + 2 * 64);  // two seeds, 64 checkpoints at T=1000
  fs::remove_all(dir);
}
