#include <doctest.h>

#include <stdexcept>

#include "gradbandit/algorithm.hpp"
#include "gradbandit/verify.hpp"

using namespace gradbandit;

TEST_CASE("every built-in verification suite passes") {
  for (const SuiteResult& result : run_all_verify_suites()) {
    INFO(result.name << ": " << result.detail);
    CHECK(result.pass);
  }
}

TEST_CASE("suites are addressable by name") {
  CHECK(verify_suite_names().size() == 8);
  SuiteResult r = run_verify_suite("softmax");
  CHECK(r.name == "softmax");
  CHECK(r.pass);
  CHECK_THROWS_AS(run_verify_suite("nonsense"), std::invalid_argument);
}

namespace {

// Deliberately broken update: the reward enters with the wrong sign, which
// preserves the logit sum but reverses every movement.
Parameters sign_flipped_step(const Parameters& params, const UpdateInputs& inputs,
                             const PolicyDist& policy) {
  return step_direct(params, {inputs.eta, inputs.action, -inputs.reward}, policy);
}

// Subtler break: the update is scaled down, so directions agree but
// magnitudes are biased.
Parameters damped_step(const Parameters& params, const UpdateInputs& inputs,
                       const PolicyDist& policy) {
  return step_direct(params, {0.5 * inputs.eta, inputs.action, inputs.reward},
                     policy);
}

}  // namespace

TEST_CASE("a sign-flipped update is caught by both algebraic suites") {
  CHECK_FALSE(verify_equivalence(&sign_flipped_step).pass);
  CHECK_FALSE(verify_unbiasedness(&sign_flipped_step).pass);
}

TEST_CASE("a damped update still fails the agreement checks") {
  CHECK_FALSE(verify_equivalence(&damped_step).pass);
  CHECK_FALSE(verify_unbiasedness(&damped_step).pass);
}

TEST_CASE("failure details carry the offending values") {
  SuiteResult r = verify_equivalence(&sign_flipped_step);
  CHECK_FALSE(r.detail.empty());
}
