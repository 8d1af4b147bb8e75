#pragma once

#include <string>
#include <vector>

#include "gradbandit/algorithm.hpp"
#include "gradbandit/policy.hpp"

namespace gradbandit {

// Built-in verification: each suite re-derives one slice of the algorithm's
// claimed identities numerically and reports pass/fail with the offending
// values. The suites are pure functions of fixed internal seeds, so a pass
// is reproducible and a failure is replayable.
struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// The update rule under test is injectable so a deliberately broken variant
// (e.g. a sign flip) can be shown to fail; production callers use the
// default.
using DirectStepFn = Parameters (*)(const Parameters&, const UpdateInputs&,
                                    const PolicyDist&);

SuiteResult verify_softmax();
SuiteResult verify_environment();
SuiteResult verify_equivalence(DirectStepFn step = &step_direct);
SuiteResult verify_unbiasedness(DirectStepFn step = &step_direct);
SuiteResult verify_decomposition();
SuiteResult verify_recurrence();
SuiteResult verify_freedman();
SuiteResult verify_experiment();

const std::vector<std::string>& verify_suite_names();
SuiteResult run_verify_suite(const std::string& name);
std::vector<SuiteResult> run_all_verify_suites();

}  // namespace gradbandit
