#pragma once

#include <vector>

#include "gradbandit/trace.hpp"

namespace gradbandit {

// The recurrence y_{n+1} = y_n + b * exp(-c * y_n) with b >= 1, c > 0. When
// y0 >= max(b, ln(b c) / c), the iterates are capped by the closed form
// log_bound below; and any nonnegative sequence x that starts no higher and
// obeys the same inequality stepwise stays below the iterates.
struct RecurrenceSpec {
  double b = 1.0;
  double c = 1.0;
  double y0 = 1.0;
  long long n_max = 0;
};

// Iterates y_0..y_{n_max}; requires b >= 1, c > 0 (no start condition).
std::vector<double> iterate_recurrence(const RecurrenceSpec& spec);

// (1/c) * ln(b c n + exp(c y0)) + pi^2 / (12 c). Requires the start
// condition y0 >= max(b, ln(b c) / c).
double log_bound(const RecurrenceSpec& spec, long long n);

// True iff x_n <= y_n for all n covered by x. Preconditions checked:
// x_0 <= y0, x nonnegative, and x_{n+1} <= x_n + b * exp(-c * x_n) up to a
// small floating-point slack.
bool dominated_sequence_check(const RecurrenceSpec& spec,
                              const std::vector<double>& x);

struct RateCheckResult {
  bool holds = false;          // candidate constant works at every checkpoint
  double c_fit = 0.0;          // smallest constant that works for this trace
  long long tau = 0;
  int checkpoints_checked = 0;
};

// Checks (sum_{s=tau}^{T} gap_s) / T <= c * ln(T) / (T - tau) at every
// recorded checkpoint T > tau, using the exact cumulative gap carried by the
// trace. The term at s = tau uses the policy state recorded at the tau
// checkpoint. c_fit is the max over checkpoints of the left side divided by
// ln(T) / (T - tau).
RateCheckResult average_suboptimality_bound_check(const RunTrace& trace,
                                                  long long tau,
                                                  double c_candidate);

// First checkpoint time with pi_star >= 1/2, or -1 if the trace never gets
// there.
long long default_rate_tau(const RunTrace& trace);

// Least-squares slope of log_subopt against ln t, pooling the checkpoint
// rows with t in [t_lo, t_hi] from all supplied traces. Underflowed rows are
// excluded (their log values are floor markers, not measurements). Needs at
// least two distinct checkpoint times in range.
double log_log_slope(const std::vector<RunTrace>& traces, long long t_lo,
                     long long t_hi);

}  // namespace gradbandit
