#include "gradbandit/rate_bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace gradbandit {

namespace {

constexpr double kPiSquaredOver12 = 0.82246703342411322;

void validate_recurrence(const RecurrenceSpec& spec) {
  if (!(spec.b >= 1.0) || !std::isfinite(spec.b))
    throw std::invalid_argument("recurrence: b must be finite and >= 1");
  if (!(spec.c > 0.0) || !std::isfinite(spec.c))
    throw std::invalid_argument("recurrence: c must be finite and positive");
  if (spec.n_max < 0)
    throw std::invalid_argument("recurrence: n_max must be nonnegative");
  if (!std::isfinite(spec.y0))
    throw std::invalid_argument("recurrence: y0 must be finite");
}

void validate_start_condition(const RecurrenceSpec& spec) {
  const double floor = std::max(spec.b, std::log(spec.b * spec.c) / spec.c);
  if (spec.y0 < floor - 1e-12 * (1.0 + std::fabs(floor)))
    throw std::invalid_argument("recurrence: y0 below max(b, ln(b c)/c)");
}

}  // namespace

std::vector<double> iterate_recurrence(const RecurrenceSpec& spec) {
  validate_recurrence(spec);
  std::vector<double> y;
  y.reserve(static_cast<std::size_t>(spec.n_max) + 1);
  y.push_back(spec.y0);
  double current = spec.y0;
  for (long long n = 0; n < spec.n_max; ++n) {
    current += spec.b * std::exp(-spec.c * current);
    y.push_back(current);
  }
  return y;
}

double log_bound(const RecurrenceSpec& spec, long long n) {
  validate_recurrence(spec);
  validate_start_condition(spec);
  if (n < 0) throw std::invalid_argument("log_bound: n must be nonnegative");
  // The b factor must ride inside the log: the comparison ODE for the
  // iterates is y' = b exp(-c y), whose solution grows like ln(b c t). With
  // b dropped the "bound" is provably exceeded for b >= e^(pi^2/12), e.g.
  // b=5, c=0.1 crosses at n=7. At b=1 this is the familiar textbook form.
  return std::log(spec.b * spec.c * static_cast<double>(n) +
                  std::exp(spec.c * spec.y0)) /
             spec.c +
         kPiSquaredOver12 / spec.c;
}

bool dominated_sequence_check(const RecurrenceSpec& spec,
                              const std::vector<double>& x) {
  validate_recurrence(spec);
  validate_start_condition(spec);
  if (x.empty()) throw std::invalid_argument("dominated_sequence_check: empty x");
  if (!(x[0] <= spec.y0))
    throw std::invalid_argument("dominated_sequence_check: x starts above y0");
  for (std::size_t n = 0; n < x.size(); ++n) {
    if (!(x[n] >= 0.0))
      throw std::invalid_argument("dominated_sequence_check: x must be nonnegative");
    if (n + 1 < x.size()) {
      const double allowed = x[n] + spec.b * std::exp(-spec.c * x[n]);
      if (x[n + 1] > allowed + 1e-12 * (1.0 + std::fabs(allowed)))
        throw std::invalid_argument(
            "dominated_sequence_check: x violates the recurrence inequality");
    }
  }
  double y = spec.y0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    if (x[n] > y) return false;
    y += spec.b * std::exp(-spec.c * y);
  }
  return true;
}

RateCheckResult average_suboptimality_bound_check(const RunTrace& trace,
                                                  long long tau,
                                                  double c_candidate) {
  if (trace.rows.empty())
    throw std::invalid_argument("rate check: trace has no rows");
  if (tau < 1 || tau > trace.horizon)
    throw std::invalid_argument("rate check: tau outside the trace");
  if (!(c_candidate >= 0.0))
    throw std::invalid_argument("rate check: negative candidate constant");

  // Anchor at the first recorded row with t >= tau.
  std::size_t anchor = trace.rows.size();
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    if (trace.rows[i].t >= tau) {
      anchor = i;
      break;
    }
  }
  if (anchor == trace.rows.size())
    throw std::invalid_argument("rate check: no checkpoint at or after tau");

  const CheckpointRow& at_tau = trace.rows[anchor];
  RateCheckResult result;
  result.tau = at_tau.t;
  result.holds = true;
  for (std::size_t i = anchor + 1; i < trace.rows.size(); ++i) {
    const CheckpointRow& row = trace.rows[i];
    const double big_t = static_cast<double>(row.t);
    const double gap_sum = row.cum_subopt - at_tau.cum_subopt + at_tau.subopt;
    const double lhs = gap_sum / big_t;
    const double rhs_unit =
        std::log(big_t) / static_cast<double>(row.t - at_tau.t);
    const double needed = lhs / rhs_unit;
    if (needed > result.c_fit) result.c_fit = needed;
    if (lhs > c_candidate * rhs_unit * (1.0 + 1e-12))
      result.holds = false;
    ++result.checkpoints_checked;
  }
  return result;
}

long long default_rate_tau(const RunTrace& trace) {
  for (const CheckpointRow& row : trace.rows)
    if (row.pi_star >= 0.5) return row.t;
  return -1;
}

double log_log_slope(const std::vector<RunTrace>& traces, long long t_lo,
                     long long t_hi) {
  if (t_lo < 1 || t_hi < t_lo)
    throw std::invalid_argument("log_log_slope: bad time window");
  std::vector<double> xs, ys;
  for (const RunTrace& trace : traces) {
    for (const CheckpointRow& row : trace.rows) {
      if (row.t < t_lo || row.t > t_hi || row.underflow) continue;
      xs.push_back(std::log(static_cast<double>(row.t)));
      ys.push_back(row.log_subopt);
    }
  }
  if (xs.size() < 2)
    throw std::invalid_argument("log_log_slope: fewer than two usable rows");
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= static_cast<double>(xs.size());
  mean_y /= static_cast<double>(xs.size());
  double cov = 0.0, var = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cov += (xs[i] - mean_x) * (ys[i] - mean_y);
    var += (xs[i] - mean_x) * (xs[i] - mean_x);
  }
  if (var == 0.0)
    throw std::invalid_argument("log_log_slope: no spread in checkpoint times");
  return cov / var;
}

}  // namespace gradbandit
