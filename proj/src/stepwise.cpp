#include "fdrlab/stepwise.hpp"

#include <algorithm>

#include "fdrlab/errors.hpp"

namespace fdrlab {

void ProcedureConfig::validate() const {
  if (!(alpha > 0.0) || !(alpha < lambda) || !(lambda < 1.0)) {
    throw ConfigError("procedure: need 0 < alpha < lambda < 1");
  }
  if (tie_variant == TieVariant::kModified &&
      direction != Direction::kStepDown) {
    throw ConfigError("procedure: the modified tie variant applies to step-down only");
  }
  estimator.validate(lambda);
}

std::vector<double> critical_values(int n, double alpha, double lambda,
                                    double n0_hat) {
  if (n < 1) throw DomainError("critical_values: n must be >= 1");
  if (!(alpha > 0.0) || !(alpha < lambda) || !(lambda < 1.0)) {
    throw DomainError("critical_values: need 0 < alpha < lambda < 1");
  }
  if (!(n0_hat > 0.0)) {
    throw DomainError("critical_values: n0_hat must be positive");
  }
  std::vector<double> crit(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    crit[i - 1] = std::min(i * alpha / n0_hat, lambda);
  }
  return crit;
}

namespace {

void check_ladder(const OrderedSample& ordered, std::span<const double> crit) {
  if (crit.size() != static_cast<std::size_t>(ordered.n())) {
    throw ConfigError("stepwise: critical values and sample length mismatch");
  }
  for (std::size_t i = 1; i < crit.size(); ++i) {
    if (crit[i] < crit[i - 1]) {
      throw ConfigError("stepwise: critical values must be nondecreasing");
    }
  }
}

// Rejection set from the realized threshold: every p-value at or below it.
TestResult finalize(const OrderedSample& ordered, int r, double threshold) {
  TestResult res;
  res.r = r;
  res.threshold = r > 0 ? threshold : 0.0;
  if (r > 0) {
    const auto end = std::upper_bound(ordered.sorted_p.begin(),
                                      ordered.sorted_p.end(), res.threshold);
    const auto count = end - ordered.sorted_p.begin();
    res.rejected.assign(ordered.perm.begin(), ordered.perm.begin() + count);
    res.r = static_cast<int>(count);
  }
  return res;
}

}  // namespace

TestResult step_up(const OrderedSample& ordered, std::span<const double> crit) {
  check_ladder(ordered, crit);
  int r = 0;
  for (int i = ordered.n(); i >= 1; --i) {
    if (ordered.sorted_p[i - 1] <= crit[i - 1]) {
      r = i;
      break;
    }
  }
  return finalize(ordered, r, r > 0 ? crit[r - 1] : 0.0);
}

TestResult step_down(const OrderedSample& ordered, std::span<const double> crit,
                     TieVariant tie_variant) {
  check_ladder(ordered, crit);
  const int n = ordered.n();

  std::vector<double> effective;
  std::span<const double> ladder = crit;
  if (tie_variant == TieVariant::kModified) {
    // crit[R(p_{i:n})] with inclusive tie counting on the same sample.
    effective.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const auto it = std::upper_bound(ordered.sorted_p.begin(),
                                       ordered.sorted_p.end(),
                                       ordered.sorted_p[i]);
      const auto rank = it - ordered.sorted_p.begin();
      effective[i] = crit[rank - 1];
    }
    ladder = effective;
  }

  int r = 0;
  while (r < n && ordered.sorted_p[r] <= ladder[r]) ++r;
  return finalize(ordered, r, r > 0 ? ladder[r - 1] : 0.0);
}

TestResult run_procedure(const BiSample& sample, const ProcedureConfig& cfg) {
  cfg.validate();
  if (!sample.h.empty() && sample.h.size() != sample.p.size()) {
    throw ConfigError("run_procedure: truth indicators must match the p-values");
  }

  const Ecdf e(order(sample.p));
  const double n0_hat = evaluate(cfg.estimator, e, cfg.lambda);
  const auto crit = critical_values(sample.n(), cfg.alpha, cfg.lambda, n0_hat);

  TestResult res = cfg.direction == Direction::kStepUp
                       ? step_up(e.ordered(), crit)
                       : step_down(e.ordered(), crit, cfg.tie_variant);
  res.estimate = n0_hat;

  if (!sample.h.empty()) {
    int v = 0;
    for (const int idx : res.rejected) v += (sample.h[idx] == 0);
    res.v = v;
    res.fdp_value = static_cast<double>(v) / std::max(res.r, 1);
  }
  return res;
}

}  // namespace fdrlab
