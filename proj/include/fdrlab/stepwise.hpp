#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fdrlab/bi_model.hpp"
#include "fdrlab/ecdf.hpp"
#include "fdrlab/estimators.hpp"

namespace fdrlab {

enum class Direction { kStepUp, kStepDown };

// Tie handling for step-down tests. kModified compares a tied block against
// the largest applicable critical value instead of the smallest.
enum class TieVariant { kStandard, kModified };

struct ProcedureConfig {
  double alpha = 0.05;
  double lambda = 0.5;
  Direction direction = Direction::kStepUp;
  TieVariant tie_variant = TieVariant::kStandard;
  EstimatorSpec estimator;  // bh sentinel means n0_hat == n

  void validate() const;
};

struct TestResult {
  int r = 0;                      // number of rejections
  std::vector<int> rejected;      // original indices with p <= threshold
  double threshold = 0.0;         // realized cutoff; 0 when nothing rejected
  double estimate = 0.0;          // the n0_hat value used
  std::optional<int> v;           // false rejections, when truth is known
  std::optional<double> fdp_value;  // v / max(r, 1)
};

// Critical values min(i * alpha / n0_hat, lambda), i = 1..n.
std::vector<double> critical_values(int n, double alpha, double lambda,
                                    double n0_hat);

// R = max{i : p_{i:n} <= crit[i]}, empty max = 0; rejects all p-values at or
// below crit[R].
TestResult step_up(const OrderedSample& ordered, std::span<const double> crit);

// R = length of the longest prefix with p_{j:n} <= crit[j]. The modified
// variant first replaces crit[i] by crit[R(p_{i:n})], where R counts sample
// values <= p_{i:n}, so tied blocks face their block-top critical value.
TestResult step_down(const OrderedSample& ordered, std::span<const double> crit,
                     TieVariant tie_variant = TieVariant::kStandard);

// Full adaptive procedure: estimate n0 from the ecdf, build the ladder,
// run the step-up or step-down scan, and attach V and the FDP when truth
// indicators are present.
TestResult run_procedure(const BiSample& sample, const ProcedureConfig& cfg);

}  // namespace fdrlab
