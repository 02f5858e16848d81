#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "fdrlab/ecdf.hpp"
#include "fdrlab/errors.hpp"

namespace fdrlab {

// Description of an estimator of the number of true null hypotheses. Every
// estimator is a measurable function of the ecdf tail (F_n(t))_{t >= lambda};
// validate() checks all inspection points against the procedure's rejection
// boundary lambda.
struct EstimatorSpec {
  enum class Kind { kBh, kStorey, kGStorey, kWeighted, kDynamic };

  Kind kind = Kind::kBh;

  double lambda1 = 0.5;    // kStorey, kGStorey
  double gamma1 = 1.0;     // kGStorey
  bool corrected = false;  // kGStorey

  std::vector<EstimatorSpec> components;  // kWeighted
  std::vector<double> weights;            // kWeighted

  std::vector<double> grid;  // kDynamic: lambda = l_0 < l_1 < ... < l_k = 1
  double epsilon = 0.05;     // kDynamic
  int fixed_tail = 2;        // kDynamic: top cells that keep their pre-weights

  static EstimatorSpec bh();
  static EstimatorSpec storey(double lambda1);
  static EstimatorSpec gstorey(double lambda1, double gamma1,
                               bool corrected = false);
  static EstimatorSpec weighted(std::vector<EstimatorSpec> components,
                                std::vector<double> weights);
  static EstimatorSpec dynamic(std::vector<double> grid, double epsilon,
                               int fixed_tail = 2);

  // Throws ConfigError when any inspection point sits below lambda or a
  // structural invariant fails. Weight sums off by more than 1e-12 are
  // refused rather than renormalized.
  void validate(double lambda) const;
};

// Outcome of the backward weighting scan for a dynamic estimator.
struct DynamicWeightTrace {
  std::vector<double> interval_estimates;  // per grid cell (l_{j-1}, l_j]
  double anchor = 0.0;                     // top-cell estimate
  int case1_index = 0;  // 1-based cell that received the mass; 0 means case 2
  std::vector<double> weights;

  bool is_case1() const { return case1_index > 0; }
};

// Storey estimator n (1 - F_n(lambda1) + 1/n) / (1 - lambda1), computed from
// the integer count so there is no floating drift.
template <EcdfLike E>
double storey_estimate(const E& e, double lambda1) {
  if (!(lambda1 > 0.0) || !(lambda1 < 1.0)) {
    throw DomainError("storey_estimate: lambda1 must lie in (0, 1)");
  }
  const int n = e.n();
  return (n - e.count_leq(lambda1) + 1.0) / (1.0 - lambda1);
}

// Generalized Storey estimator over the window (lambda1, gamma1]. With
// gamma1 = 1 and corrected = false this reduces exactly to storey_estimate.
// The corrected variant multiplies by 1 - (lambda1/gamma1)^(R(gamma1) v 1).
template <EcdfLike E>
double gstorey_estimate(const E& e, double lambda1, double gamma1,
                        bool corrected = false) {
  if (!(lambda1 > 0.0) || !(lambda1 < gamma1) || !(gamma1 <= 1.0)) {
    throw DomainError("gstorey_estimate: need 0 < lambda1 < gamma1 <= 1");
  }
  const int below = e.count_leq(lambda1);
  const int upto = e.count_leq(gamma1);
  double value = (upto - below + 1.0) / (gamma1 - lambda1);
  if (corrected) {
    const int exponent = upto > 1 ? upto : 1;
    value *= 1.0 - std::pow(lambda1 / gamma1, exponent);
  }
  return value;
}

// Weights that equalize the conditional variance of the component Storey
// estimators: beta_i proportional to sqrt(1/lambda_i - 1).
std::vector<double> variance_balanced_weights(std::span<const double> lambdas);

// Backward scan over the interval estimates. Scanning cells k - fixed_tail
// down to 2, the first cell whose estimate exceeds (1 + epsilon) times the
// top-cell anchor absorbs all pre-weight mass at and below it; cells below it
// are zeroed (case 1). Without a violation the pre-weights
// (l_j - l_{j-1}) / (1 - l_0) stand (case 2).
DynamicWeightTrace dynamic_weights(std::span<const double> interval_estimates,
                                   std::span<const double> grid,
                                   double epsilon, int fixed_tail);

// Uncorrected generalized Storey estimates over each grid cell.
template <EcdfLike E>
std::vector<double> dynamic_cell_estimates(const E& e,
                                           std::span<const double> grid) {
  std::vector<double> est;
  est.reserve(grid.size() - 1);
  for (std::size_t j = 1; j < grid.size(); ++j) {
    est.push_back(gstorey_estimate(e, grid[j - 1], grid[j], false));
  }
  return est;
}

template <EcdfLike E>
DynamicWeightTrace dynamic_trace(const EstimatorSpec& spec, const E& e) {
  if (spec.kind != EstimatorSpec::Kind::kDynamic) {
    throw ConfigError("dynamic_trace: spec is not a dynamic estimator");
  }
  const auto est = dynamic_cell_estimates(e, spec.grid);
  return dynamic_weights(est, spec.grid, spec.epsilon, spec.fixed_tail);
}

namespace detail {

// Evaluation without the lambda measurability pass; structural parameter
// checks still fire inside the per-kind routines.
template <EcdfLike E>
double evaluate_unchecked(const EstimatorSpec& spec, const E& e) {
  switch (spec.kind) {
    case EstimatorSpec::Kind::kBh:
      return static_cast<double>(e.n());
    case EstimatorSpec::Kind::kStorey:
      return storey_estimate(e, spec.lambda1);
    case EstimatorSpec::Kind::kGStorey:
      return gstorey_estimate(e, spec.lambda1, spec.gamma1, spec.corrected);
    case EstimatorSpec::Kind::kWeighted: {
      double value = 0.0;
      for (std::size_t i = 0; i < spec.components.size(); ++i) {
        value += spec.weights[i] * evaluate_unchecked(spec.components[i], e);
      }
      return value;
    }
    case EstimatorSpec::Kind::kDynamic: {
      const auto trace = dynamic_trace(spec, e);
      double value = 0.0;
      for (std::size_t j = 0; j < trace.weights.size(); ++j) {
        value += trace.weights[j] * trace.interval_estimates[j];
      }
      return value;
    }
  }
  throw ConfigError("evaluate: unknown estimator kind");
}

void check_weighted_shape(const EstimatorSpec& spec);

}  // namespace detail

// Convex combination of component estimators.
template <EcdfLike E>
double weighted_estimate(const E& e, std::span<const EstimatorSpec> components,
                         std::span<const double> weights) {
  EstimatorSpec spec;
  spec.kind = EstimatorSpec::Kind::kWeighted;
  spec.components.assign(components.begin(), components.end());
  spec.weights.assign(weights.begin(), weights.end());
  detail::check_weighted_shape(spec);
  return detail::evaluate_unchecked(spec, e);
}

// Dispatches on the estimator kind after validating against lambda. The bh
// sentinel evaluates to n.
template <EcdfLike E>
double evaluate(const EstimatorSpec& spec, const E& e, double lambda) {
  spec.validate(lambda);
  return detail::evaluate_unchecked(spec, e);
}

// Estimator value after the i-th p-value is set to zero. When p[i] <= lambda
// the ecdf tail is unchanged and the value equals the plain evaluate().
double leave_zero_estimate(const EstimatorSpec& spec, const BiSample& sample,
                           int i, double lambda);
double leave_zero_estimate(const EstimatorSpec& spec, const Ecdf& e,
                           double moved_from, double lambda);

}  // namespace fdrlab
