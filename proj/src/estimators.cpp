#include "fdrlab/estimators.hpp"

#include <cmath>
#include <string>

namespace fdrlab {

EstimatorSpec EstimatorSpec::bh() {
  EstimatorSpec s;
  s.kind = Kind::kBh;
  return s;
}

EstimatorSpec EstimatorSpec::storey(double lambda1) {
  EstimatorSpec s;
  s.kind = Kind::kStorey;
  s.lambda1 = lambda1;
  return s;
}

EstimatorSpec EstimatorSpec::gstorey(double lambda1, double gamma1,
                                     bool corrected) {
  EstimatorSpec s;
  s.kind = Kind::kGStorey;
  s.lambda1 = lambda1;
  s.gamma1 = gamma1;
  s.corrected = corrected;
  return s;
}

EstimatorSpec EstimatorSpec::weighted(std::vector<EstimatorSpec> components,
                                      std::vector<double> weights) {
  EstimatorSpec s;
  s.kind = Kind::kWeighted;
  s.components = std::move(components);
  s.weights = std::move(weights);
  return s;
}

EstimatorSpec EstimatorSpec::dynamic(std::vector<double> grid, double epsilon,
                                     int fixed_tail) {
  EstimatorSpec s;
  s.kind = Kind::kDynamic;
  s.grid = std::move(grid);
  s.epsilon = epsilon;
  s.fixed_tail = fixed_tail;
  return s;
}

namespace detail {

void check_weighted_shape(const EstimatorSpec& spec) {
  if (spec.components.empty() || spec.components.size() != spec.weights.size()) {
    throw ConfigError("weighted estimator: components/weights size mismatch");
  }
  double sum = 0.0;
  for (const double w : spec.weights) {
    if (!(w > 0.0)) {
      throw ConfigError("weighted estimator: weights must be positive");
    }
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw ConfigError(
        "weighted estimator: weights sum to " + std::to_string(sum) +
        ", expected 1 within 1e-12 (renormalization is refused)");
  }
}

void check_dynamic_shape(const EstimatorSpec& spec) {
  const std::size_t k = spec.grid.size() >= 1 ? spec.grid.size() - 1 : 0;
  if (k < 2) {
    throw ConfigError("dynamic estimator: grid needs at least two cells");
  }
  for (std::size_t j = 1; j < spec.grid.size(); ++j) {
    if (!(spec.grid[j] > spec.grid[j - 1])) {
      throw ConfigError("dynamic estimator: grid must increase strictly");
    }
  }
  if (!(spec.grid.front() > 0.0) || spec.grid.back() != 1.0) {
    throw ConfigError("dynamic estimator: grid must run from lambda > 0 to 1");
  }
  if (!(spec.epsilon > 0.0)) {
    throw ConfigError("dynamic estimator: epsilon must be positive");
  }
  if (spec.fixed_tail < 1 || static_cast<std::size_t>(spec.fixed_tail) >= k) {
    throw ConfigError("dynamic estimator: fixed_tail must lie in [1, k)");
  }
}

}  // namespace detail

void EstimatorSpec::validate(double lambda) const {
  if (!(lambda >= 0.0) || !(lambda < 1.0)) {
    throw ConfigError("estimator validate: lambda must lie in [0, 1)");
  }
  switch (kind) {
    case Kind::kBh:
      return;
    case Kind::kStorey:
      if (!(lambda1 > 0.0) || !(lambda1 < 1.0)) {
        throw ConfigError("storey estimator: lambda1 must lie in (0, 1)");
      }
      if (lambda1 < lambda) {
        throw ConfigError(
            "storey estimator: inspection point lambda1 below the rejection "
            "boundary lambda breaks tail measurability");
      }
      return;
    case Kind::kGStorey:
      if (!(lambda1 > 0.0) || !(lambda1 < gamma1) || !(gamma1 <= 1.0)) {
        throw ConfigError("gstorey estimator: need 0 < lambda1 < gamma1 <= 1");
      }
      if (lambda1 < lambda) {
        throw ConfigError(
            "gstorey estimator: inspection point lambda1 below the rejection "
            "boundary lambda breaks tail measurability");
      }
      return;
    case Kind::kWeighted:
      detail::check_weighted_shape(*this);
      for (const auto& c : components) c.validate(lambda);
      return;
    case Kind::kDynamic:
      detail::check_dynamic_shape(*this);
      if (grid.front() != lambda) {
        throw ConfigError("dynamic estimator: grid must start at lambda");
      }
      return;
  }
  throw ConfigError("estimator validate: unknown kind");
}

std::vector<double> variance_balanced_weights(std::span<const double> lambdas) {
  if (lambdas.empty()) {
    throw DomainError("variance_balanced_weights: need at least one lambda");
  }
  std::vector<double> w;
  w.reserve(lambdas.size());
  double sum = 0.0;
  for (const double l : lambdas) {
    if (!(l > 0.0) || !(l < 1.0)) {
      throw DomainError("variance_balanced_weights: lambdas must lie in (0, 1)");
    }
    const double v = std::sqrt(1.0 / l - 1.0);
    w.push_back(v);
    sum += v;
  }
  for (double& v : w) v /= sum;
  return w;
}

DynamicWeightTrace dynamic_weights(std::span<const double> interval_estimates,
                                   std::span<const double> grid,
                                   double epsilon, int fixed_tail) {
  EstimatorSpec shape;
  shape.kind = EstimatorSpec::Kind::kDynamic;
  shape.grid.assign(grid.begin(), grid.end());
  shape.epsilon = epsilon;
  shape.fixed_tail = fixed_tail;
  detail::check_dynamic_shape(shape);

  const std::size_t k = grid.size() - 1;
  if (interval_estimates.size() != k) {
    throw ConfigError("dynamic_weights: one estimate per grid cell required");
  }

  DynamicWeightTrace trace;
  trace.interval_estimates.assign(interval_estimates.begin(),
                                  interval_estimates.end());
  trace.anchor = interval_estimates[k - 1];
  const double threshold = (1.0 + epsilon) * trace.anchor;

  // Pre-weights from the decomposition of the tail slope over the cells.
  std::vector<double> pre(k);
  const double span = 1.0 - grid[0];
  for (std::size_t j = 0; j < k; ++j) pre[j] = (grid[j + 1] - grid[j]) / span;

  // Backward scan over the non-fixed cells (1-based cells k - fixed_tail
  // down to 2). The first violation wins; everything above it is compliant.
  int violating = 0;
  for (int m = static_cast<int>(k) - fixed_tail; m >= 2; --m) {
    if (interval_estimates[m - 1] > threshold) {
      violating = m;
      break;
    }
  }

  trace.weights = pre;
  trace.case1_index = violating;
  if (violating > 0) {
    double tail_mass = 0.0;
    for (std::size_t j = static_cast<std::size_t>(violating); j < k; ++j) {
      tail_mass += pre[j];
    }
    for (int j = 0; j < violating - 1; ++j) trace.weights[j] = 0.0;
    trace.weights[violating - 1] = 1.0 - tail_mass;
  }
  return trace;
}

double leave_zero_estimate(const EstimatorSpec& spec, const Ecdf& e,
                           double moved_from, double lambda) {
  spec.validate(lambda);
  const ZeroedEcdf view(e, moved_from);
  return detail::evaluate_unchecked(spec, view);
}

double leave_zero_estimate(const EstimatorSpec& spec, const BiSample& sample,
                           int i, double lambda) {
  if (i < 0 || i >= sample.n()) {
    throw DomainError("leave_zero_estimate: index out of range");
  }
  const Ecdf e(order(sample.p));
  return leave_zero_estimate(spec, e, sample.p[i], lambda);
}

}  // namespace fdrlab
