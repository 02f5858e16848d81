#pragma once

#include <concepts>
#include <span>
#include <vector>

#include "fdrlab/bi_model.hpp"

namespace fdrlab {

// p-values sorted nondecreasingly, keeping the mapping back to the original
// positions. Ties preserve original order (stable sort).
struct OrderedSample {
  std::vector<double> sorted_p;
  std::vector<int> perm;  // sorted position -> original index (0-based)

  int n() const { return static_cast<int>(sorted_p.size()); }
};

OrderedSample order(std::span<const double> sample);

// Right-continuous empirical cdf over an ordered sample. Counting is exact:
// comparisons happen on the stored binary values, ties included with
// multiplicity.
class Ecdf {
 public:
  explicit Ecdf(OrderedSample os) : os_(std::move(os)) {}

  int n() const { return os_.n(); }

  // R(t): number of p-values <= t.
  int count_leq(double t) const;

  // F_n(t) = R(t) / n.
  double eval(double t) const {
    return static_cast<double>(count_leq(t)) / n();
  }

  const OrderedSample& ordered() const { return os_; }

 private:
  OrderedSample os_;
};

// View of an ecdf with one p-value moved to zero; counts at or above the
// moved value are unchanged.
class ZeroedEcdf {
 public:
  ZeroedEcdf(const Ecdf& base, double moved_from)
      : base_(&base), moved_from_(moved_from) {}

  int n() const { return base_->n(); }
  int count_leq(double t) const {
    return base_->count_leq(t) + (moved_from_ > t ? 1 : 0);
  }
  double eval(double t) const {
    return static_cast<double>(count_leq(t)) / n();
  }

 private:
  const Ecdf* base_;
  double moved_from_;
};

template <class E>
concept EcdfLike = requires(const E& e, double t) {
  { e.n() } -> std::convertible_to<int>;
  { e.count_leq(t) } -> std::convertible_to<int>;
};

// V(t): number of p-values of true nulls (h = 0) at or below t.
int count_true_leq(const BiSample& sample, double t);

}  // namespace fdrlab
