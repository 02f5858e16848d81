#include "fdrlab/ecdf.hpp"

#include <algorithm>
#include <numeric>

#include "fdrlab/errors.hpp"

namespace fdrlab {

OrderedSample order(std::span<const double> sample) {
  if (sample.empty()) throw DomainError("order: sample must not be empty");
  for (const double v : sample) {
    if (!(v >= 0.0) || !(v <= 1.0)) {
      throw DomainError("order: p-values must lie in [0, 1]");
    }
  }
  OrderedSample os;
  os.perm.resize(sample.size());
  std::iota(os.perm.begin(), os.perm.end(), 0);
  std::stable_sort(os.perm.begin(), os.perm.end(),
                   [&](int a, int b) { return sample[a] < sample[b]; });
  os.sorted_p.resize(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    os.sorted_p[i] = sample[os.perm[i]];
  }
  return os;
}

int Ecdf::count_leq(double t) const {
  if (!(t >= 0.0) || !(t <= 1.0)) {
    throw DomainError("count_leq: t must lie in [0, 1]");
  }
  const auto it =
      std::upper_bound(os_.sorted_p.begin(), os_.sorted_p.end(), t);
  return static_cast<int>(it - os_.sorted_p.begin());
}

int count_true_leq(const BiSample& sample, double t) {
  if (!(t >= 0.0) || !(t <= 1.0)) {
    throw DomainError("count_true_leq: t must lie in [0, 1]");
  }
  int c = 0;
  for (int i = 0; i < sample.n(); ++i) {
    c += (sample.h[i] == 0 && sample.p[i] <= t);
  }
  return c;
}

}  // namespace fdrlab
