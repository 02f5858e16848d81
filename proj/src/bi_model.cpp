#include "fdrlab/bi_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdrlab/errors.hpp"
#include "fdrlab/normal.hpp"
#include "fdrlab/rng.hpp"

namespace fdrlab {

TruthAssignment TruthAssignment::fixed(int n0) {
  if (n0 < 0) throw ConfigError("truth: fixed n0 must be >= 0");
  TruthAssignment t;
  t.mode = Mode::kFixed;
  t.n0 = n0;
  return t;
}

TruthAssignment TruthAssignment::bernoulli(double pi0) {
  if (!(pi0 > 0.0) || !(pi0 <= 1.0)) {
    throw ConfigError("truth: bernoulli pi0 must lie in (0, 1]");
  }
  TruthAssignment t;
  t.mode = Mode::kBernoulli;
  t.pi0 = pi0;
  return t;
}

AlternativeDistribution AlternativeDistribution::dirac_zero() {
  AlternativeDistribution a;
  a.kind = Kind::kDiracZero;
  return a;
}

AlternativeDistribution AlternativeDistribution::normal_shift(double mu) {
  AlternativeDistribution a;
  a.kind = Kind::kNormalShift;
  a.mu = mu;
  return a;
}

AlternativeDistribution AlternativeDistribution::piecewise_d3() {
  AlternativeDistribution a;
  a.kind = Kind::kPiecewiseD3;
  return a;
}

AlternativeDistribution AlternativeDistribution::table(std::vector<double> t,
                                                       std::vector<double> F) {
  if (t.size() != F.size() || t.size() < 2) {
    throw ConfigError("table alternative: need matching t/F columns with at least 2 rows");
  }
  if (t.front() != 0.0 || t.back() != 1.0) {
    throw ConfigError("table alternative: breakpoints must run from 0 to 1");
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) {
      throw ConfigError("table alternative: breakpoints must increase strictly");
    }
    if (F[i] < F[i - 1]) {
      throw ConfigError("table alternative: cdf values must be nondecreasing");
    }
  }
  if (F.front() < 0.0 || F.back() != 1.0) {
    throw ConfigError("table alternative: cdf must stay in [0, 1] and reach 1");
  }
  AlternativeDistribution a;
  a.kind = Kind::kTable;
  a.t = std::move(t);
  a.F = std::move(F);
  return a;
}

AlternativeDistribution AlternativeDistribution::uniform() {
  return table({0.0, 1.0}, {0.0, 1.0});
}

double alt_cdf(const AlternativeDistribution& alt, double t) {
  if (!(t >= 0.0) || !(t <= 1.0)) {
    throw DomainError("alt_cdf: t must lie in [0, 1]");
  }
  switch (alt.kind) {
    case AlternativeDistribution::Kind::kDiracZero:
      return 1.0;
    case AlternativeDistribution::Kind::kNormalShift: {
      if (t <= 0.0) return 0.0;
      if (t >= 1.0) return 1.0;
      return std_normal_cdf(std_normal_quantile(t) + alt.mu);
    }
    case AlternativeDistribution::Kind::kPiecewiseD3: {
      if (t <= 0.5) return 1.5 * t;
      const double r = 1.0 - t;
      return 1.0 - 2.0 * r * r * r;
    }
    case AlternativeDistribution::Kind::kTable: {
      const auto it = std::upper_bound(alt.t.begin(), alt.t.end(), t);
      if (it == alt.t.begin()) return alt.F.front();
      if (it == alt.t.end()) return alt.F.back();
      const std::size_t hi = static_cast<std::size_t>(it - alt.t.begin());
      const std::size_t lo = hi - 1;
      const double w = (t - alt.t[lo]) / (alt.t[hi] - alt.t[lo]);
      return alt.F[lo] + w * (alt.F[hi] - alt.F[lo]);
    }
  }
  throw DomainError("alt_cdf: unknown alternative kind");
}

double alt_quantile(const AlternativeDistribution& alt, double u) {
  if (!(u >= 0.0) || !(u <= 1.0)) {
    throw DomainError("alt_quantile: u must lie in [0, 1]");
  }
  switch (alt.kind) {
    case AlternativeDistribution::Kind::kDiracZero:
      return 0.0;
    case AlternativeDistribution::Kind::kNormalShift: {
      if (u <= 0.0) return 0.0;
      if (u >= 1.0) return 1.0;
      return std_normal_cdf(std_normal_quantile(u) - alt.mu);
    }
    case AlternativeDistribution::Kind::kPiecewiseD3: {
      if (u <= 0.75) return u / 1.5;
      return 1.0 - std::cbrt((1.0 - u) / 2.0);
    }
    case AlternativeDistribution::Kind::kTable: {
      // inf{t : F(t) >= u}: invert on the first segment whose upper cdf value
      // reaches u.
      if (u <= alt.F.front()) return alt.t.front();
      const auto it = std::lower_bound(alt.F.begin(), alt.F.end(), u);
      const std::size_t hi = static_cast<std::size_t>(it - alt.F.begin());
      const std::size_t lo = hi - 1;
      if (alt.F[hi] == alt.F[lo]) return alt.t[hi];
      const double w = (u - alt.F[lo]) / (alt.F[hi] - alt.F[lo]);
      return alt.t[lo] + w * (alt.t[hi] - alt.t[lo]);
    }
  }
  throw DomainError("alt_quantile: unknown alternative kind");
}

int BiSample::n0() const {
  int c = 0;
  for (const auto hi : h) c += (hi == 0);
  return c;
}

BiSample sample_bi(int n, const TruthAssignment& truth,
                   const AlternativeDistribution& alt, std::uint64_t seed) {
  if (n < 1) throw ConfigError("sample_bi: n must be >= 1");
  if (truth.mode == TruthAssignment::Mode::kFixed && truth.n0 > n) {
    throw ConfigError("sample_bi: fixed n0 exceeds n");
  }

  Rng rng(seed);
  BiSample s;
  s.p.resize(static_cast<std::size_t>(n));
  s.h.resize(static_cast<std::size_t>(n));

  if (truth.mode == TruthAssignment::Mode::kFixed) {
    for (int i = 0; i < n; ++i) s.h[i] = (i < truth.n0) ? 0 : 1;
  } else {
    for (int i = 0; i < n; ++i) s.h[i] = (rng.uniform01() < truth.pi0) ? 0 : 1;
  }
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    s.p[i] = (s.h[i] == 0) ? u : alt_quantile(alt, u);
  }
  return s;
}

}  // namespace fdrlab
