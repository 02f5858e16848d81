#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "fdrlab/bi_model.hpp"
#include "fdrlab/errors.hpp"
#include "fdrlab/normal.hpp"

using namespace fdrlab;

TEST_CASE("fixed truth assignment drives the indicator pattern") {
  const auto all_true = sample_bi(4, TruthAssignment::fixed(4),
                                  AlternativeDistribution::normal_shift(1.0), 7);
  CHECK(all_true.n() == 4);
  CHECK(all_true.n0() == 4);
  for (const auto h : all_true.h) CHECK(h == 0);
  for (const auto p : all_true.p) {
    CHECK(p > 0.0);
    CHECK(p < 1.0);
  }

  const auto all_false =
      sample_bi(3, TruthAssignment::fixed(0), AlternativeDistribution::dirac_zero(), 11);
  CHECK(all_false.n0() == 0);
  for (const auto p : all_false.p) CHECK(p == 0.0);
  for (const auto h : all_false.h) CHECK(h == 1);
}

TEST_CASE("normal shift sampler mean matches the quadrature value") {
  // E(false p) = integral of 1 - F1 = Phi(-1/sqrt(2)) = 0.23975006109347674,
  // cross-checked by adaptive quadrature of 1 - Phi(Phi^-1(t) + 1).
  const auto s = sample_bi(1000, TruthAssignment::fixed(600),
                           AlternativeDistribution::normal_shift(1.0), 42);
  double sum = 0.0;
  int count = 0;
  for (int i = 0; i < s.n(); ++i) {
    if (s.h[i] == 1) {
      sum += s.p[i];
      ++count;
    }
  }
  CHECK(count == 400);
  CHECK(std::fabs(sum / count - 0.23975006109347674) <= 0.02);
}

TEST_CASE("alt_cdf evaluates the built-in distributions") {
  const auto d3 = AlternativeDistribution::piecewise_d3();
  CHECK(alt_cdf(d3, 0.5) == doctest::Approx(0.75).epsilon(1e-14));
  // Both branch formulas agree at the junction.
  const double upper = 1.0 - 2.0 * std::pow(1.0 - 0.5, 3);
  CHECK(upper == doctest::Approx(alt_cdf(d3, 0.5)).epsilon(1e-14));
  CHECK(alt_cdf(d3, 1.0) == 1.0);
  CHECK(alt_cdf(d3, 0.0) == 0.0);

  CHECK(alt_cdf(AlternativeDistribution::dirac_zero(), 0.0) == 1.0);
  CHECK(alt_cdf(AlternativeDistribution::dirac_zero(), 0.7) == 1.0);

  const auto d2 = AlternativeDistribution::normal_shift(1.0);
  CHECK(std::fabs(alt_cdf(d2, 0.5) - 0.8413447460685429) <= 1e-12);
  CHECK(alt_cdf(d2, 0.0) == 0.0);
  CHECK(alt_cdf(d2, 1.0) == 1.0);

  CHECK_THROWS_AS(alt_cdf(d3, -0.1), DomainError);
  CHECK_THROWS_AS(alt_cdf(d3, 1.1), DomainError);
}

TEST_CASE("alt_quantile inverts the piecewise distribution") {
  const auto d3 = AlternativeDistribution::piecewise_d3();
  CHECK(alt_quantile(d3, 0.75) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(alt_quantile(d3, 0.6) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(alt_quantile(d3, 0.984) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(alt_quantile(AlternativeDistribution::dirac_zero(), 0.3) == 0.0);
  CHECK_THROWS_AS(alt_quantile(d3, -0.1), DomainError);
  CHECK_THROWS_AS(alt_quantile(d3, 1.0001), DomainError);
}

TEST_CASE("cdf/quantile round trips on a fine grid") {
  const auto d2 = AlternativeDistribution::normal_shift(1.0);
  const auto d3 = AlternativeDistribution::piecewise_d3();
  const auto tab = AlternativeDistribution::table({0.0, 0.25, 0.5, 1.0},
                                                  {0.0, 0.5, 0.8, 1.0});
  for (int i = 1; i < 1000; ++i) {
    const double u = i / 1000.0;
    CHECK(std::fabs(alt_cdf(d2, alt_quantile(d2, u)) - u) <= 1e-10);
    CHECK(std::fabs(alt_cdf(d3, alt_quantile(d3, u)) - u) <= 1e-10);
    CHECK(std::fabs(alt_cdf(tab, alt_quantile(tab, u)) - u) <= 1e-10);
  }
}

TEST_CASE("piecewise d3 sampler passes a Kolmogorov-Smirnov check") {
  const int n = 100000;
  auto s = sample_bi(n, TruthAssignment::fixed(0),
                     AlternativeDistribution::piecewise_d3(), 2024);
  std::sort(s.p.begin(), s.p.end());
  const auto d3 = AlternativeDistribution::piecewise_d3();
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double F = alt_cdf(d3, s.p[i]);
    ks = std::max(ks, std::fabs((i + 1.0) / n - F));
    ks = std::max(ks, std::fabs(F - static_cast<double>(i) / n));
  }
  CHECK(ks < 0.01);
}

TEST_CASE("bernoulli truth mode hits pi0 within binomial noise") {
  const int n = 100000;
  const double pi0 = 0.6;
  const auto s = sample_bi(n, TruthAssignment::bernoulli(pi0),
                           AlternativeDistribution::dirac_zero(), 99);
  const double frac = static_cast<double>(s.n0()) / n;
  const double se = std::sqrt(pi0 * (1.0 - pi0) / n);
  CHECK(std::fabs(frac - pi0) <= 3.0 * se);
}

TEST_CASE("sampling is reproducible bit for bit") {
  const auto a = sample_bi(500, TruthAssignment::bernoulli(0.4),
                           AlternativeDistribution::piecewise_d3(), 1234);
  const auto b = sample_bi(500, TruthAssignment::bernoulli(0.4),
                           AlternativeDistribution::piecewise_d3(), 1234);
  CHECK(a.p == b.p);
  CHECK(a.h == b.h);
  const auto c = sample_bi(500, TruthAssignment::bernoulli(0.4),
                           AlternativeDistribution::piecewise_d3(), 1235);
  CHECK(a.p != c.p);
}

TEST_CASE("table distribution with F1(0.5) = 1 concentrates below 0.5") {
  const auto d4 = AlternativeDistribution::table({0.0, 0.5, 1.0}, {0.0, 1.0, 1.0});
  CHECK(alt_cdf(d4, 0.5) == 1.0);
  CHECK(alt_cdf(d4, 0.25) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(alt_quantile(d4, 1.0) == 0.5);  // inf over the flat segment
  const auto s = sample_bi(2000, TruthAssignment::fixed(0), d4, 5);
  for (const double p : s.p) CHECK(p <= 0.5);
}

TEST_CASE("invalid model parameters are rejected") {
  CHECK_THROWS_AS(sample_bi(0, TruthAssignment::fixed(0),
                            AlternativeDistribution::dirac_zero(), 1),
                  ConfigError);
  CHECK_THROWS_AS(sample_bi(3, TruthAssignment::fixed(4),
                            AlternativeDistribution::dirac_zero(), 1),
                  ConfigError);
  CHECK_THROWS_AS(TruthAssignment::bernoulli(0.0), ConfigError);
  CHECK_THROWS_AS(TruthAssignment::bernoulli(1.5), ConfigError);
  CHECK_THROWS_AS(TruthAssignment::fixed(-1), ConfigError);
  CHECK_THROWS_AS(AlternativeDistribution::table({0.0, 1.0}, {0.5}), ConfigError);
  CHECK_THROWS_AS(AlternativeDistribution::table({0.0, 0.5}, {0.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(AlternativeDistribution::table({0.0, 0.4, 0.4, 1.0},
                                                 {0.0, 0.2, 0.4, 1.0}),
                  ConfigError);
  CHECK_THROWS_AS(AlternativeDistribution::table({0.0, 1.0}, {0.4, 0.9}), ConfigError);
}
