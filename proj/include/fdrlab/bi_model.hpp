#pragma once

#include <cstdint>
#include <vector>

namespace fdrlab {

// How the truth indicators h are assigned: a fixed count of true nulls, or
// i.i.d. Bernoulli indicators with P(h = 0) = pi0.
struct TruthAssignment {
  enum class Mode { kFixed, kBernoulli };

  Mode mode = Mode::kFixed;
  int n0 = 0;        // kFixed
  double pi0 = 1.0;  // kBernoulli

  static TruthAssignment fixed(int n0);
  static TruthAssignment bernoulli(double pi0);
};

// Distribution of p-values under false null hypotheses. Every variant is a
// distribution function F1 on [0, 1] with F1(1) = 1.
struct AlternativeDistribution {
  enum class Kind { kDiracZero, kNormalShift, kPiecewiseD3, kTable };

  Kind kind = Kind::kDiracZero;
  double mu = 1.0;  // kNormalShift

  // kTable: continuous piecewise-linear cdf through (t[i], F[i]).
  std::vector<double> t;
  std::vector<double> F;

  static AlternativeDistribution dirac_zero();
  static AlternativeDistribution normal_shift(double mu = 1.0);
  static AlternativeDistribution piecewise_d3();
  // t must increase strictly from 0 to 1; F must be nondecreasing with
  // F.back() == 1.
  static AlternativeDistribution table(std::vector<double> t,
                                       std::vector<double> F);
  // The uniform alternative F1(t) = t, handy as a boundary case.
  static AlternativeDistribution uniform();
};

double alt_cdf(const AlternativeDistribution& alt, double t);

// Generalized inverse inf{t : F1(t) >= u}; supports inverse-transform sampling.
double alt_quantile(const AlternativeDistribution& alt, double u);

// One draw from the Basic Independence model: h[i] = 0 marks a true null with
// p[i] uniform on (0, 1); h[i] = 1 draws p[i] from the alternative.
struct BiSample {
  std::vector<double> p;
  std::vector<std::uint8_t> h;

  int n() const { return static_cast<int>(p.size()); }
  int n0() const;  // realized number of true nulls
};

// Deterministic function of all parameters and the seed.
BiSample sample_bi(int n, const TruthAssignment& truth,
                   const AlternativeDistribution& alt, std::uint64_t seed);

}  // namespace fdrlab
