#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fdrlab/bi_model.hpp"
#include "fdrlab/stepwise.hpp"

namespace fdrlab {

struct SimulationConfig {
  int n = 0;
  TruthAssignment truth;
  AlternativeDistribution alt;
  ProcedureConfig procedure;
  int replications = 0;
  std::uint64_t master_seed = 0;

  void validate() const;
};

struct SimulationReport {
  double fdr_hat = 0.0;        // mean FDP over the replicates
  double fdr_se = 0.0;         // sd of the per-replicate FDP / sqrt(reps)
  double power_hat = 0.0;      // mean fraction of false nulls rejected
  double mean_estimate = 0.0;  // mean n0_hat
  double mean_r = 0.0;         // mean rejections
  int replications = 0;
  SimulationConfig config;
};

// Two-sided comparison or one-sided bound; pass <=> margin >= 0.
struct VerificationReport {
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  double se_lhs = 0.0;
  double se_rhs = 0.0;
  bool pass = false;
  double margin = 0.0;
};

// Monte Carlo FDR and power estimate. Per-replicate seeds derive from
// (master_seed, replicate index), so the result is independent of the thread
// count, bit for bit.
SimulationReport simulate_fdr(const SimulationConfig& cfg, int threads = 0);

// V / max(R, 1). Requires the result to carry truth information.
double fdp(const TestResult& result);

// One draw of the exact FDR identity for adaptive step-up tests:
// (alpha/lambda) V(lambda) min{1/n0_hat, lambda/(R(lambda) alpha)}, with the
// second argument +inf when R(lambda) = 0. statement_variant drops the lambda
// in the numerator of the second argument for comparison.
double thm1_integrand(const BiSample& sample, const ProcedureConfig& cfg,
                      bool statement_variant = false);

// Compares the Monte Carlo mean of the integrand against the mean FDP on the
// same replicate stream.
VerificationReport verify_thm1_identity(const SimulationConfig& cfg,
                                        bool statement_variant = false,
                                        int threads = 0);

// Monte Carlo check of the FDR control condition E(V(lambda)/n0_hat) <= lambda.
VerificationReport check_control_condition(const SimulationConfig& cfg,
                                           int threads = 0);

// Both sides of the leave-one-out identity
// (1/lambda) E(V(lambda)/n0_hat) = E(sum over true nulls of 1/n0_hat^(i)),
// estimated on the same replicate stream.
VerificationReport lemma2_sides(const SimulationConfig& cfg, int threads = 0);

// Exact enumeration against the closed form
// E(V1/(n+1-V1-V2)) = (p1/p3)(1 - (p1+p2)^n) for (V1,V2,V3) multinomial.
// Requires n <= 60; both sides agree to 1e-12 when the identity holds.
VerificationReport multinomial_identity(int n, double p1, double p2, double p3);

struct Table1Report {
  std::vector<std::string> estimator_labels;
  std::vector<std::string> alt_labels;
  std::array<std::array<double, 3>, 3> fdr{};  // [estimator][alternative]
  std::array<std::array<double, 3>, 3> se{};
  int replications = 0;
  std::uint64_t seed = 0;
};

// The 3x3 simulation grid: {Storey(0.5), variance-balanced weighted Storey,
// dynamic} x {D1, D2, D3} at n = 1000, fixed 600 true nulls, alpha = 0.05,
// lambda = 0.5, step-up.
Table1Report table1(int reps, std::uint64_t seed, int threads = 0);

// The nine SimulationConfigs behind table1, in row-major order.
std::vector<SimulationConfig> table1_configs(int reps, std::uint64_t seed);

}  // namespace fdrlab
