#include <cmath>

#include <doctest.h>

#include "fdrlab/analysis.hpp"
#include "fdrlab/errors.hpp"
#include "test_util.hpp"

using namespace fdrlab;
using fdrlab::testing::make_sample;

namespace {

SimulationConfig base_config() {
  SimulationConfig cfg;
  cfg.n = 200;
  cfg.truth = TruthAssignment::fixed(120);
  cfg.alt = AlternativeDistribution::normal_shift(1.0);
  cfg.procedure.alpha = 0.05;
  cfg.procedure.lambda = 0.5;
  cfg.procedure.estimator = EstimatorSpec::storey(0.5);
  cfg.replications = 2000;
  cfg.master_seed = 9001;
  return cfg;
}

}  // namespace

TEST_CASE("fdp follows the empty-rejection convention") {
  TestResult res;
  res.r = 0;
  res.v = 0;
  CHECK(fdp(res) == 0.0);
  res.r = 5;
  res.v = 2;
  CHECK(fdp(res) == doctest::Approx(0.4));
  res.r = 3;
  res.v = 3;
  CHECK(fdp(res) == 1.0);
  TestResult no_truth;
  CHECK_THROWS_AS(fdp(no_truth), ConfigError);
}

TEST_CASE("thm1 integrand on the worked example") {
  const auto sample = make_sample({0.1, 0.2, 0.6, 0.8}, {0, 0, 1, 1});
  ProcedureConfig cfg;
  cfg.alpha = 0.05;
  cfg.lambda = 0.5;
  cfg.estimator = EstimatorSpec::storey(0.5);
  CHECK(thm1_integrand(sample, cfg) == doctest::Approx(1.0 / 30).epsilon(1e-12));

  // V(lambda) = 0 kills the integrand.
  const auto empty = make_sample({0.6, 0.8}, {0, 0});
  CHECK(thm1_integrand(empty, cfg) == 0.0);

  // All mass above lambda but a false p-value below: V = 0 still.
  const auto false_low = make_sample({0.1, 0.8}, {1, 0});
  CHECK(thm1_integrand(false_low, cfg) == 0.0);

  cfg.direction = Direction::kStepDown;
  CHECK_THROWS_AS(thm1_integrand(sample, cfg), ConfigError);
}

TEST_CASE("thm1 identity holds in monte carlo") {
  auto cfg = base_config();
  cfg.replications = 4000;
  const auto rep = verify_thm1_identity(cfg);
  CHECK(rep.pass);
  CHECK(std::fabs(rep.lhs - rep.rhs) <= 3.0 * std::sqrt(rep.se_lhs * rep.se_lhs +
                                                        rep.se_rhs * rep.se_rhs));
}

TEST_CASE("control condition holds for the estimator family") {
  auto cfg = base_config();
  cfg.replications = 3000;
  CHECK(check_control_condition(cfg).pass);
  cfg.procedure.estimator = EstimatorSpec::gstorey(0.5, 0.7);
  CHECK(check_control_condition(cfg).pass);

  // Measurability violations are rejected at validation, not silently run.
  cfg.procedure.estimator = EstimatorSpec::storey(0.3);
  CHECK_THROWS_AS(check_control_condition(cfg), ConfigError);
}

TEST_CASE("lemma2 sides agree; constant estimator is exact") {
  auto cfg = base_config();
  cfg.n = 50;
  cfg.truth = TruthAssignment::fixed(25);
  cfg.alt = AlternativeDistribution::uniform();
  cfg.replications = 4000;
  const auto rep = lemma2_sides(cfg);
  CHECK(rep.pass);

  // The bh sentinel is the constant estimator n0_hat = n: under the global
  // null the right side is N0/n = 1 in every replicate and the left side
  // integrates to the same value.
  cfg.truth = TruthAssignment::fixed(50);
  cfg.procedure.estimator = EstimatorSpec::bh();
  cfg.replications = 2000;
  const auto exact = lemma2_sides(cfg);
  CHECK(exact.pass);
  CHECK(std::fabs(exact.rhs - 1.0) <= 1e-12);
  CHECK(exact.se_rhs <= 1e-12);
  CHECK(std::fabs(exact.lhs - 1.0) <= 3.0 * exact.se_lhs + 1e-12);
}

TEST_CASE("multinomial identity: exact oracle against the closed form") {
  const auto rep = multinomial_identity(2, 1.0 / 3, 1.0 / 3, 1.0 / 3);
  CHECK(rep.pass);
  CHECK(std::fabs(rep.lhs - 5.0 / 9.0) <= 1e-15);
  CHECK(std::fabs(rep.rhs - 5.0 / 9.0) <= 1e-15);

  // Empty multinomial and p1 = 0 both vanish on either side.
  const auto zero_n = multinomial_identity(0, 0.2, 0.3, 0.5);
  CHECK(zero_n.pass);
  CHECK(zero_n.lhs == 0.0);
  CHECK(zero_n.rhs == 0.0);

  const auto zero_p1 = multinomial_identity(12, 0.0, 0.4, 0.6);
  CHECK(zero_p1.pass);
  CHECK(zero_p1.lhs == 0.0);

  CHECK_THROWS_AS(multinomial_identity(5, 0.5, 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(multinomial_identity(5, 0.6, 0.4, 0.0), DomainError);
  CHECK_THROWS_AS(multinomial_identity(61, 0.2, 0.3, 0.5), DomainError);
  CHECK_THROWS_AS(multinomial_identity(-1, 0.2, 0.3, 0.5), DomainError);
}

TEST_CASE("bh simulation recovers the exact linear-test FDR") {
  auto cfg = base_config();
  cfg.alt = AlternativeDistribution::uniform();
  cfg.procedure.estimator = EstimatorSpec::bh();
  cfg.replications = 4000;
  const auto rep = simulate_fdr(cfg);
  // FDR of the BH test is exactly (N0/n) alpha = 0.03 under the model.
  CHECK(std::fabs(rep.fdr_hat - 0.03) <= 3.0 * rep.fdr_se);
  CHECK(rep.fdr_se > 0.0);
  CHECK(rep.power_hat > 0.0);
}

TEST_CASE("global-null boundary reports zero power and controls the FDR") {
  auto cfg = base_config();
  cfg.truth = TruthAssignment::fixed(cfg.n);
  cfg.replications = 2000;
  const auto rep = simulate_fdr(cfg);
  CHECK(rep.power_hat == 0.0);
  CHECK(rep.fdr_hat <= cfg.procedure.alpha + 3.0 * rep.fdr_se);
}

TEST_CASE("simulation results are independent of the thread count") {
  auto cfg = base_config();
  cfg.replications = 600;
  const auto one = simulate_fdr(cfg, 1);
  const auto three = simulate_fdr(cfg, 3);
  CHECK(one.fdr_hat == three.fdr_hat);
  CHECK(one.fdr_se == three.fdr_se);
  CHECK(one.power_hat == three.power_hat);
  CHECK(one.mean_estimate == three.mean_estimate);
  CHECK(one.mean_r == three.mean_r);
}

TEST_CASE("replacing D1 by a D4 table leaves lambda=0.5 procedures unchanged") {
  auto cfg = base_config();
  cfg.n = 400;
  cfg.truth = TruthAssignment::fixed(240);
  cfg.alt = AlternativeDistribution::dirac_zero();
  cfg.replications = 3000;
  const auto d1 = simulate_fdr(cfg);
  cfg.alt = AlternativeDistribution::table({0.0, 0.25, 0.5, 1.0},
                                           {0.0, 0.6, 1.0, 1.0});
  const auto d4 = simulate_fdr(cfg);
  const double se = std::sqrt(d1.fdr_se * d1.fdr_se + d4.fdr_se * d4.fdr_se);
  CHECK(std::fabs(d1.fdr_hat - d4.fdr_hat) <= 3.0 * se);
}

TEST_CASE("every estimator controls the FDR in both scan directions") {
  const std::vector<EstimatorSpec> estimators{
      EstimatorSpec::storey(0.5),
      EstimatorSpec::gstorey(0.5, 0.7),
      EstimatorSpec::weighted(
          {EstimatorSpec::storey(0.5), EstimatorSpec::storey(0.7)},
          {0.5, 0.5}),
      EstimatorSpec::dynamic({0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 1.0}, 0.05, 2),
  };
  const std::vector<AlternativeDistribution> alts{
      AlternativeDistribution::dirac_zero(),
      AlternativeDistribution::uniform(),
  };
  std::uint64_t seed = 600;
  for (const auto& est : estimators) {
    for (const auto& alt : alts) {
      auto cfg = base_config();
      cfg.n = 300;
      cfg.truth = TruthAssignment::fixed(180);
      cfg.alt = alt;
      cfg.procedure.estimator = est;
      cfg.replications = 2000;
      cfg.master_seed = seed++;
      const auto su = simulate_fdr(cfg);
      CHECK(su.fdr_hat <= cfg.procedure.alpha + 3.0 * su.fdr_se);
      cfg.procedure.direction = Direction::kStepDown;
      const auto sd = simulate_fdr(cfg);
      CHECK(sd.fdr_hat <= cfg.procedure.alpha + 3.0 * sd.fdr_se);
      // Step-down is the more conservative scan.
      const double combined =
          std::sqrt(su.fdr_se * su.fdr_se + sd.fdr_se * sd.fdr_se);
      CHECK(sd.fdr_hat <= su.fdr_hat + 3.0 * combined);
    }
  }
}

TEST_CASE("invalid simulation configs are rejected") {
  auto cfg = base_config();
  cfg.replications = 0;
  CHECK_THROWS_AS(simulate_fdr(cfg), ConfigError);
  cfg = base_config();
  cfg.n = 0;
  CHECK_THROWS_AS(simulate_fdr(cfg), ConfigError);
  cfg = base_config();
  cfg.truth = TruthAssignment::fixed(500);  // exceeds n = 200
  CHECK_THROWS_AS(simulate_fdr(cfg), ConfigError);
}
