#include "fdrlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fdrlab/errors.hpp"
#include "fdrlab/parallel.hpp"
#include "fdrlab/rng.hpp"

namespace fdrlab {
namespace {

// Compensated sum; the input order is fixed by the replicate index, so the
// reduction is identical for every thread count.
double kahan_sum(const std::vector<double>& xs) {
  double sum = 0.0, c = 0.0;
  for (const double x : xs) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double mean_of(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : kahan_sum(xs) / static_cast<double>(xs.size());
}

double se_of(const std::vector<double>& xs, double mean) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  double ss = 0.0, c = 0.0;
  for (const double x : xs) {
    const double d = (x - mean) * (x - mean) - c;
    const double t = ss + d;
    c = (t - ss) - d;
    ss = t;
  }
  const double var = ss / static_cast<double>(n - 1);
  return std::sqrt(var / static_cast<double>(n));
}

// Runs fn(rep, sample) over all replicates with derived seeds.
template <class Fn>
void for_each_replicate(const SimulationConfig& cfg, int threads, Fn&& fn) {
  parallel_for(cfg.replications, threads, [&](int rep) {
    const std::uint64_t seed =
        derive_stream(cfg.master_seed, static_cast<std::uint64_t>(rep));
    const BiSample sample = sample_bi(cfg.n, cfg.truth, cfg.alt, seed);
    fn(rep, sample);
  });
}

}  // namespace

void SimulationConfig::validate() const {
  if (n < 1) throw ConfigError("simulation: n must be >= 1");
  if (replications < 1) throw ConfigError("simulation: replications must be >= 1");
  if (truth.mode == TruthAssignment::Mode::kFixed && truth.n0 > n) {
    throw ConfigError("simulation: fixed n0 exceeds n");
  }
  procedure.validate();
}

SimulationReport simulate_fdr(const SimulationConfig& cfg, int threads) {
  cfg.validate();
  std::vector<double> fdps(cfg.replications), powers(cfg.replications),
      estimates(cfg.replications), rejections(cfg.replications);

  for_each_replicate(cfg, threads, [&](int rep, const BiSample& sample) {
    const TestResult res = run_procedure(sample, cfg.procedure);
    const int n_false = sample.n() - sample.n0();
    fdps[rep] = *res.fdp_value;
    powers[rep] = n_false > 0
                      ? static_cast<double>(res.r - *res.v) / n_false
                      : 0.0;
    estimates[rep] = res.estimate;
    rejections[rep] = res.r;
  });

  SimulationReport report;
  report.replications = cfg.replications;
  report.config = cfg;
  report.fdr_hat = mean_of(fdps);
  report.fdr_se = se_of(fdps, report.fdr_hat);
  report.power_hat = mean_of(powers);
  report.mean_estimate = mean_of(estimates);
  report.mean_r = mean_of(rejections);
  return report;
}

double fdp(const TestResult& result) {
  if (!result.v.has_value()) {
    throw ConfigError("fdp: result carries no truth information");
  }
  return static_cast<double>(*result.v) / std::max(result.r, 1);
}

double thm1_integrand(const BiSample& sample, const ProcedureConfig& cfg,
                      bool statement_variant) {
  if (cfg.direction != Direction::kStepUp) {
    throw ConfigError("thm1_integrand: the identity applies to step-up tests");
  }
  cfg.validate();
  if (sample.h.empty()) {
    throw ConfigError("thm1_integrand: sample carries no truth indicators");
  }
  const double lambda = cfg.lambda;
  const int v_lambda = count_true_leq(sample, lambda);
  if (v_lambda == 0) return 0.0;

  const Ecdf e(order(sample.p));
  const int r_lambda = e.count_leq(lambda);
  const double n0_hat = evaluate(cfg.estimator, e, lambda);
  const double numerator = statement_variant ? 1.0 : lambda;
  const double second = r_lambda > 0
                            ? numerator / (r_lambda * cfg.alpha)
                            : std::numeric_limits<double>::infinity();
  return cfg.alpha / lambda * v_lambda * std::min(1.0 / n0_hat, second);
}

VerificationReport verify_thm1_identity(const SimulationConfig& cfg,
                                        bool statement_variant, int threads) {
  cfg.validate();
  std::vector<double> fdps(cfg.replications), integrands(cfg.replications);
  for_each_replicate(cfg, threads, [&](int rep, const BiSample& sample) {
    const TestResult res = run_procedure(sample, cfg.procedure);
    fdps[rep] = *res.fdp_value;
    integrands[rep] = thm1_integrand(sample, cfg.procedure, statement_variant);
  });

  VerificationReport rep;
  rep.check = statement_variant ? "thm1(statement)" : "thm1";
  rep.lhs = mean_of(fdps);
  rep.rhs = mean_of(integrands);
  rep.se_lhs = se_of(fdps, rep.lhs);
  rep.se_rhs = se_of(integrands, rep.rhs);

  // The two means ride the same replicate stream; the paired difference is
  // the right scale for their gap.
  std::vector<double> diffs(cfg.replications);
  for (int i = 0; i < cfg.replications; ++i) diffs[i] = fdps[i] - integrands[i];
  const double d = mean_of(diffs);
  const double se_d = se_of(diffs, d);
  rep.margin = 3.0 * se_d - std::fabs(d);
  rep.pass = rep.margin >= 0.0;
  return rep;
}

VerificationReport check_control_condition(const SimulationConfig& cfg,
                                           int threads) {
  cfg.validate();
  std::vector<double> ratios(cfg.replications);
  for_each_replicate(cfg, threads, [&](int rep, const BiSample& sample) {
    const Ecdf e(order(sample.p));
    const double n0_hat =
        evaluate(cfg.procedure.estimator, e, cfg.procedure.lambda);
    ratios[rep] = count_true_leq(sample, cfg.procedure.lambda) / n0_hat;
  });

  VerificationReport rep;
  rep.check = "condition";
  rep.lhs = mean_of(ratios);
  rep.rhs = cfg.procedure.lambda;
  rep.se_lhs = se_of(ratios, rep.lhs);
  rep.se_rhs = 0.0;
  rep.margin = rep.rhs + 3.0 * rep.se_lhs - rep.lhs;
  rep.pass = rep.margin >= 0.0;
  return rep;
}

VerificationReport lemma2_sides(const SimulationConfig& cfg, int threads) {
  cfg.validate();
  const double lambda = cfg.procedure.lambda;
  const EstimatorSpec& spec = cfg.procedure.estimator;

  std::vector<double> lhs(cfg.replications), rhs(cfg.replications);
  for_each_replicate(cfg, threads, [&](int rep, const BiSample& sample) {
    const Ecdf e(order(sample.p));
    const double n0_hat = evaluate(spec, e, lambda);
    lhs[rep] = count_true_leq(sample, lambda) / n0_hat / lambda;

    double sum = 0.0;
    for (int i = 0; i < sample.n(); ++i) {
      if (sample.h[i] != 0) continue;
      // Tail measurability: zeroing a p-value at or below lambda leaves the
      // estimator untouched.
      const double niz = sample.p[i] <= lambda
                             ? n0_hat
                             : leave_zero_estimate(spec, e, sample.p[i], lambda);
      sum += 1.0 / niz;
    }
    rhs[rep] = sum;
  });

  VerificationReport rep;
  rep.check = "lemma2";
  rep.lhs = mean_of(lhs);
  rep.rhs = mean_of(rhs);
  rep.se_lhs = se_of(lhs, rep.lhs);
  rep.se_rhs = se_of(rhs, rep.rhs);

  std::vector<double> diffs(cfg.replications);
  for (int i = 0; i < cfg.replications; ++i) diffs[i] = lhs[i] - rhs[i];
  const double d = mean_of(diffs);
  const double se_d = se_of(diffs, d);
  rep.margin = 3.0 * se_d - std::fabs(d);
  rep.pass = rep.margin >= 0.0;
  return rep;
}

VerificationReport multinomial_identity(int n, double p1, double p2,
                                        double p3) {
  if (n < 0) throw DomainError("multinomial_identity: n must be >= 0");
  if (n > 60) {
    throw DomainError("multinomial_identity: exact enumeration capped at n = 60");
  }
  if (!(p1 >= 0.0) || !(p2 >= 0.0) || !(p3 > 0.0) ||
      std::fabs(p1 + p2 + p3 - 1.0) > 1e-9) {
    throw DomainError("multinomial_identity: (p1, p2, p3) must lie on the simplex with p3 > 0");
  }

  const long double q1 = p1, q2 = p2, q3 = p3;
  long double lhs = 0.0L;
  // Walk the composition lattice with multiplicative pmf updates; every term
  // costs O(1) and stays at long double precision.
  long double row = std::pow(q3, static_cast<long double>(n));  // T(k1=0, k2=0)
  for (int k1 = 0; k1 <= n; ++k1) {
    if (k1 > 0) {
      row *= (static_cast<long double>(n - k1 + 1) / k1) * (q1 / q3);
    }
    long double term = row;
    for (int k2 = 0; k2 + k1 <= n; ++k2) {
      if (k2 > 0) {
        term *= (static_cast<long double>(n - k1 - k2 + 1) / k2) * (q2 / q3);
      }
      if (k1 > 0) {
        lhs += term * k1 / static_cast<long double>(n + 1 - k1 - k2);
      }
    }
  }
  const long double rhs =
      q1 / q3 * (1.0L - std::pow(q1 + q2, static_cast<long double>(n)));

  VerificationReport rep;
  rep.check = "multinomial";
  rep.lhs = static_cast<double>(lhs);
  rep.rhs = static_cast<double>(rhs);
  rep.margin = 1e-12 - std::fabs(rep.lhs - rep.rhs);
  rep.pass = rep.margin >= 0.0;
  return rep;
}

std::vector<SimulationConfig> table1_configs(int reps, std::uint64_t seed) {
  const std::vector<double> lambdas{0.5, 0.6, 0.7};
  const std::vector<EstimatorSpec> estimators{
      EstimatorSpec::storey(0.5),
      EstimatorSpec::weighted(
          {EstimatorSpec::storey(0.5), EstimatorSpec::storey(0.6),
           EstimatorSpec::storey(0.7)},
          variance_balanced_weights(lambdas)),
      EstimatorSpec::dynamic({0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 1.0}, 0.05, 2),
  };
  const std::vector<AlternativeDistribution> alts{
      AlternativeDistribution::dirac_zero(),
      AlternativeDistribution::normal_shift(1.0),
      AlternativeDistribution::piecewise_d3(),
  };

  std::vector<SimulationConfig> configs;
  for (std::size_t ei = 0; ei < estimators.size(); ++ei) {
    for (std::size_t ai = 0; ai < alts.size(); ++ai) {
      SimulationConfig cfg;
      cfg.n = 1000;
      cfg.truth = TruthAssignment::fixed(600);
      cfg.alt = alts[ai];
      cfg.procedure.alpha = 0.05;
      cfg.procedure.lambda = 0.5;
      cfg.procedure.direction = Direction::kStepUp;
      cfg.procedure.estimator = estimators[ei];
      cfg.replications = reps;
      cfg.master_seed = derive_stream(seed, ei * 3 + ai);
      configs.push_back(std::move(cfg));
    }
  }
  return configs;
}

Table1Report table1(int reps, std::uint64_t seed, int threads) {
  if (reps < 1) throw ConfigError("table1: replications must be >= 1");
  Table1Report report;
  report.estimator_labels = {"storey(0.5)", "weighted(0.5,0.6,0.7)",
                             "dynamic(0.5..1,eps=0.05)"};
  report.alt_labels = {"D1", "D2", "D3"};
  report.replications = reps;
  report.seed = seed;

  const auto configs = table1_configs(reps, seed);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const SimulationReport sim = simulate_fdr(configs[i], threads);
    report.fdr[i / 3][i % 3] = sim.fdr_hat;
    report.se[i / 3][i % 3] = sim.fdr_se;
  }
  return report;
}

}  // namespace fdrlab
