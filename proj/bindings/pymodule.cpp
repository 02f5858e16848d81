// Python bindings for the main operations: sampling, estimators, stepwise
// tests, and the Monte Carlo verification suites.

#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fdrlab/analysis.hpp"
#include "fdrlab/normal.hpp"
#include "fdrlab/report_json.hpp"
#include "fdrlab/spec_parse.hpp"

namespace py = pybind11;
using namespace fdrlab;

namespace {

BiSample sample_from(const std::vector<double>& p,
                     const std::optional<std::vector<int>>& h) {
  BiSample s;
  s.p = p;
  if (h.has_value()) {
    if (h->size() != p.size()) {
      throw ConfigError("h must match the length of p");
    }
    s.h.reserve(h->size());
    for (const int v : *h) {
      if (v != 0 && v != 1) throw ConfigError("h entries must be 0 or 1");
      s.h.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return s;
}

ProcedureConfig make_procedure(double alpha, double lambda,
                               const std::string& estimator,
                               const std::string& direction,
                               const std::string& tie_variant) {
  ProcedureConfig cfg;
  cfg.alpha = alpha;
  cfg.lambda = lambda;
  cfg.estimator = parse_estimator(estimator);
  if (direction == "su") {
    cfg.direction = Direction::kStepUp;
  } else if (direction == "sd") {
    cfg.direction = Direction::kStepDown;
  } else {
    throw ConfigError("direction must be 'su' or 'sd'");
  }
  if (tie_variant == "standard") {
    cfg.tie_variant = TieVariant::kStandard;
  } else if (tie_variant == "modified") {
    cfg.tie_variant = TieVariant::kModified;
  } else {
    throw ConfigError("tie_variant must be 'standard' or 'modified'");
  }
  return cfg;
}

TruthAssignment make_truth(const std::optional<int>& n0,
                           const std::optional<double>& pi0) {
  if (n0.has_value() == pi0.has_value()) {
    throw ConfigError("pass exactly one of n0 or pi0");
  }
  return n0.has_value() ? TruthAssignment::fixed(*n0)
                        : TruthAssignment::bernoulli(*pi0);
}

py::dict result_to_dict(const TestResult& r) {
  py::dict d;
  d["r"] = r.r;
  d["rejected"] = r.rejected;
  d["threshold"] = r.threshold;
  d["estimate"] = r.estimate;
  if (r.v.has_value()) {
    d["v"] = *r.v;
    d["fdp"] = *r.fdp_value;
  }
  return d;
}

py::dict verification_to_dict(const VerificationReport& r) {
  py::dict d;
  d["check"] = r.check;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["se_lhs"] = r.se_lhs;
  d["se_rhs"] = r.se_rhs;
  d["pass"] = r.pass;
  d["margin"] = r.margin;
  return d;
}

SimulationConfig make_sim_config(int n, const std::optional<int>& n0,
                                 const std::optional<double>& pi0,
                                 const std::string& alt, double alpha,
                                 double lambda, const std::string& estimator,
                                 const std::string& direction,
                                 const std::string& tie_variant,
                                 int replications, std::uint64_t master_seed) {
  SimulationConfig cfg;
  cfg.n = n;
  cfg.truth = make_truth(n0, pi0);
  cfg.alt = parse_alt(alt);
  cfg.procedure = make_procedure(alpha, lambda, estimator, direction, tie_variant);
  cfg.replications = replications;
  cfg.master_seed = master_seed;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_fdrlab, m) {
  m.doc() = "Adaptive step-up/step-down multiple tests with finite-sample "
            "FDR control";

  py::register_exception<IoError>(m, "FdrlabIoError", PyExc_OSError);
  py::register_exception<Error>(m, "FdrlabError", PyExc_ValueError);

  m.def("std_normal_cdf", &std_normal_cdf, py::arg("x"));
  m.def("std_normal_quantile", &std_normal_quantile, py::arg("u"));

  m.def(
      "alt_cdf",
      [](const std::string& alt, double t) { return alt_cdf(parse_alt(alt), t); },
      py::arg("alt"), py::arg("t"),
      "Distribution function of a false-p-value spec such as 'd2:mu=1'");
  m.def(
      "alt_quantile",
      [](const std::string& alt, double u) {
        return alt_quantile(parse_alt(alt), u);
      },
      py::arg("alt"), py::arg("u"));

  m.def(
      "sample_bi",
      [](int n, const std::optional<int>& n0, const std::optional<double>& pi0,
         const std::string& alt, std::uint64_t seed) {
        const auto s = sample_bi(n, make_truth(n0, pi0), parse_alt(alt), seed);
        return py::make_tuple(s.p, std::vector<int>(s.h.begin(), s.h.end()));
      },
      py::arg("n"), py::arg("n0") = std::nullopt, py::arg("pi0") = std::nullopt,
      py::arg("alt") = "d1", py::arg("seed") = 0,
      "Draw (p, h) from the basic independence model");

  m.def(
      "storey_estimate",
      [](const std::vector<double>& p, double lambda1) {
        return storey_estimate(Ecdf(order(p)), lambda1);
      },
      py::arg("p"), py::arg("lambda1"));
  m.def(
      "gstorey_estimate",
      [](const std::vector<double>& p, double lambda1, double gamma1,
         bool corrected) {
        return gstorey_estimate(Ecdf(order(p)), lambda1, gamma1, corrected);
      },
      py::arg("p"), py::arg("lambda1"), py::arg("gamma1"),
      py::arg("corrected") = false);
  m.def(
      "estimate",
      [](const std::vector<double>& p, const std::string& estimator,
         double lambda) {
        return evaluate(parse_estimator(estimator), Ecdf(order(p)), lambda);
      },
      py::arg("p"), py::arg("estimator"), py::arg("lambda") = 0.0,
      "Evaluate an estimator spec string on a p-value sample");
  m.def("variance_balanced_weights",
        [](const std::vector<double>& lambdas) {
          return variance_balanced_weights(lambdas);
        },
        py::arg("lambdas"));
  m.def(
      "dynamic_trace",
      [](const std::vector<double>& p, const std::vector<double>& grid,
         double epsilon, int fixed_tail) {
        const auto spec = EstimatorSpec::dynamic(grid, epsilon, fixed_tail);
        const auto tr = dynamic_trace(spec, Ecdf(order(p)));
        py::dict d;
        d["interval_estimates"] = tr.interval_estimates;
        d["anchor"] = tr.anchor;
        d["case1_index"] = tr.case1_index;  // 0 means case 2
        d["weights"] = tr.weights;
        return d;
      },
      py::arg("p"), py::arg("grid"), py::arg("epsilon") = 0.05,
      py::arg("fixed_tail") = 2,
      "Interval estimates, anchor, case, and weights of the backward scan");

  m.def(
      "critical_values",
      [](int n, double alpha, double lambda, double n0_hat) {
        return critical_values(n, alpha, lambda, n0_hat);
      },
      py::arg("n"), py::arg("alpha"), py::arg("lambda"), py::arg("n0_hat"));

  m.def(
      "run_test",
      [](const std::vector<double>& p, const std::optional<std::vector<int>>& h,
         double alpha, double lambda, const std::string& estimator,
         const std::string& direction, const std::string& tie_variant) {
        const auto cfg =
            make_procedure(alpha, lambda, estimator, direction, tie_variant);
        return result_to_dict(run_procedure(sample_from(p, h), cfg));
      },
      py::arg("p"), py::arg("h") = std::nullopt, py::arg("alpha") = 0.05,
      py::arg("lambda") = 0.5, py::arg("estimator") = "bh",
      py::arg("direction") = "su", py::arg("tie_variant") = "standard",
      "Run an adaptive step-up/step-down test on a p-value sample");

  m.def(
      "simulate_fdr",
      [](int n, const std::optional<int>& n0, const std::optional<double>& pi0,
         const std::string& alt, double alpha, double lambda,
         const std::string& estimator, const std::string& direction,
         const std::string& tie_variant, int replications,
         std::uint64_t master_seed, int threads) {
        const auto cfg =
            make_sim_config(n, n0, pi0, alt, alpha, lambda, estimator,
                            direction, tie_variant, replications, master_seed);
        const auto rep = simulate_fdr(cfg, threads);
        py::dict d;
        d["fdr_hat"] = rep.fdr_hat;
        d["fdr_se"] = rep.fdr_se;
        d["power_hat"] = rep.power_hat;
        d["mean_estimate"] = rep.mean_estimate;
        d["mean_r"] = rep.mean_r;
        d["replications"] = rep.replications;
        return d;
      },
      py::arg("n"), py::arg("n0") = std::nullopt, py::arg("pi0") = std::nullopt,
      py::arg("alt") = "d1", py::arg("alpha") = 0.05, py::arg("lambda") = 0.5,
      py::arg("estimator") = "storey:0.5", py::arg("direction") = "su",
      py::arg("tie_variant") = "standard", py::arg("replications") = 1000,
      py::arg("master_seed") = 0, py::arg("threads") = 0);

  m.def(
      "verify",
      [](const std::string& suite, int n, const std::optional<int>& n0,
         const std::optional<double>& pi0, const std::string& alt, double alpha,
         double lambda, const std::string& estimator, int replications,
         std::uint64_t master_seed, int threads, bool statement_variant) {
        const auto cfg = make_sim_config(n, n0, pi0, alt, alpha, lambda,
                                         estimator, "su", "standard",
                                         replications, master_seed);
        if (suite == "thm1") {
          return verification_to_dict(
              verify_thm1_identity(cfg, statement_variant, threads));
        }
        if (suite == "condition") {
          return verification_to_dict(check_control_condition(cfg, threads));
        }
        if (suite == "lemma2") {
          return verification_to_dict(lemma2_sides(cfg, threads));
        }
        throw ConfigError("unknown verify suite '" + suite + "'");
      },
      py::arg("suite"), py::arg("n"), py::arg("n0") = std::nullopt,
      py::arg("pi0") = std::nullopt, py::arg("alt") = "d1",
      py::arg("alpha") = 0.05, py::arg("lambda") = 0.5,
      py::arg("estimator") = "storey:0.5", py::arg("replications") = 1000,
      py::arg("master_seed") = 0, py::arg("threads") = 0,
      py::arg("statement_variant") = false,
      "Monte Carlo verification: 'thm1', 'condition', or 'lemma2'");

  m.def(
      "verify_multinomial",
      [](int n, double p1, double p2, double p3) {
        return verification_to_dict(multinomial_identity(n, p1, p2, p3));
      },
      py::arg("n"), py::arg("p1"), py::arg("p2"), py::arg("p3"));

  m.def(
      "table1",
      [](int reps, std::uint64_t seed, int threads) {
        const auto rep = table1(reps, seed, threads);
        py::dict d;
        d["estimators"] = rep.estimator_labels;
        d["alternatives"] = rep.alt_labels;
        py::list fdr, se;
        for (int e = 0; e < 3; ++e) {
          py::list frow, srow;
          for (int a = 0; a < 3; ++a) {
            frow.append(rep.fdr[e][a]);
            srow.append(rep.se[e][a]);
          }
          fdr.append(frow);
          se.append(srow);
        }
        d["fdr"] = fdr;
        d["se"] = se;
        d["replications"] = rep.replications;
        d["seed"] = rep.seed;
        return d;
      },
      py::arg("reps") = 10000, py::arg("seed") = 1, py::arg("threads") = 0,
      "The 3x3 simulation grid: estimators x alternatives");
}
