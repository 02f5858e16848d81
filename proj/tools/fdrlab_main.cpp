// fdrlab command line: apply adaptive FDR procedures to p-value files, run
// seeded simulations and verification suites, and emit plot-ready curves.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fdrlab/analysis.hpp"
#include "fdrlab/errors.hpp"
#include "fdrlab/report_json.hpp"
#include "fdrlab/spec_parse.hpp"

namespace {

using fdrlab::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

// Outputs are rendered fully before anything touches the filesystem, so a
// failing run leaves no partial file behind.
void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw fdrlab::IoError("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw fdrlab::IoError("cannot write output file '" + path + "'");
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

fdrlab::Direction parse_direction(const std::string& s) {
  if (s == "su") return fdrlab::Direction::kStepUp;
  if (s == "sd") return fdrlab::Direction::kStepDown;
  throw fdrlab::ConfigError("direction must be 'su' or 'sd'");
}

fdrlab::TieVariant parse_tie(const std::string& s) {
  if (s == "standard") return fdrlab::TieVariant::kStandard;
  if (s == "modified") return fdrlab::TieVariant::kModified;
  throw fdrlab::ConfigError("tie variant must be 'standard' or 'modified'");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fdrlab::IoError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& err) {
    throw fdrlab::IoError("config file '" + path + "': " + err.what());
  }
}

struct TestArgs {
  std::string pvalues_path;
  double alpha = 0.05;
  double lambda = 0.5;
  std::string estimator = "bh";
  std::string direction = "su";
  std::string tie = "standard";
  std::string out_path;
};

int cmd_test(const TestArgs& args) {
  fdrlab::ProcedureConfig cfg;
  cfg.alpha = args.alpha;
  cfg.lambda = args.lambda;
  cfg.direction = parse_direction(args.direction);
  cfg.tie_variant = parse_tie(args.tie);
  cfg.estimator = fdrlab::parse_estimator(args.estimator);
  cfg.validate();

  const auto file = fdrlab::load_pvalues_csv(args.pvalues_path);
  fdrlab::BiSample sample;
  sample.p = file.p;
  sample.h = file.h;
  const auto result = fdrlab::run_procedure(sample, cfg);

  std::printf("n          : %d\n", sample.n());
  std::printf("estimator  : %s\n", args.estimator.c_str());
  std::printf("n0_hat     : %.6g\n", result.estimate);
  std::printf("rejections : %d\n", result.r);
  std::printf("threshold  : %.6g\n", result.threshold);
  if (result.v.has_value()) {
    std::printf("V          : %d\n", *result.v);
    std::printf("FDP        : %.6g\n", *result.fdp_value);
  }
  std::printf("rejected   :");
  for (std::size_t i = 0; i < result.rejected.size(); ++i) {
    if (i == 50) {
      std::printf(" ... (%zu more)", result.rejected.size() - 50);
      break;
    }
    std::printf(" %d", result.rejected[i]);
  }
  std::printf("\n");

  if (!args.out_path.empty()) {
    json j = fdrlab::to_json(result);
    j["n"] = sample.n();
    j["estimator"] = args.estimator;
    j["alpha"] = args.alpha;
    j["lambda"] = args.lambda;
    j["direction"] = args.direction;
    j["tie_variant"] = args.tie;
    write_text(args.out_path, dump_json(j));
  }
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 int threads_flag) {
  int threads = threads_flag;
  const auto cfg = fdrlab::simulation_config_from_json(
      load_json_file(config_path), threads_flag > 0 ? nullptr : &threads);
  const auto report = fdrlab::simulate_fdr(cfg, threads);

  std::printf("replications  : %d\n", report.replications);
  std::printf("fdr_hat       : %.6f (se %.6f)\n", report.fdr_hat, report.fdr_se);
  std::printf("power_hat     : %.6f\n", report.power_hat);
  std::printf("mean_estimate : %.4f\n", report.mean_estimate);
  std::printf("mean_r        : %.4f\n", report.mean_r);

  if (!out_path.empty()) write_text(out_path, dump_json(fdrlab::to_json(report)));
  return kExitOk;
}

int cmd_table1(int reps, std::uint64_t seed, const std::string& out_path,
               int threads) {
  const auto report = fdrlab::table1(reps, seed, threads);

  std::printf("%-26s %10s %10s %10s\n", "estimator", "D1", "D2", "D3");
  for (int e = 0; e < 3; ++e) {
    std::printf("%-26s", report.estimator_labels[e].c_str());
    for (int a = 0; a < 3; ++a) std::printf(" %10.4f", report.fdr[e][a]);
    std::printf("\n%-26s", "  (se)");
    for (int a = 0; a < 3; ++a) std::printf(" %10.4f", report.se[e][a]);
    std::printf("\n");
  }

  if (!out_path.empty()) {
    std::ostringstream csv;
    csv << "estimator,D1_fdr,D1_se,D2_fdr,D2_se,D3_fdr,D3_se\n";
    for (int e = 0; e < 3; ++e) {
      csv << report.estimator_labels[e];
      for (int a = 0; a < 3; ++a) {
        char buf[64];
        std::snprintf(buf, sizeof buf, ",%.6f,%.6f", report.fdr[e][a],
                      report.se[e][a]);
        csv << buf;
      }
      csv << "\n";
    }
    write_text(out_path, csv.str());
  }
  return kExitOk;
}

int report_verification(const fdrlab::VerificationReport& rep,
                        const std::string& out_path) {
  std::printf("check : %s\n", rep.check.c_str());
  std::printf("lhs   : %.8g (se %.3g)\n", rep.lhs, rep.se_lhs);
  std::printf("rhs   : %.8g (se %.3g)\n", rep.rhs, rep.se_rhs);
  std::printf("margin: %.3g\n", rep.margin);
  std::printf("%s\n", rep.pass ? "PASS" : "FAIL");
  if (!out_path.empty()) write_text(out_path, dump_json(fdrlab::to_json(rep)));
  return rep.pass ? kExitOk : kExitVerifyFailed;
}

int cmd_curves(const std::string& alt_spec, const std::string& pvalues_path,
               const std::string& out_path) {
  std::ostringstream csv;
  csv << "t,F\n";
  char buf[64];
  if (!alt_spec.empty()) {
    const auto alt = fdrlab::parse_alt(alt_spec);
    for (int i = 1; i <= 512; ++i) {
      const double t = static_cast<double>(i) / 512.0;
      std::snprintf(buf, sizeof buf, "%.9f,%.9f\n", t, fdrlab::alt_cdf(alt, t));
      csv << buf;
    }
  } else {
    const auto file = fdrlab::load_pvalues_csv(pvalues_path);
    const fdrlab::Ecdf e(fdrlab::order(file.p));
    for (int i = 1; i <= 512; ++i) {
      const double t = static_cast<double>(i) / 512.0;
      std::snprintf(buf, sizeof buf, "%.9f,%.9f\n", t, e.eval(t));
      csv << buf;
    }
  }
  write_text(out_path, csv.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive multiple testing with finite-sample FDR control"};
  app.require_subcommand(1);

  TestArgs test_args;
  auto* test = app.add_subcommand("test", "run a procedure on a p-value file");
  test->add_option("-i,--pvalues", test_args.pvalues_path,
                   "CSV with a 'p' column and optional 'h' column")
      ->required();
  test->add_option("--alpha", test_args.alpha, "FDR level");
  test->add_option("--lambda", test_args.lambda, "tuning parameter");
  test->add_option("--estimator", test_args.estimator,
                   "estimator spec (bh, storey:..., gstorey:..., weighted:[...], dynamic:...)");
  test->add_option("--direction", test_args.direction, "su or sd");
  test->add_option("--tie", test_args.tie, "standard or modified (sd only)");
  test->add_option("-o,--out", test_args.out_path, "JSON report path");

  std::string config_path, out_path;
  int threads = 0;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo FDR estimation");
  simulate->add_option("--config", config_path, "JSON run configuration")->required();
  simulate->add_option("-o,--out", out_path, "JSON report path");
  simulate->add_option("--threads", threads, "worker cap (default: all cores)");

  int reps = 10000;
  std::uint64_t seed = 1;
  std::string table_out;
  int table_threads = 0;
  auto* table = app.add_subcommand("table1", "reproduce the 3x3 FDR simulation grid");
  table->add_option("--reps", reps, "replications per cell");
  table->add_option("--seed", seed, "master seed");
  table->add_option("-o,--out", table_out, "CSV output path");
  table->add_option("--threads", table_threads, "worker cap");

  std::string verify_suite, verify_config, verify_out;
  int verify_threads = 0;
  bool statement_variant = false;
  int multi_n = 0;
  std::string multi_p;
  auto* verify = app.add_subcommand("verify", "run one verification suite");
  verify->add_option("suite", verify_suite, "thm1 | condition | lemma2 | multinomial")
      ->required();
  verify->add_option("--config", verify_config, "JSON run configuration");
  verify->add_flag("--statement", statement_variant,
                   "thm1: use the statement form of the identity");
  verify->add_option("--n", multi_n, "multinomial: number of trials");
  verify->add_option("--p", multi_p, "multinomial: p1,p2,p3");
  verify->add_option("-o,--out", verify_out, "JSON report path");
  verify->add_option("--threads", verify_threads, "worker cap");

  std::string curves_alt, curves_pvalues, curves_out;
  auto* curves = app.add_subcommand("curves", "emit cdf/ecdf curves as CSV");
  curves->add_option("--alt", curves_alt, "distribution spec (d1, d2:mu=..., d3, table:...)");
  curves->add_option("--pvalues", curves_pvalues, "CSV p-value file for an ecdf curve");
  curves->add_option("-o,--out", curves_out, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*test) return cmd_test(test_args);
    if (*simulate) return cmd_simulate(config_path, out_path, threads);
    if (*table) return cmd_table1(reps, seed, table_out, table_threads);
    if (*verify) {
      if (verify_suite == "multinomial") {
        std::vector<double> ps;
        std::stringstream ss(multi_p);
        std::string item;
        while (std::getline(ss, item, ',')) {
          try {
            ps.push_back(std::stod(item));
          } catch (const std::exception&) {
            throw fdrlab::ConfigError("multinomial: cannot parse '" + item + "'");
          }
        }
        if (ps.size() != 3) {
          throw fdrlab::ConfigError("multinomial: --p expects p1,p2,p3");
        }
        return report_verification(
            fdrlab::multinomial_identity(multi_n, ps[0], ps[1], ps[2]),
            verify_out);
      }
      if (verify_config.empty()) {
        throw fdrlab::ConfigError("verify " + verify_suite + ": --config is required");
      }
      int t = verify_threads;
      const auto cfg = fdrlab::simulation_config_from_json(
          load_json_file(verify_config), verify_threads > 0 ? nullptr : &t);
      if (verify_suite == "thm1") {
        return report_verification(
            fdrlab::verify_thm1_identity(cfg, statement_variant, t), verify_out);
      }
      if (verify_suite == "condition") {
        return report_verification(fdrlab::check_control_condition(cfg, t),
                                   verify_out);
      }
      if (verify_suite == "lemma2") {
        return report_verification(fdrlab::lemma2_sides(cfg, t), verify_out);
      }
      throw fdrlab::ConfigError("unknown verify suite '" + verify_suite + "'");
    }
    if (*curves) {
      if (curves_alt.empty() == curves_pvalues.empty()) {
        throw fdrlab::ConfigError("curves: pass exactly one of --alt or --pvalues");
      }
      return cmd_curves(curves_alt, curves_pvalues, curves_out);
    }
  } catch (const fdrlab::IoError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitIo;
  } catch (const fdrlab::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
