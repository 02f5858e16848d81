#include "fdrlab/report_json.hpp"

#include <vector>

#include "fdrlab/errors.hpp"
#include "fdrlab/spec_parse.hpp"

namespace fdrlab {
namespace {

json truth_to_json(const TruthAssignment& truth) {
  json j;
  if (truth.mode == TruthAssignment::Mode::kFixed) {
    j["mode"] = "fixed";
    j["n0"] = truth.n0;
  } else {
    j["mode"] = "bernoulli";
    j["pi0"] = truth.pi0;
  }
  return j;
}

std::string direction_to_string(Direction d) {
  return d == Direction::kStepUp ? "su" : "sd";
}

std::string tie_to_string(TieVariant t) {
  return t == TieVariant::kStandard ? "standard" : "modified";
}

}  // namespace

json to_json(const TestResult& result) {
  json j;
  j["r"] = result.r;
  j["rejected"] = result.rejected;
  j["threshold"] = result.threshold;
  j["estimate"] = result.estimate;
  if (result.v.has_value()) {
    j["v"] = *result.v;
    j["fdp"] = *result.fdp_value;
  }
  return j;
}

json to_json(const SimulationConfig& cfg) {
  json j;
  j["n"] = cfg.n;
  j["truth"] = truth_to_json(cfg.truth);
  j["alt"] = alt_to_string(cfg.alt);
  j["alpha"] = cfg.procedure.alpha;
  j["lambda"] = cfg.procedure.lambda;
  j["direction"] = direction_to_string(cfg.procedure.direction);
  j["tie_variant"] = tie_to_string(cfg.procedure.tie_variant);
  j["estimator"] = estimator_to_string(cfg.procedure.estimator);
  j["replications"] = cfg.replications;
  j["master_seed"] = cfg.master_seed;
  return j;
}

json to_json(const SimulationReport& report) {
  json j;
  j["fdr_hat"] = report.fdr_hat;
  j["fdr_se"] = report.fdr_se;
  j["power_hat"] = report.power_hat;
  j["mean_estimate"] = report.mean_estimate;
  j["mean_r"] = report.mean_r;
  j["replications"] = report.replications;
  j["config"] = to_json(report.config);
  return j;
}

json to_json(const VerificationReport& report) {
  json j;
  j["check"] = report.check;
  j["lhs"] = report.lhs;
  j["rhs"] = report.rhs;
  j["se_lhs"] = report.se_lhs;
  j["se_rhs"] = report.se_rhs;
  j["pass"] = report.pass;
  j["margin"] = report.margin;
  return j;
}

json to_json(const Table1Report& report) {
  json j;
  j["replications"] = report.replications;
  j["seed"] = report.seed;
  j["estimators"] = report.estimator_labels;
  j["alternatives"] = report.alt_labels;
  json rows = json::array();
  for (std::size_t ei = 0; ei < 3; ++ei) {
    json row;
    row["estimator"] = report.estimator_labels[ei];
    json fdr = json::array(), se = json::array();
    for (std::size_t ai = 0; ai < 3; ++ai) {
      fdr.push_back(report.fdr[ei][ai]);
      se.push_back(report.se[ei][ai]);
    }
    row["fdr"] = fdr;
    row["se"] = se;
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

namespace {

struct KeyChecker {
  const json& j;
  std::string scope;
  std::vector<std::string>& problems;
  std::vector<std::string> known;

  bool has(const std::string& key) { return j.contains(key); }

  const json* require(const std::string& key) {
    known.push_back(key);
    if (!j.contains(key)) {
      problems.push_back(scope + ": missing required key '" + key + "'");
      return nullptr;
    }
    return &j.at(key);
  }

  const json* optional(const std::string& key) {
    known.push_back(key);
    return j.contains(key) ? &j.at(key) : nullptr;
  }

  ~KeyChecker() {
    if (!j.is_object()) return;
    for (const auto& [key, value] : j.items()) {
      bool ok = false;
      for (const auto& k : known) ok = ok || (k == key);
      if (!ok) problems.push_back(scope + ": unknown key '" + key + "'");
    }
  }
};

}  // namespace

SimulationConfig simulation_config_from_json(const json& j, int* threads) {
  std::vector<std::string> problems;
  SimulationConfig cfg;

  if (!j.is_object()) {
    throw ConfigError("config: top level must be a JSON object");
  }

  {
    KeyChecker top{j, "config", problems, {}};
    if (const json* v = top.require("n")) {
      if (v->is_number_integer()) cfg.n = v->get<int>();
      else problems.push_back("config: 'n' must be an integer");
    }
    if (const json* v = top.require("truth")) {
      if (v->is_object()) {
        KeyChecker truth{*v, "config.truth", problems, {}};
        std::string mode;
        if (const json* m = truth.require("mode")) {
          if (m->is_string()) mode = m->get<std::string>();
          else problems.push_back("config.truth: 'mode' must be a string");
        }
        if (mode == "fixed") {
          if (const json* n0 = truth.require("n0")) {
            try {
              cfg.truth = TruthAssignment::fixed(n0->get<int>());
            } catch (const Error& err) {
              problems.push_back(err.what());
            }
          }
          truth.optional("pi0");  // reject below as unknown only when absent
          if (v->contains("pi0")) {
            problems.push_back("config.truth: 'pi0' does not apply to fixed mode");
          }
        } else if (mode == "bernoulli") {
          if (const json* pi0 = truth.require("pi0")) {
            try {
              cfg.truth = TruthAssignment::bernoulli(pi0->get<double>());
            } catch (const Error& err) {
              problems.push_back(err.what());
            }
          }
          truth.optional("n0");
          if (v->contains("n0")) {
            problems.push_back("config.truth: 'n0' does not apply to bernoulli mode");
          }
        } else if (!mode.empty()) {
          problems.push_back("config.truth: mode must be 'fixed' or 'bernoulli'");
        }
      } else {
        problems.push_back("config: 'truth' must be an object");
      }
    }
    if (const json* v = top.require("alt")) {
      if (v->is_string()) {
        try {
          cfg.alt = parse_alt(v->get<std::string>());
        } catch (const IoError&) {
          throw;  // a bad table path is an I/O problem, not a config typo
        } catch (const Error& err) {
          problems.push_back(std::string("config.alt: ") + err.what());
        }
      } else {
        problems.push_back("config: 'alt' must be a distribution string");
      }
    }
    if (const json* v = top.require("alpha")) {
      if (v->is_number()) cfg.procedure.alpha = v->get<double>();
      else problems.push_back("config: 'alpha' must be a number");
    }
    if (const json* v = top.require("lambda")) {
      if (v->is_number()) cfg.procedure.lambda = v->get<double>();
      else problems.push_back("config: 'lambda' must be a number");
    }
    if (const json* v = top.optional("direction")) {
      const std::string d = v->is_string() ? v->get<std::string>() : "";
      if (d == "su") cfg.procedure.direction = Direction::kStepUp;
      else if (d == "sd") cfg.procedure.direction = Direction::kStepDown;
      else problems.push_back("config: 'direction' must be 'su' or 'sd'");
    }
    if (const json* v = top.optional("tie_variant")) {
      const std::string t = v->is_string() ? v->get<std::string>() : "";
      if (t == "standard") cfg.procedure.tie_variant = TieVariant::kStandard;
      else if (t == "modified") cfg.procedure.tie_variant = TieVariant::kModified;
      else problems.push_back("config: 'tie_variant' must be 'standard' or 'modified'");
    }
    if (const json* v = top.require("estimator")) {
      if (v->is_string()) {
        try {
          cfg.procedure.estimator = parse_estimator(v->get<std::string>());
        } catch (const Error& err) {
          problems.push_back(std::string("config.estimator: ") + err.what());
        }
      } else {
        problems.push_back("config: 'estimator' must be an estimator string");
      }
    }
    if (const json* v = top.require("replications")) {
      if (v->is_number_integer()) cfg.replications = v->get<int>();
      else problems.push_back("config: 'replications' must be an integer");
    }
    if (const json* v = top.require("master_seed")) {
      if (v->is_number_integer()) cfg.master_seed = v->get<std::uint64_t>();
      else problems.push_back("config: 'master_seed' must be an integer");
    }
    if (const json* v = top.optional("threads")) {
      if (v->is_number_integer()) {
        if (threads) *threads = v->get<int>();
      } else {
        problems.push_back("config: 'threads' must be an integer");
      }
    }
  }

  if (problems.empty()) {
    try {
      cfg.validate();
    } catch (const Error& err) {
      problems.push_back(err.what());
    }
  }
  if (!problems.empty()) {
    std::string message = "invalid configuration:";
    for (const auto& p : problems) message += "\n  - " + p;
    throw ConfigError(message);
  }
  return cfg;
}

}  // namespace fdrlab
