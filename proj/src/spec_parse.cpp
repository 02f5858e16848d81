#include "fdrlab/spec_parse.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fdrlab/errors.hpp"

namespace fdrlab {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_real(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double value = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || t.empty()) {
    throw ConfigError("cannot parse " + what + " from '" + text + "'");
  }
  return value;
}

int parse_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("cannot parse " + what + " from '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> parse_real_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_real(item, what));
  return out;
}

// Splits the weighted component list on top-level ';'. Pieces without a '*'
// belong to the previous component (a dynamic component carries ';' itself).
std::vector<std::string> split_components(const std::string& body) {
  std::vector<std::string> items;
  int depth = 0;
  std::string cur;
  for (const char c : body) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ';' && depth == 0) {
      items.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  items.push_back(cur);

  std::vector<std::string> merged;
  for (auto& item : items) {
    if (!merged.empty() && item.find('*') == std::string::npos) {
      merged.back() += ';' + item;
    } else {
      merged.push_back(item);
    }
  }
  return merged;
}

EstimatorSpec parse_dynamic(const std::string& args) {
  std::vector<double> grid;
  double eps = 0.0;
  int tail = 2;
  bool have_grid = false, have_eps = false;
  for (const auto& part : split(args, ';')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("dynamic estimator: expected key=value, got '" + part + "'");
    }
    const std::string key = trim(part.substr(0, eq));
    const std::string value = part.substr(eq + 1);
    if (key == "grid") {
      grid = parse_real_list(value, "dynamic grid entry");
      have_grid = true;
    } else if (key == "eps") {
      eps = parse_real(value, "dynamic eps");
      have_eps = true;
    } else if (key == "tail") {
      tail = parse_int(value, "dynamic tail");
    } else {
      throw ConfigError("dynamic estimator: unknown key '" + key + "'");
    }
  }
  if (!have_grid || !have_eps) {
    throw ConfigError("dynamic estimator: grid= and eps= are required");
  }
  return EstimatorSpec::dynamic(std::move(grid), eps, tail);
}

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

EstimatorSpec parse_estimator(const std::string& text) {
  const std::string s = trim(text);
  if (s == "bh") return EstimatorSpec::bh();

  const auto colon = s.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("estimator: cannot parse '" + s + "'");
  }
  const std::string head = s.substr(0, colon);
  const std::string args = s.substr(colon + 1);

  if (head == "storey") {
    return EstimatorSpec::storey(parse_real(args, "storey lambda1"));
  }
  if (head == "gstorey") {
    auto parts = split(args, ',');
    if (parts.size() < 2 || parts.size() > 3) {
      throw ConfigError("gstorey estimator: expected <l1>,<g1>[,corrected]");
    }
    bool corrected = false;
    if (parts.size() == 3) {
      if (trim(parts[2]) != "corrected") {
        throw ConfigError("gstorey estimator: third argument must be 'corrected'");
      }
      corrected = true;
    }
    return EstimatorSpec::gstorey(parse_real(parts[0], "gstorey lambda1"),
                                  parse_real(parts[1], "gstorey gamma1"),
                                  corrected);
  }
  if (head == "weighted") {
    const std::string body = trim(args);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
      throw ConfigError("weighted estimator: expected weighted:[<w>*<spec>;...]");
    }
    std::vector<EstimatorSpec> components;
    std::vector<double> weights;
    for (const auto& item : split_components(body.substr(1, body.size() - 2))) {
      const auto star = item.find('*');
      if (star == std::string::npos) {
        throw ConfigError("weighted estimator: component '" + item +
                          "' is missing the <weight>* prefix");
      }
      weights.push_back(parse_real(item.substr(0, star), "component weight"));
      components.push_back(parse_estimator(item.substr(star + 1)));
    }
    return EstimatorSpec::weighted(std::move(components), std::move(weights));
  }
  if (head == "dynamic") {
    return parse_dynamic(args);
  }
  throw ConfigError("estimator: unknown kind '" + head + "'");
}

std::string estimator_to_string(const EstimatorSpec& spec) {
  switch (spec.kind) {
    case EstimatorSpec::Kind::kBh:
      return "bh";
    case EstimatorSpec::Kind::kStorey:
      return "storey:" + format_real(spec.lambda1);
    case EstimatorSpec::Kind::kGStorey: {
      std::string out = "gstorey:" + format_real(spec.lambda1) + "," +
                        format_real(spec.gamma1);
      if (spec.corrected) out += ",corrected";
      return out;
    }
    case EstimatorSpec::Kind::kWeighted: {
      std::string out = "weighted:[";
      for (std::size_t i = 0; i < spec.components.size(); ++i) {
        if (i > 0) out += ';';
        out += format_real(spec.weights[i]) + "*" +
               estimator_to_string(spec.components[i]);
      }
      return out + "]";
    }
    case EstimatorSpec::Kind::kDynamic: {
      std::string out = "dynamic:grid=";
      for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        if (i > 0) out += ',';
        out += format_real(spec.grid[i]);
      }
      out += ";eps=" + format_real(spec.epsilon);
      out += ";tail=" + std::to_string(spec.fixed_tail);
      return out;
    }
  }
  throw ConfigError("estimator_to_string: unknown kind");
}

namespace {

AlternativeDistribution load_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open table file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) {
    throw IoError("table file '" + path + "' is empty");
  }
  auto header = split(trim(line), ',');
  if (header.size() != 2 || trim(header[0]) != "t" || trim(header[1]) != "F1") {
    throw IoError("table file '" + path + "': expected header 't,F1'");
  }
  std::vector<double> ts, Fs;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != 2) {
      throw IoError("table file '" + path + "' line " + std::to_string(lineno) +
                    ": expected two columns");
    }
    try {
      ts.push_back(parse_real(cells[0], "t"));
      Fs.push_back(parse_real(cells[1], "F1"));
    } catch (const ConfigError& err) {
      throw IoError("table file '" + path + "' line " + std::to_string(lineno) +
                    ": " + err.what());
    }
  }
  try {
    return AlternativeDistribution::table(std::move(ts), std::move(Fs));
  } catch (const ConfigError& err) {
    throw IoError("table file '" + path + "': " + err.what());
  }
}

}  // namespace

AlternativeDistribution parse_alt(const std::string& text) {
  const std::string s = trim(text);
  if (s == "d1") return AlternativeDistribution::dirac_zero();
  if (s == "d2") return AlternativeDistribution::normal_shift(1.0);
  if (s == "d3") return AlternativeDistribution::piecewise_d3();
  if (s == "uniform") return AlternativeDistribution::uniform();
  if (s.rfind("d2:", 0) == 0) {
    const std::string args = s.substr(3);
    if (args.rfind("mu=", 0) != 0) {
      throw ConfigError("alternative: expected d2:mu=<real>");
    }
    return AlternativeDistribution::normal_shift(
        parse_real(args.substr(3), "d2 mu"));
  }
  if (s.rfind("table:", 0) == 0) {
    return load_table_csv(s.substr(6));
  }
  throw ConfigError("alternative: cannot parse '" + s + "'");
}

std::string alt_to_string(const AlternativeDistribution& alt) {
  switch (alt.kind) {
    case AlternativeDistribution::Kind::kDiracZero:
      return "d1";
    case AlternativeDistribution::Kind::kNormalShift:
      return "d2:mu=" + format_real(alt.mu);
    case AlternativeDistribution::Kind::kPiecewiseD3:
      return "d3";
    case AlternativeDistribution::Kind::kTable: {
      std::string out = "table(";
      for (std::size_t i = 0; i < alt.t.size(); ++i) {
        if (i > 0) out += ' ';
        out += format_real(alt.t[i]) + ":" + format_real(alt.F[i]);
      }
      return out + ")";
    }
  }
  throw ConfigError("alt_to_string: unknown kind");
}

PValueFile load_pvalues_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open p-value file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) {
    throw IoError("p-value file '" + path + "' is empty");
  }
  auto header = split(trim(line), ',');
  int p_col = -1, h_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = trim(header[i]);
    if (name == "p") p_col = static_cast<int>(i);
    if (name == "h") h_col = static_cast<int>(i);
  }
  if (p_col < 0) {
    throw IoError("p-value file '" + path + "': header must name a 'p' column");
  }

  PValueFile out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split(line, ',');
    if (static_cast<int>(cells.size()) <= std::max(p_col, h_col)) {
      throw IoError("p-value file '" + path + "' line " +
                    std::to_string(lineno) + ": too few columns");
    }
    double p;
    try {
      p = parse_real(cells[p_col], "p");
    } catch (const ConfigError& err) {
      throw IoError("p-value file '" + path + "' line " +
                    std::to_string(lineno) + ": " + err.what());
    }
    if (!(p >= 0.0) || !(p <= 1.0)) {
      throw IoError("p-value file '" + path + "' line " +
                    std::to_string(lineno) + ": p outside [0, 1]");
    }
    out.p.push_back(p);
    if (h_col >= 0) {
      const std::string hv = trim(cells[h_col]);
      if (hv != "0" && hv != "1") {
        throw IoError("p-value file '" + path + "' line " +
                      std::to_string(lineno) + ": h must be 0 or 1");
      }
      out.h.push_back(hv == "1" ? 1 : 0);
    }
  }
  if (out.p.empty()) {
    throw IoError("p-value file '" + path + "' has no data rows");
  }
  return out;
}

}  // namespace fdrlab
