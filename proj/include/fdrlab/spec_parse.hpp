#pragma once

#include <string>
#include <vector>

#include "fdrlab/bi_model.hpp"
#include "fdrlab/estimators.hpp"

namespace fdrlab {

// Estimator mini-grammar:
//   bh
//   storey:<l1>
//   gstorey:<l1>,<g1>[,corrected]
//   weighted:[<w>*<spec>;...]
//   dynamic:grid=<l0,l1,...,1>;eps=<e>[;tail=<m>]
EstimatorSpec parse_estimator(const std::string& text);
std::string estimator_to_string(const EstimatorSpec& spec);

// Distribution mini-grammar: d1 | d2[:mu=<real>] | d3 | uniform |
// table:<path.csv> with CSV columns t,F1 and strictly increasing t from 0
// to 1.
AlternativeDistribution parse_alt(const std::string& text);
std::string alt_to_string(const AlternativeDistribution& alt);

// p-value input file: CSV with a header naming a `p` column and an optional
// `h` truth column (0 = true null, 1 = false null).
struct PValueFile {
  std::vector<double> p;
  std::vector<std::uint8_t> h;  // empty when the file has no h column
};
PValueFile load_pvalues_csv(const std::string& path);

}  // namespace fdrlab
