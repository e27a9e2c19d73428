#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "moritalab/rings/bimodule.hpp"
#include "moritalab/wstar/correspondence.hpp"

namespace moritalab::cli {

using Json = nlohmann::ordered_json;

struct TaskSpec {
  std::string name;
  std::string type;
  Json args;  // the whole task object
};

/// Everything a spec file defines, resolved and validated.
///
/// States are stored as their standard forms; a state name is the 0-cell
/// (algebra, state) of the W* bicategory.
struct SpecFile {
  std::map<std::string, rings::Ring> rings;
  std::map<std::string, rings::BimodulePtr> bimodules;
  std::map<std::string, wstar::AlgebraPtr> algebras;
  std::map<std::string, wstar::StandardFormPtr> states;
  std::map<std::string, wstar::CorrespondencePtr> correspondences;
  std::vector<TaskSpec> tasks;
};

inline const std::vector<std::string>& task_types() {
  static const std::vector<std::string> types = {"check-ring",     "tensor",        "morita-ring", "coherence-rings",
                                                 "standard-form",  "fusion",        "morita-wstar", "coherence-wstar"};
  return types;
}

/// Resolves all references and validates every object; any failure is a
/// ParseError whose message names the offending definition.
SpecFile load_spec(const Json& doc, double tol = numeric::kDefaultTolerance);
SpecFile load_spec_text(const std::string& text, double tol = numeric::kDefaultTolerance);

/// Canonical form: every ring as a structure table, every bimodule and
/// correspondence with explicit actions. Rings that were only built
/// implicitly get generated names. load_spec(to_json(s)) rebuilds s.
Json to_json(const SpecFile& spec);

/// Complex numbers are [re, im] pairs; plain numbers are read as reals.
numeric::ComplexMatrix parse_complex_matrix(const Json& j, const std::string& where);
Json complex_matrix_json(const numeric::ComplexMatrix& m);
Json integer_matrix_json(const exact::IntegerMatrix& m);

}  // namespace moritalab::cli
