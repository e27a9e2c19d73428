#include "moritalab/cli/runner.hpp"

namespace moritalab::cli {

namespace {

Json matrix_ring_pair() {
  return Json::parse(R"json({
    "description": "M_2(Z/2) and Z/2 through the column module",
    "rings": {"Z2": {"cyclic": 2}, "M2": {"matrix": {"ring": "Z2", "n": 2}}},
    "bimodules": {"P": {"column": {"ring": "Z2", "n": 2}}, "R": {"regular": "Z2"}},
    "tasks": [
      {"type": "check-ring", "ring": "M2"},
      {"type": "tensor", "left": "P", "right": "R", "expect": [2, 2]},
      {"type": "morita-ring", "bimodule": "P"},
      {"type": "coherence-rings", "bimodules": ["P", "R", "R", "R"]}
    ]
  })json");
}

Json mn_vs_c() {
  return Json::parse(R"json({
    "description": "C^3 as an (M_3, C) correspondence",
    "algebras": {"M3": {"block_sizes": [3]}, "C": {"block_sizes": [1]}},
    "states": {"tr3": {"algebra": "M3"}, "one": {"algebra": "C"}},
    "correspondences": {
      "H": {"homomorphism": {"source": "one", "target": "tr3",
                             "images": [[[1, 0, 0], [0, 0, 0], [0, 0, 0]]]}},
      "Hbar": {"conjugate": "H"}
    },
    "tasks": [
      {"type": "standard-form", "state": "tr3"},
      {"type": "morita-wstar", "correspondence": "H"},
      {"type": "fusion", "left": "H", "right": "Hbar"},
      {"type": "coherence-wstar", "correspondences": ["H", "Hbar", "H", "Hbar"]}
    ]
  })json");
}

Json non_tracial_fusion() {
  return Json::parse(R"json({
    "description": "L^2(M_2) for the state with density diag(2/3, 1/3)",
    "algebras": {"M2": {"block_sizes": [2]}},
    "states": {"phi": {"algebra": "M2", "density": [[[0.6666666666666666, 0], [0, 0.33333333333333337]]]}},
    "correspondences": {"L2": {"identity": "phi"}},
    "tasks": [
      {"type": "standard-form", "state": "phi"},
      {"type": "fusion", "left": "L2", "right": "L2"},
      {"type": "morita-wstar", "correspondence": "L2"},
      {"type": "coherence-wstar", "correspondences": ["L2", "L2", "L2", "L2"]}
    ]
  })json");
}

}  // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names = {"matrix-ring-pair", "mn-vs-c", "non-tracial-fusion"};
  return names;
}

std::optional<Json> demo_spec(const std::string& name) {
  if (name == "matrix-ring-pair") return matrix_ring_pair();
  if (name == "mn-vs-c") return mn_vs_c();
  if (name == "non-tracial-fusion") return non_tracial_fusion();
  return std::nullopt;
}

}  // namespace moritalab::cli
