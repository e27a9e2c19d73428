#include "moritalab/cli/spec_file.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "moritalab/error.hpp"
#include "moritalab/rings/corpus.hpp"

namespace moritalab::cli {

using exact::Integer;
using exact::IntegerMatrix;
using exact::Vector;
using numeric::Complex;
using numeric::ComplexMatrix;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::int64_t as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

Vector as_vector(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an integer array");
  Vector v;
  for (const auto& x : j) v.push_back(Integer(static_cast<long long>(as_int(x, where))));
  return v;
}

IntegerMatrix as_integer_matrix(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a matrix (array of rows)");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  IntegerMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) fail(where, "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Integer(static_cast<long long>(as_int(j[r][c], where)));
  }
  return m;
}

std::vector<IntegerMatrix> as_matrix_list(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a list of matrices");
  std::vector<IntegerMatrix> out;
  for (const auto& m : j) out.push_back(as_integer_matrix(m, where));
  return out;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.to_int64());
  return out;
}

Complex parse_complex(const Json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  fail(where, "expected a complex number [re, im]");
}

// Runs `build` with ParseError wrapping for library errors.
template <class F>
auto guarded(const std::string& where, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    fail(where, e.what());
  } catch (const Json::exception& e) {
    fail(where, e.what());
  }
}

class Loader {
 public:
  Loader(const Json& doc, double tol) : doc_(doc), tol_(tol) {
    if (!doc_.is_object()) fail("spec", "top level must be an object");
    static const std::set<std::string> known = {"rings",  "bimodules",       "algebras", "states",
                                                "correspondences", "tasks", "description"};
    for (const auto& [key, value] : doc_.items())
      if (!known.count(key)) fail("spec", "unknown section '" + key + "'");
  }

  SpecFile load() {
    for (const auto& [name, _] : section("rings").items()) ring(name);
    for (const auto& [name, _] : section("bimodules").items()) bimodule(name);
    for (const auto& [name, _] : section("algebras").items()) algebra(name);
    for (const auto& [name, _] : section("states").items()) state(name);
    for (const auto& [name, _] : section("correspondences").items()) correspondence(name);
    tasks();
    return std::move(out_);
  }

 private:
  const Json& section(const char* key) const {
    static const Json empty = Json::object();
    if (!doc_.contains(key)) return empty;
    const Json& s = doc_.at(key);
    if (!s.is_object()) fail(key, "section must be an object of named definitions");
    return s;
  }

  // Each resolver memoizes and detects reference cycles.
  template <class T, class Build>
  T resolve(std::map<std::string, T>& done, const char* kind, const std::string& name, Build&& build) {
    if (auto it = done.find(name); it != done.end()) return it->second;
    const std::string where = std::string(kind) + " '" + name + "'";
    if (!section(section_of(kind)).contains(name)) fail(where, "undefined");
    if (!active_.insert(where).second) fail(where, "cyclic definition");
    T value = guarded(where, [&] { return build(section(section_of(kind)).at(name), where); });
    active_.erase(where);
    done.emplace(name, value);
    return value;
  }

  static const char* section_of(const std::string& kind) {
    if (kind == "ring") return "rings";
    if (kind == "bimodule") return "bimodules";
    if (kind == "algebra") return "algebras";
    if (kind == "state") return "states";
    return "correspondences";
  }

  rings::Ring ring(const std::string& name) {
    return resolve(out_.rings, "ring", name, [&](const Json& j, const std::string& where) -> rings::Ring {
      if (j.contains("cyclic")) return rings::FiniteRing::cyclic(as_int(j["cyclic"], where));
      if (j.contains("matrix")) {
        const Json& m = j["matrix"];
        return rings::matrix_ring(ring(as_string(field(m, "ring", where), where)),
                                  static_cast<std::size_t>(as_int(field(m, "n", where), where)));
      }
      if (j.contains("polynomial")) {
        const Json& p = j["polynomial"];
        std::vector<std::int64_t> monic;
        for (const auto& c : field(p, "monic", where)) monic.push_back(as_int(c, where));
        return rings::polynomial_quotient(as_int(field(p, "modulus", where), where), monic);
      }
      if (j.contains("product")) {
        const Json& p = j["product"];
        if (!p.is_array() || p.size() != 2) fail(where, "product takes two ring names");
        return rings::direct_product(ring(as_string(p[0], where)), ring(as_string(p[1], where)));
      }
      if (j.contains("opposite")) return rings::opposite_ring(ring(as_string(j["opposite"], where)));
      if (j.contains("upper_triangular")) return rings::upper_triangular(ring(as_string(j["upper_triangular"], where)));
      std::vector<std::vector<Vector>> mult;
      const Json& table = field(j, "mult_table", where);
      if (!table.is_array()) fail(where, "mult_table must be a k x k array of vectors");
      for (const auto& row : table) {
        if (!row.is_array()) fail(where, "mult_table must be a k x k array of vectors");
        std::vector<Vector> r;
        for (const auto& v : row) r.push_back(as_vector(v, where));
        mult.push_back(std::move(r));
      }
      const Vector unit = as_vector(field(j, "unit", where), where);
      if (j.contains("moduli")) return rings::ring_from_ambient(as_vector(j["moduli"], where), mult, unit, name);
      return std::make_shared<const rings::FiniteRing>(
          exact::FiniteAbelianGroup(as_vector(field(j, "invariant_factors", where), where)), std::move(mult), unit,
          name);
    });
  }

  rings::BimodulePtr bimodule(const std::string& name) {
    return resolve(out_.bimodules, "bimodule", name, [&](const Json& j, const std::string& where) -> rings::BimodulePtr {
      if (j.contains("regular")) return rings::regular_bimodule(ring(as_string(j["regular"], where)));
      if (j.contains("column")) {
        const Json& c = j["column"];
        return rings::column_module(ring(as_string(field(c, "ring", where), where)),
                                    static_cast<std::size_t>(as_int(field(c, "n", where), where)));
      }
      rings::Ring left = ring(as_string(field(j, "left", where), where));
      rings::Ring right = ring(as_string(field(j, "right", where), where));
      auto la = as_matrix_list(field(j, "left_action", where), where);
      auto ra = as_matrix_list(field(j, "right_action", where), where);
      if (j.contains("moduli"))
        return rings::bimodule_from_ambient(left, right, as_vector(j["moduli"], where), la, ra, name);
      return std::make_shared<const rings::Bimodule>(
          left, right, exact::FiniteAbelianGroup(as_vector(field(j, "carrier", where), where)), std::move(la),
          std::move(ra), name);
    });
  }

  wstar::AlgebraPtr algebra(const std::string& name) {
    return resolve(out_.algebras, "algebra", name, [&](const Json& j, const std::string& where) {
      std::vector<int> blocks;
      for (const auto& b : field(j, "block_sizes", where)) blocks.push_back(static_cast<int>(as_int(b, where)));
      return std::make_shared<const wstar::MultiMatrixAlgebra>(std::move(blocks));
    });
  }

  wstar::StandardFormPtr state(const std::string& name) {
    return resolve(out_.states, "state", name, [&](const Json& j, const std::string& where) {
      wstar::AlgebraPtr alg = algebra(as_string(field(j, "algebra", where), where));
      if (!j.contains("density")) return wstar::gns_standard_form(wstar::State::normalized_trace(alg), tol_);
      const Json& blocks = j["density"];
      if (!blocks.is_array() || blocks.size() != alg->block_count())
        fail(where, "density needs one matrix per block");
      const Eigen::Index n = alg->matrix_size();
      ComplexMatrix rho = ComplexMatrix::Zero(n, n);
      Eigen::Index off = 0;
      for (std::size_t k = 0; k < blocks.size(); ++k) {
        const ComplexMatrix b = parse_complex_matrix(blocks[k], where);
        const int size = alg->block_sizes()[k];
        if (b.rows() != size || b.cols() != size) fail(where, "density block has the wrong size");
        rho.block(off, off, size, size) = b;
        off += size;
      }
      const double floor = j.contains("floor") ? j["floor"].get<double>() : wstar::kFaithfulnessFloor;
      return wstar::gns_standard_form(wstar::State(alg, rho, floor), tol_);
    });
  }

  std::vector<ComplexMatrix> complex_list(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected a list of complex matrices");
    std::vector<ComplexMatrix> out;
    for (const auto& m : j) out.push_back(parse_complex_matrix(m, where));
    return out;
  }

  wstar::CorrespondencePtr correspondence(const std::string& name) {
    return resolve(out_.correspondences, "correspondence", name,
                   [&](const Json& j, const std::string& where) -> wstar::CorrespondencePtr {
      if (j.contains("identity")) return wstar::identity_correspondence(state(as_string(j["identity"], where)));
      if (j.contains("conjugate"))
        return wstar::conjugate_correspondence(correspondence(as_string(j["conjugate"], where)));
      if (j.contains("homomorphism")) {
        const Json& h = j["homomorphism"];
        return wstar::corr_from_homomorphism(state(as_string(field(h, "source", where), where)),
                                             complex_list(field(h, "images", where), where),
                                             state(as_string(field(h, "target", where), where)), tol_);
      }
      const auto dim = static_cast<Eigen::Index>(as_int(field(j, "dim", where), where));
      auto pl = complex_list(field(j, "pi_l", where), where);
      auto pr = complex_list(field(j, "pi_r", where), where);
      for (const auto* side : {&pl, &pr})
        for (const auto& m : *side)
          if (m.rows() != dim || m.cols() != dim) fail(where, "action matrix does not match dim");
      return std::make_shared<const wstar::Correspondence>(state(as_string(field(j, "left", where), where)),
                                                           state(as_string(field(j, "right", where), where)), dim,
                                                           std::move(pl), std::move(pr), name, tol_);
    });
  }

  void tasks() {
    if (!doc_.contains("tasks")) return;
    const Json& list = doc_.at("tasks");
    if (!list.is_array()) fail("tasks", "must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Json& t = list[i];
      const std::string where = "task #" + std::to_string(i);
      TaskSpec spec;
      spec.type = as_string(field(t, "type", where), where);
      spec.name = t.contains("name") ? as_string(t["name"], where) : spec.type + "#" + std::to_string(i);
      const auto& types = task_types();
      if (std::find(types.begin(), types.end(), spec.type) == types.end())
        fail(where, "unknown task type '" + spec.type + "'");
      check_references(t, where);
      spec.args = t;
      out_.tasks.push_back(std::move(spec));
    }
  }

  // Task arguments must name existing objects of the right kind.
  void check_references(const Json& t, const std::string& where) {
    const auto need = [&](const char* key, const auto& table, const char* kind) {
      if (!t.contains(key)) fail(where, std::string("missing field '") + key + "'");
      const Json& v = t[key];
      std::vector<std::string> names;
      if (v.is_array())
        for (const auto& x : v) names.push_back(as_string(x, where));
      else
        names.push_back(as_string(v, where));
      for (const auto& n : names)
        if (!table.count(n)) fail(where, std::string("unknown ") + kind + " '" + n + "'");
    };
    const std::string& type = t["type"].get_ref<const std::string&>();
    if (type == "check-ring") need("ring", out_.rings, "ring");
    if (type == "tensor") {
      need("left", out_.bimodules, "bimodule");
      need("right", out_.bimodules, "bimodule");
    }
    if (type == "morita-ring") need("bimodule", out_.bimodules, "bimodule");
    if (type == "coherence-rings") need("bimodules", out_.bimodules, "bimodule");
    if (type == "standard-form") need("state", out_.states, "state");
    if (type == "fusion") {
      need("left", out_.correspondences, "correspondence");
      need("right", out_.correspondences, "correspondence");
    }
    if (type == "morita-wstar") need("correspondence", out_.correspondences, "correspondence");
    if (type == "coherence-wstar") need("correspondences", out_.correspondences, "correspondence");
    for (const char* key : {"bimodules", "correspondences"})
      if (t.contains(key) && (!t[key].is_array() || t[key].size() < 2 || t[key].size() > 4))
        fail(where, std::string(key) + " must list 2 to 4 names");
  }

  const Json& doc_;
  double tol_;
  SpecFile out_;
  std::set<std::string> active_;
};

Json ring_json(const rings::FiniteRing& r) {
  Json table = Json::array();
  for (const auto& row : r.structure_constants()) {
    Json jr = Json::array();
    for (const auto& v : row) jr.push_back(vector_json(v));
    table.push_back(std::move(jr));
  }
  return Json{{"invariant_factors", vector_json(r.additive().invariant_factors())},
              {"mult_table", std::move(table)},
              {"unit", vector_json(r.unit())}};
}

}  // namespace

ComplexMatrix parse_complex_matrix(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a complex matrix (array of rows)");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) fail(where, "ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = parse_complex(row[static_cast<std::size_t>(c)], where);
  }
  return m;
}

Json complex_matrix_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    out.push_back(std::move(row));
  }
  return out;
}

Json integer_matrix_json(const IntegerMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_int64());
    out.push_back(std::move(row));
  }
  return out;
}

SpecFile load_spec(const Json& doc, double tol) { return Loader(doc, tol).load(); }

SpecFile load_spec_text(const std::string& text, double tol) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail("spec", std::string("invalid JSON: ") + e.what());
  }
  return load_spec(doc, tol);
}

Json to_json(const SpecFile& spec) {
  Json doc = Json::object();
  Json rings_out = Json::object();
  std::vector<std::pair<rings::Ring, std::string>> ring_names;
  for (const auto& [name, r] : spec.rings) {
    ring_names.emplace_back(r, name);
    rings_out[name] = ring_json(*r);
  }
  const auto ring_name = [&](const rings::Ring& r) {
    for (const auto& [known, name] : ring_names)
      if (rings::same_ring(known, r)) return name;
    std::string name = "_ring" + std::to_string(ring_names.size());
    ring_names.emplace_back(r, name);
    rings_out[name] = ring_json(*r);
    return name;
  };

  Json bimodules_out = Json::object();
  for (const auto& [name, b] : spec.bimodules) {
    Json left = Json::array(), right = Json::array();
    for (const auto& m : b->left_actions()) left.push_back(integer_matrix_json(m));
    for (const auto& m : b->right_actions()) right.push_back(integer_matrix_json(m));
    bimodules_out[name] = Json{{"left", ring_name(b->left_ring())},
                               {"right", ring_name(b->right_ring())},
                               {"carrier", vector_json(b->carrier().invariant_factors())},
                               {"left_action", std::move(left)},
                               {"right_action", std::move(right)}};
  }
  doc["rings"] = std::move(rings_out);
  doc["bimodules"] = std::move(bimodules_out);

  Json algebras_out = Json::object();
  for (const auto& [name, a] : spec.algebras) algebras_out[name] = Json{{"block_sizes", a->block_sizes()}};
  const auto algebra_name = [&](const wstar::MultiMatrixAlgebra& a) {
    for (const auto& [name, known] : spec.algebras)
      if (*known == a) return name;
    fail("serialize", "state on an unnamed algebra");
  };
  Json states_out = Json::object();
  for (const auto& [name, s] : spec.states) {
    const wstar::MultiMatrixAlgebra& a = s->algebra();
    Json blocks = Json::array();
    Eigen::Index off = 0;
    for (int n : a.block_sizes()) {
      blocks.push_back(complex_matrix_json(s->state().density().block(off, off, n, n)));
      off += n;
    }
    states_out[name] = Json{{"algebra", algebra_name(a)}, {"density", std::move(blocks)}, {"floor", 0.0}};
  }
  const auto state_name = [&](const wstar::StandardFormPtr& p) {
    for (const auto& [name, known] : spec.states)
      if (known == p) return name;
    for (const auto& [name, known] : spec.states)
      if (wstar::same_object(*known, *p)) return name;
    fail("serialize", "correspondence over an unnamed state");
  };
  Json corr_out = Json::object();
  for (const auto& [name, h] : spec.correspondences) {
    Json left = Json::array(), right = Json::array();
    for (const auto& m : h->left_units()) left.push_back(complex_matrix_json(m));
    for (const auto& m : h->right_units()) right.push_back(complex_matrix_json(m));
    corr_out[name] = Json{{"left", state_name(h->left())},
                          {"right", state_name(h->right())},
                          {"dim", h->dimension()},
                          {"pi_l", std::move(left)},
                          {"pi_r", std::move(right)}};
  }
  doc["algebras"] = std::move(algebras_out);
  doc["states"] = std::move(states_out);
  doc["correspondences"] = std::move(corr_out);
  Json tasks = Json::array();
  for (const auto& t : spec.tasks) tasks.push_back(t.args);
  doc["tasks"] = std::move(tasks);
  return doc;
}

}  // namespace moritalab::cli
