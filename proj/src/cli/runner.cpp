#include "moritalab/cli/runner.hpp"

#include <atomic>
#include <chrono>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include "moritalab/bicat/rings_instance.hpp"
#include "moritalab/bicat/wstar_instance.hpp"
#include "moritalab/error.hpp"
#include "moritalab/rings/morita.hpp"
#include "moritalab/wstar/morita.hpp"

namespace moritalab::cli {

namespace {

using numeric::ComplexMatrix;
using numeric::ComplexVector;

struct TaskReport {
  TaskStatus status = TaskStatus::Pass;
  Json checks = Json::array();
  Json details = Json::object();
  Json certificate;
  Json error;
};

void check(TaskReport& r, const std::string& name, double value, double tolerance) {
  const bool pass = value <= tolerance;
  r.checks.push_back(Json{{"name", name}, {"value", value}, {"tolerance", tolerance}, {"pass", pass}});
  if (!pass && r.status == TaskStatus::Pass) r.status = TaskStatus::Fail;
}

Json factors_json(const exact::FiniteAbelianGroup& g) {
  Json out = Json::array();
  for (const auto& d : g.invariant_factors()) out.push_back(d.to_int64());
  return out;
}

Json bimodule_json(const rings::Bimodule& b) {
  Json left = Json::array(), right = Json::array();
  for (const auto& m : b.left_actions()) left.push_back(integer_matrix_json(m));
  for (const auto& m : b.right_actions()) right.push_back(integer_matrix_json(m));
  return Json{{"carrier", factors_json(b.carrier())}, {"left_action", left}, {"right_action", right}};
}

std::vector<std::string> names(const Json& v) {
  std::vector<std::string> out;
  if (v.is_array())
    for (const auto& x : v) out.push_back(x.get<std::string>());
  else
    out.push_back(v.get<std::string>());
  return out;
}

template <class B>
void coherence(TaskReport& r, B& b, const std::vector<typename B::OneCell>& cells) {
  for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
    const auto t = bicat::verify_triangle(b, cells[i], cells[i + 1]);
    check(r, "triangle(" + std::to_string(i) + "," + std::to_string(i + 1) + ")", t.discrepancy, b.tolerance());
    if (!t.pass) r.status = TaskStatus::Fail;
  }
  if (cells.size() == 4) {
    const auto p = bicat::verify_pentagon(b, cells[0], cells[1], cells[2], cells[3]);
    check(r, "pentagon", p.discrepancy, b.tolerance());
    if (!p.pass) r.status = TaskStatus::Fail;
  }
}

void check_ring(TaskReport& r, const SpecFile& spec, const Json& t) {
  const auto& ring = spec.rings.at(t["ring"].get<std::string>());
  r.details = Json{{"order", ring->order().str()},
                   {"characteristic", ring->characteristic().str()},
                   {"invariant_factors", factors_json(ring->additive())},
                   {"commutative", ring->is_commutative()}};
}

void tensor(TaskReport& r, const SpecFile& spec, const Json& t) {
  const auto& p = spec.bimodules.at(t["left"].get<std::string>());
  const auto& q = spec.bimodules.at(t["right"].get<std::string>());
  const auto result = rings::tensor_product(p, q);
  r.details = Json{{"invariant_factors", factors_json(result.product->carrier())},
                   {"order", result.product->carrier().order().str()}};
  check(r, "tau image generates", rings::tau_image_generates(result) ? 0.0 : 1.0, 0.0);
  if (t.contains("expect")) {
    const bool same = factors_json(result.product->carrier()) == t["expect"];
    check(r, "expected invariant factors", same ? 0.0 : 1.0, 0.0);
  }
}

void morita_ring(TaskReport& r, const SpecFile& spec, const Json& t, const RunOptions& o) {
  const auto& p = spec.bimodules.at(t["bimodule"].get<std::string>());
  rings::SearchOptions search;
  search.max_order = exact::Integer(static_cast<long long>(o.max_order));
  const auto result = rings::certify_invertible_bimodule(p, search);
  if (const auto* c = std::get_if<rings::InvertibilityCertificate>(&result)) {
    r.certificate = Json{{"inverse", bimodule_json(*c->q)},
                         {"unit_iso", integer_matrix_json(c->unit_iso.matrix())},
                         {"counit_iso", integer_matrix_json(c->counit_iso.matrix())},
                         {"left_action_iso", integer_matrix_json(c->left_action_iso)}};
    return;
  }
  const auto& ref = std::get<rings::Refutation>(result);
  r.status = TaskStatus::Refuted;
  Json reasons = Json::array();
  for (auto reason : ref.reasons) reasons.push_back(rings::to_string(reason));
  r.details = Json{{"reasons", reasons}, {"detail", ref.detail}};
}

void coherence_rings(TaskReport& r, const SpecFile& spec, const Json& t) {
  std::vector<rings::BimodulePtr> cells;
  for (const auto& n : names(t["bimodules"])) cells.push_back(spec.bimodules.at(n));
  bicat::RingsBicategory b;
  coherence(r, b, cells);
}

void standard_form(TaskReport& r, const SpecFile& spec, const Json& t, const RunOptions& o) {
  const auto& s = spec.states.at(t["state"].get<std::string>());
  Json spectrum = Json::array();
  for (double x : numeric::hermitian_eigen(s->delta()).eigenvalues) spectrum.push_back(x);
  r.details = Json{{"dimension", s->dimension()}, {"tracial", s->state().is_tracial()}, {"delta_eigenvalues", spectrum}};
  check(r, "S = J Delta^(1/2), J = J^* = J^-1", s->modular_residual(), o.tol);
  check(r, "Delta^(1/2) z Delta^(-1/2) = z on the center", s->center_residual(), o.tol);
  check(r, "J M J = M'", s->commutant_residual(o.tol), o.tol);
}

void fusion(TaskReport& r, const SpecFile& spec, const Json& t, const RunOptions& o) {
  const auto& h = spec.correspondences.at(t["left"].get<std::string>());
  const auto& k = spec.correspondences.at(t["right"].get<std::string>());
  const auto f = wstar::connes_fusion(h, k, o.tol, o.max_dim);
  r.details = Json{{"left_dim", h->dimension()}, {"right_dim", k->dimension()},
                   {"ambient_dim", h->dimension() * k->dimension()}, {"dim", f.product->dimension()}};
  check(r, "correspondence axioms", f.product->axiom_residual(), o.tol);
  // Both twisted balancing identities on seeded random samples.
  std::mt19937_64 engine(o.seed);
  std::normal_distribution<double> normal;
  const auto random = [&](Eigen::Index n) {
    ComplexVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = {normal(engine), normal(engine)};
    return v;
  };
  const wstar::StandardForm& n = *h->right();
  double balance = 0;
  for (int s = 0; s < 20 && h->dimension() > 0 && k->dimension() > 0; ++s) {
    const ComplexVector eta = random(h->dimension()), zeta = random(k->dimension());
    const ComplexMatrix x = n.algebra().element(random(n.dimension()));
    balance = std::max(balance, (f.class_of(h->pi_r(x) * eta, zeta) -
                                 f.class_of(eta, k->pi_l(n.modular_conjugate(x, 0.5)) * zeta)).norm());
    balance = std::max(balance, (f.class_of(eta, k->pi_l(x) * zeta) -
                                 f.class_of(h->pi_r(n.modular_conjugate(x, -0.5)) * eta, zeta)).norm());
  }
  check(r, "twisted balancing", balance, o.tol);
}

void morita_wstar(TaskReport& r, const SpecFile& spec, const Json& t, const RunOptions& o) {
  const auto& h = spec.correspondences.at(t["correspondence"].get<std::string>());
  const auto result = wstar::certify_morita_equivalent(h, o.tol);
  if (const auto* c = std::get_if<wstar::MoritaCertificate>(&result)) {
    check(r, "commutant equals right action", c->commutant_residual, o.tol);
    check(r, "unitarity H (x) conj(H) -> L2(M)", numeric::unitarity_residual(c->to_l2_m.matrix), o.tol);
    check(r, "unitarity conj(H) (x) H -> L2(N)", numeric::unitarity_residual(c->to_l2_n.matrix), o.tol);
    r.details = Json{{"faithfulness_margin", c->faithfulness_margin}};
    r.certificate = Json{{"to_l2_left", complex_matrix_json(c->to_l2_m.matrix)},
                         {"to_l2_right", complex_matrix_json(c->to_l2_n.matrix)}};
    return;
  }
  const auto& ref = std::get<wstar::MoritaRefutation>(result);
  r.status = TaskStatus::Refuted;
  Json reasons = Json::array();
  for (auto reason : ref.reasons) reasons.push_back(wstar::to_string(reason));
  r.details = Json{{"reasons", reasons}, {"detail", ref.detail}};
}

void coherence_wstar(TaskReport& r, const SpecFile& spec, const Json& t, const RunOptions& o) {
  std::vector<wstar::CorrespondencePtr> cells;
  for (const auto& n : names(t["correspondences"])) cells.push_back(spec.correspondences.at(n));
  bicat::WStarBicategory b(o.tol);
  coherence(r, b, cells);
}

Json run_one(const SpecFile& spec, const TaskSpec& task, const RunOptions& o) {
  TaskReport r;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Json& t = task.args;
    if (task.type == "check-ring") check_ring(r, spec, t);
    else if (task.type == "tensor") tensor(r, spec, t);
    else if (task.type == "morita-ring") morita_ring(r, spec, t, o);
    else if (task.type == "coherence-rings") coherence_rings(r, spec, t);
    else if (task.type == "standard-form") standard_form(r, spec, t, o);
    else if (task.type == "fusion") fusion(r, spec, t, o);
    else if (task.type == "morita-wstar") morita_wstar(r, spec, t, o);
    else if (task.type == "coherence-wstar") coherence_wstar(r, spec, t, o);
  } catch (const Error& e) {
    r.status = TaskStatus::Error;
    r.error = Json{{"kind", "TaskError"}, {"cause", std::string(to_string(e.kind()))}, {"message", e.what()}};
  }
  Json out = Json{{"name", task.name}, {"type", task.type}, {"status", to_string(r.status)}};
  if (!r.error.is_null()) out["error"] = r.error;
  out["checks"] = r.checks;
  out["details"] = r.details;
  if (!r.certificate.is_null()) out["certificate"] = r.certificate;
  if (o.timings)
    out["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

Json header(const std::string& digest, const RunOptions& o) {
  return Json{{"tool", "moritalab"},
              {"version", kToolVersion},
              {"schema", kReportSchema},
              {"input_sha256", digest},
              {"options",
               {{"tolerance", o.tol},
                {"seed", o.seed},
                {"threads", o.threads},
                {"max_dim", o.max_dim},
                {"max_order", o.max_order}}}};
}

}  // namespace

std::string to_string(TaskStatus s) {
  switch (s) {
    case TaskStatus::Pass: return "Pass";
    case TaskStatus::Fail: return "Fail";
    case TaskStatus::Refuted: return "Refuted";
    case TaskStatus::Error: return "Error";
  }
  return "Unknown";
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::TaskError, "SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

Json run_tasks(const SpecFile& spec, const RunOptions& options) {
  std::vector<Json> results(spec.tasks.size());
  const unsigned workers = std::min<unsigned>(std::max(1u, options.threads), static_cast<unsigned>(spec.tasks.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < spec.tasks.size(); ++i) results[i] = run_one(spec, spec.tasks[i], options);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < spec.tasks.size();) results[i] = run_one(spec, spec.tasks[i], options);
      });
    for (auto& th : pool) th.join();
  }
  Json tasks = Json::array();
  Json summary = Json{{"total", results.size()}, {"Pass", 0}, {"Fail", 0}, {"Refuted", 0}, {"Error", 0}};
  for (auto& r : results) {
    summary[r["status"].get<std::string>()] = summary[r["status"].get<std::string>()].get<int>() + 1;
    tasks.push_back(std::move(r));
  }
  return Json{{"tasks", std::move(tasks)}, {"summary", std::move(summary)}};
}

RunOutcome run_text(const std::string& text, const RunOptions& options) {
  RunOutcome out;
  out.report = header(sha256_hex(text), options);
  SpecFile spec;
  try {
    spec = load_spec_text(text, options.tol);
  } catch (const Error& e) {
    out.report["error"] = Json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    out.exit_code = 2;
    return out;
  }
  Json body = run_tasks(spec, options);
  out.report["tasks"] = std::move(body["tasks"]);
  out.report["summary"] = std::move(body["summary"]);
  out.exit_code = out.report["summary"]["Pass"].get<std::size_t>() == spec.tasks.size() ? 0 : 1;
  return out;
}

}  // namespace moritalab::cli
