#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "moritalab/rings/hom.hpp"
#include "moritalab/rings/search.hpp"
#include "moritalab/rings/tensor.hpp"

namespace moritalab::rings {

/// (S, P, P*, E; alpha, beta) for a right S-module P with E = End_S(P).
///
/// P is re-read as an (E, S)-bimodule (E acting through its basis maps) and
/// P* = Hom_S(P, S) as an (S, E)-bimodule with (s f) = s * f(-) and
/// (f e) = f o e.
struct MoritaContext {
  Ring ground;
  Ring end;
  BimodulePtr p;       // (E, S)
  BimodulePtr p_star;  // (S, E)
  std::vector<IntegerMatrix> end_basis;   // E generator -> endomorphism of P
  std::vector<IntegerMatrix> dual_basis;  // P* generator -> map P -> S
  TensorProductResult dual_tensor_p;      // P* (x)_E P
  TensorProductResult p_tensor_dual;      // P (x)_S P*
  BimoduleMap alpha;                      // P* (x)_E P -> S
  BimoduleMap beta;                       // P (x)_S P* -> E
  std::shared_ptr<const HomGroup> end_hom;
  std::shared_ptr<const HomGroup> dual_hom;

  /// Coordinates in E of an S-linear endomorphism of P.
  std::optional<Vector> end_coordinates(const IntegerMatrix& map) const;
};

/// P is used only as a right module over its right ring.
MoritaContext morita_context(const BimodulePtr& p);

/// Preimages in the tensor product of every generator of the codomain.
struct SurjectivityCertificate {
  bool surjective = false;
  std::vector<Vector> preimages;
};

SurjectivityCertificate is_generator(const MoritaContext& ctx);
SurjectivityCertificate is_fg_projective(const MoritaContext& ctx);
bool is_progenerator(const MoritaContext& ctx);
/// Same tests straight from a module; the zero module is neither.
SurjectivityCertificate is_generator(const BimodulePtr& p);
SurjectivityCertificate is_fg_projective(const BimodulePtr& p);
bool is_progenerator(const BimodulePtr& p);

struct InvertibilityCertificate {
  BimodulePtr p;  // (R, S)
  BimodulePtr q;  // (S, R)
  TensorProductResult p_tensor_q;
  TensorProductResult q_tensor_p;
  BimoduleMap unit_iso;    // P (x)_S Q -> R
  BimoduleMap counit_iso;  // Q (x)_R P -> S
  /// R -> End_S(P) as a matrix on generators.
  IntegerMatrix left_action_iso;
};

struct Refutation {
  enum class Reason { AlphaNotEpi, BetaNotEpi, LeftActionNotIso, RingsNotIsomorphic, NotBijective };
  std::vector<Reason> reasons;
  std::string detail;
};

std::string to_string(Refutation::Reason r);

using InvertibilityResult = std::variant<InvertibilityCertificate, Refutation>;

/// Decide whether P is an invertible (R,S)-bimodule. On success the inverse
/// is the dual Hom_S(P, S) with the R action pulled back along R -> End_S(P).
InvertibilityResult certify_invertible_bimodule(const BimodulePtr& p, const SearchOptions& options = {});

/// The comparison map (U (x)_S P*) (x)_E P -> U, ((u (x) f) (x) p) -> u f(p).
struct MoritaRoundTrip {
  TensorProductResult inner;  // U (x)_S P*
  TensorProductResult outer;  // (U (x)_S P*) (x)_E P
  BimoduleMap map;
};

MoritaRoundTrip morita_round_trip(const MoritaContext& ctx, const BimodulePtr& u);

/// (f (x) id) (x) id between two round trips.
BimoduleMap round_trip_functor(const MoritaContext& ctx, const BimoduleMap& f, const MoritaRoundTrip& source,
                               const MoritaRoundTrip& target);

}  // namespace moritalab::rings
