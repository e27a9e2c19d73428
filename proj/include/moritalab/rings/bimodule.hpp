#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "moritalab/rings/ring.hpp"

namespace moritalab::rings {

/// R-S bimodule on a finite abelian group.
///
/// left_action[i] is the matrix of r_i * (-) for additive generator r_i of
/// R; right_action[j] is the matrix rho(s_j) with m * s_j = rho(s_j) m.
/// Matrices act on carrier coordinate vectors (columns are images of the
/// carrier generators).
class Bimodule {
 public:
  /// Validates all module axioms on generators; throws InvalidArgument.
  Bimodule(Ring left, Ring right, FiniteAbelianGroup carrier, std::vector<IntegerMatrix> left_action,
           std::vector<IntegerMatrix> right_action, std::string label = {});

  const Ring& left_ring() const noexcept { return left_; }
  const Ring& right_ring() const noexcept { return right_; }
  const FiniteAbelianGroup& carrier() const noexcept { return carrier_; }
  std::size_t rank() const noexcept { return carrier_.rank(); }
  const IntegerMatrix& left_action(std::size_t i) const { return left_action_[i]; }
  const IntegerMatrix& right_action(std::size_t j) const { return right_action_[j]; }
  const std::vector<IntegerMatrix>& left_actions() const noexcept { return left_action_; }
  const std::vector<IntegerMatrix>& right_actions() const noexcept { return right_action_; }
  const std::string& label() const noexcept { return label_; }

  /// Matrix of r * (-) for an arbitrary ring element r.
  IntegerMatrix left_matrix(const Vector& r) const;
  /// Matrix of (-) * s.
  IntegerMatrix right_matrix(const Vector& s) const;
  Vector act_left(const Vector& r, const Vector& m) const;
  Vector act_right(const Vector& m, const Vector& s) const;

  std::string str() const;

 private:
  Ring left_, right_;
  FiniteAbelianGroup carrier_;
  std::vector<IntegerMatrix> left_action_, right_action_;
  std::string label_;
};

using BimodulePtr = std::shared_ptr<const Bimodule>;

/// Bimodule on an ambient presentation (+)Z/a_i with actions given in
/// ambient coordinates; converted to invariant-factor form.
BimodulePtr bimodule_from_ambient(Ring left, Ring right, const Vector& moduli,
                                  const std::vector<IntegerMatrix>& left_ambient,
                                  const std::vector<IntegerMatrix>& right_ambient, std::string label = {});

/// R as an (R,R)-bimodule.
BimodulePtr regular_bimodule(const Ring& r);
/// A right S-module as a (Z/char S, S)-bimodule.
BimodulePtr right_module(const Ring& s, FiniteAbelianGroup carrier, std::vector<IntegerMatrix> right_action,
                         std::string label = {});
/// The scalar ring Z/char(S) used as left ring of right S-modules.
Ring scalar_ring_for(const Ring& s);
/// R^n as column vectors: an (M_n(R), R)-bimodule, left action by matrix
/// multiplication, right action by scalar multiplication.
BimodulePtr column_module(const Ring& r, std::size_t n);
/// Same carrier and right action, left ring replaced by Z/char(S).
BimodulePtr underlying_right_module(const BimodulePtr& m);

/// Additive map between carriers (columns = images of source generators).
class BimoduleMap {
 public:
  /// Validates additivity and both intertwining conditions; throws
  /// NotHomomorphism on failure.
  BimoduleMap(BimodulePtr source, BimodulePtr target, IntegerMatrix matrix);
  static BimoduleMap identity(const BimodulePtr& m);
  static BimoduleMap zero(const BimodulePtr& source, const BimodulePtr& target);
  /// No validation; for callers that have already proved the conditions.
  static BimoduleMap trusted(BimodulePtr source, BimodulePtr target, IntegerMatrix matrix);

  const BimodulePtr& source() const noexcept { return source_; }
  const BimodulePtr& target() const noexcept { return target_; }
  const IntegerMatrix& matrix() const noexcept { return matrix_; }

  Vector apply(const Vector& m) const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const;
  std::optional<Vector> preimage(const Vector& y) const;
  /// Inverse of a bijective map; throws InvalidArgument otherwise.
  BimoduleMap inverse() const;

  /// True iff both maps agree on every source generator.
  bool equals(const BimoduleMap& other) const;

 private:
  BimoduleMap(BimodulePtr source, BimodulePtr target, IntegerMatrix matrix, bool);
  BimodulePtr source_, target_;
  IntegerMatrix matrix_;
};

/// f o g.
BimoduleMap compose(const BimoduleMap& f, const BimoduleMap& g);

/// Checks the map conditions without throwing.
bool is_bimodule_map(const Bimodule& source, const Bimodule& target, const IntegerMatrix& matrix);

/// Order of the image subgroup of an additive map into `target`.
Integer image_order(const IntegerMatrix& map, const FiniteAbelianGroup& target);

}  // namespace moritalab::rings
