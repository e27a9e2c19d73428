#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "moritalab/exact/matrix.hpp"

namespace moritalab::exact {

/// Finite abelian group Z/d_1 + ... + Z/d_k in invariant-factor form.
///
/// d_1 | d_2 | ... | d_k and every d_i >= 2; the empty list is the trivial
/// group. Elements are coordinate vectors reduced componentwise.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<Integer> invariant_factors);

  /// Cyclic group Z/n (trivial for n == 1).
  static FiniteAbelianGroup cyclic(const Integer& n);

  const std::vector<Integer>& invariant_factors() const noexcept { return factors_; }
  std::size_t rank() const noexcept { return factors_.size(); }
  bool is_trivial() const noexcept { return factors_.empty(); }
  Integer order() const;
  /// Least common multiple of element orders (1 for the trivial group).
  Integer exponent() const;

  Vector zero() const { return Vector(factors_.size()); }
  Vector reduce(Vector v) const;
  bool is_reduced(const Vector& v) const;
  bool equal(const Vector& a, const Vector& b) const;
  Vector add(const Vector& a, const Vector& b) const;
  Vector scale(const Integer& k, const Vector& a) const;
  Integer element_order(const Vector& a) const;

  /// True iff column j of the map (carrier gen j -> images) respects the
  /// relation d_j * g_j = 0 in the target group.
  static bool is_homomorphism(const IntegerMatrix& m, const FiniteAbelianGroup& source,
                              const FiniteAbelianGroup& target);
  /// Maps equal after reducing rows modulo the target's invariant factors.
  bool same_map(const IntegerMatrix& a, const IntegerMatrix& b) const;
  /// Reduce each row of m modulo the corresponding invariant factor.
  IntegerMatrix reduce_map(IntegerMatrix m) const;

  /// Visit every element in lexicographic order (last coordinate fastest).
  /// Stops early when the visitor returns false.
  void for_each_element(const std::function<bool(const Vector&)>& visit) const;

  std::string str() const;

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

 private:
  std::vector<Integer> factors_;
};

}  // namespace moritalab::exact
