#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "moritalab/exact/abelian_group.hpp"
#include "moritalab/exact/matrix.hpp"

namespace moritalab::rings {

using exact::FiniteAbelianGroup;
using exact::Integer;
using exact::IntegerMatrix;
using exact::Vector;

/// Finite unital ring given by structure constants on the additive
/// invariant-factor generators e_1..e_k: e_i * e_j = mult[i][j].
///
/// Invariant factors must fit comfortably in 32 bits; arithmetic on the
/// structure constants is done in int64.
class FiniteRing {
 public:
  /// Validates biadditivity, associativity and the unit law on generators.
  /// Throws InvalidArgument (UnitDegenerate for the zero ring).
  FiniteRing(FiniteAbelianGroup additive, std::vector<std::vector<Vector>> mult, Vector unit,
             std::string label = {});

  static std::shared_ptr<const FiniteRing> cyclic(std::int64_t n);

  const FiniteAbelianGroup& additive() const noexcept { return additive_; }
  std::size_t rank() const noexcept { return additive_.rank(); }
  const Vector& unit() const noexcept { return unit_; }
  const Vector& product_of_generators(std::size_t i, std::size_t j) const { return mult_[i][j]; }
  const std::vector<std::vector<Vector>>& structure_constants() const noexcept { return mult_; }
  const std::string& label() const noexcept { return label_; }

  Integer order() const { return additive_.order(); }
  /// Additive order of the unit.
  Integer characteristic() const { return additive_.element_order(unit_); }
  bool is_commutative() const;

  Vector generator(std::size_t i) const;
  Vector add(const Vector& a, const Vector& b) const { return additive_.add(a, b); }
  Vector multiply(const Vector& a, const Vector& b) const;

  /// Column j is a * e_j (left multiplication by a).
  IntegerMatrix left_multiplication(const Vector& a) const;
  /// Column j is e_j * a (right multiplication by a).
  IntegerMatrix right_multiplication(const Vector& a) const;

  /// Fast path for search code: reduced int64 coordinates.
  const std::vector<std::int64_t>& moduli64() const noexcept { return mods_; }
  void multiply64(const std::int64_t* a, const std::int64_t* b, std::int64_t* out) const;
  /// e_i e_j coefficient of e_k.
  std::int64_t constant64(std::size_t i, std::size_t j, std::size_t k) const {
    return table_[(i * rank() + j) * rank() + k];
  }

  std::string str() const;

  /// Structural equality: same invariant factors, structure constants, unit.
  friend bool operator==(const FiniteRing& a, const FiniteRing& b) {
    return a.additive_ == b.additive_ && a.mult_ == b.mult_ && a.unit_ == b.unit_;
  }

 private:
  FiniteAbelianGroup additive_;
  std::vector<std::vector<Vector>> mult_;
  Vector unit_;
  std::string label_;
  std::vector<std::int64_t> mods_;
  std::vector<std::int64_t> table_;
};

using Ring = std::shared_ptr<const FiniteRing>;

/// Same ring object or structurally equal.
bool same_ring(const Ring& a, const Ring& b);

/// Ring on an arbitrary presentation (+)Z/a_i (ambient coordinates, not
/// necessarily in invariant-factor form), converted to canonical form.
Ring ring_from_ambient(const Vector& moduli, const std::vector<std::vector<Vector>>& ambient_mult,
                       const Vector& ambient_unit, std::string label = {});

/// A ring together with the change of basis from the ambient coordinates it
/// was built on: lift is ambient x rank, projection is rank x ambient.
struct PresentedRing {
  Ring ring;
  IntegerMatrix lift;
  IntegerMatrix projection;
};

PresentedRing present_ring(const Vector& moduli, const std::vector<std::vector<Vector>>& ambient_mult,
                           const Vector& ambient_unit, std::string label = {});

/// M_n(R); ambient basis E_ab (x) e_i ordered (a, b, i) row-major.
Ring matrix_ring(const Ring& r, std::size_t n);
PresentedRing matrix_ring_presented(const Ring& r, std::size_t n);
Ring opposite_ring(const Ring& r);
Ring direct_product(const Ring& a, const Ring& b);
/// (Z/m)[x]/(f) with f monic of degree >= 1; coefficients low to high,
/// the leading 1 included.
Ring polynomial_quotient(std::int64_t m, const std::vector<std::int64_t>& monic);

/// Additive map given by its matrix on generators: columns are images.
/// True iff it is a unital ring homomorphism source -> target.
bool is_ring_homomorphism(const FiniteRing& source, const FiniteRing& target, const IntegerMatrix& map);

}  // namespace moritalab::rings
