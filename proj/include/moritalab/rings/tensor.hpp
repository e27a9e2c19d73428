#pragma once

#include "moritalab/exact/lattice.hpp"
#include "moritalab/rings/bimodule.hpp"

namespace moritalab::rings {

/// M (x)_S N with its canonical balanced map.
///
/// The ambient lattice has one generator per pair (m_i, n_j), index
/// i * rank(N) + j. `relations` holds the balancing relations as columns
/// (the biadditivity relations are the ambient moduli gcd(d_i, e_j)).
struct TensorProductResult {
  BimodulePtr left;
  BimodulePtr right;
  BimodulePtr product;
  Vector ambient_moduli;
  IntegerMatrix relations;
  /// product.rank x ambient; column (i, j) is tau(m_i, n_j).
  IntegerMatrix projection;
  /// ambient x product.rank; ambient representatives of product generators.
  IntegerMatrix lift;

  Vector tau(std::size_t i, std::size_t j) const;
  /// tau(m, n) for arbitrary elements, by bilinearity.
  Vector tau(const Vector& m, const Vector& n) const;
};

/// Throws RingMismatch when M.right_ring differs from N.left_ring.
TensorProductResult tensor_product(const BimodulePtr& m, const BimodulePtr& n);

/// A map on generator pairs: column (i, j) is phi(m_i, n_j) in `target`.
struct BalancedMap {
  BimodulePtr target;
  IntegerMatrix values;
};

/// The unique bimodule map alpha with alpha o tau = phi. Throws NotBalanced
/// if phi is not well defined, not S-balanced, or not R-T bilinear.
BimoduleMap factor_through_tensor(const BalancedMap& phi, const TensorProductResult& t);

/// True iff the homogeneous system alpha o tau = 0 only has alpha = 0, i.e.
/// tau's image generates the product.
bool tau_image_generates(const TensorProductResult& t);

/// f (x) g : M (x) N -> M' (x) N'.
BimoduleMap tensor_maps(const BimoduleMap& f, const BimoduleMap& g, const TensorProductResult& source,
                        const TensorProductResult& target);

}  // namespace moritalab::rings
