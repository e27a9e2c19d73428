#pragma once

#include <optional>

#include "moritalab/exact/abelian_group.hpp"
#include "moritalab/exact/matrix.hpp"

namespace moritalab::exact {

/// D = U * A * V with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
/// The inverses are tracked alongside so callers never invert U or V.
struct SmithDecomposition {
  IntegerMatrix U, D, V;
  IntegerMatrix U_inv, V_inv;

  std::size_t rank() const;
  Vector diagonal() const;
};

/// Smith normal form. Pivot = nonzero entry of least absolute value, ties
/// broken by lowest (row, col); the output is a deterministic function of A.
SmithDecomposition smith_normal_form(const IntegerMatrix& a);

/// Z^n / (im A + diag(moduli) Z^n) in invariant-factor form.
struct Cokernel {
  FiniteAbelianGroup group;
  /// k x n; ambient vector -> group coordinates (before reduction).
  IntegerMatrix projection;
  /// n x k; column i is an ambient representative of generator i.
  IntegerMatrix lift;

  Vector project(const Vector& ambient) const;
};

/// Throws InfiniteQuotient when a free summand survives. A has n rows;
/// moduli has length n, a zero modulus meaning a free direction.
Cokernel cokernel(const IntegerMatrix& a, const Vector& moduli);

/// Solutions of A x = b (mod moduli, one modulus per row; 0 = exact) as
/// particular + kernel * Z^p.
struct CongruenceSolution {
  Vector particular;
  IntegerMatrix kernel;  // n x p
};

/// std::nullopt means no solution.
std::optional<CongruenceSolution> solve_congruences(const IntegerMatrix& a, const Vector& moduli,
                                                    const Vector& b);

/// The subgroup of the finite group (+)Z/a_i generated by the columns of
/// `generators`, with canonical coordinates.
class SubgroupPresentation {
 public:
  SubgroupPresentation(const IntegerMatrix& generators, const Vector& ambient_moduli);

  const FiniteAbelianGroup& group() const noexcept { return cokernel_.group; }
  /// n x k; ambient representatives of the canonical generators.
  const IntegerMatrix& lift() const noexcept { return lift_; }
  /// Canonical coordinates of an ambient vector, or nullopt if outside.
  std::optional<Vector> coordinates(const Vector& ambient) const;
  Vector to_ambient(const Vector& coords) const;

 private:
  Vector moduli_;
  IntegerMatrix basis_transform_;  // U from the lattice SNF
  Vector basis_scales_;            // d_i
  Cokernel cokernel_;
  IntegerMatrix lift_;
};

}  // namespace moritalab::exact
