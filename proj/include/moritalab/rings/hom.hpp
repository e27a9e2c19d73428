#pragma once

#include <optional>

#include "moritalab/exact/lattice.hpp"
#include "moritalab/rings/bimodule.hpp"

namespace moritalab::rings {

/// Which actions a map must respect.
enum class Side { Left, Right, Both };

/// Hom group with an explicit basis of maps.
///
/// A map is flattened row-major (entry (j, i) at j * rank(M) + i) into
/// (+)Z/n_j, n_j the invariant factors of N.
class HomGroup {
 public:
  HomGroup(BimodulePtr source, BimodulePtr target, Side side, exact::SubgroupPresentation presentation);

  const FiniteAbelianGroup& group() const { return presentation_.group(); }
  const BimodulePtr& source() const noexcept { return source_; }
  const BimodulePtr& target() const noexcept { return target_; }
  Side side() const noexcept { return side_; }
  const std::vector<IntegerMatrix>& basis() const noexcept { return basis_; }

  IntegerMatrix to_matrix(const Vector& coords) const;
  /// nullopt when the matrix is not a side-linear map.
  std::optional<Vector> coordinates(const IntegerMatrix& map) const;

 private:
  BimodulePtr source_, target_;
  Side side_;
  exact::SubgroupPresentation presentation_;
  std::vector<IntegerMatrix> basis_;
};

/// All additive maps M -> N commuting with the actions on `side`. The
/// rings on that side must agree (RingMismatch otherwise).
HomGroup hom_group(const BimodulePtr& m, const BimodulePtr& n, Side side);

/// End ring with composition (f g)(x) = f(g(x)); its additive generators are
/// the maps of `hom.basis()`. Throws UnitDegenerate for the zero module.
struct EndRing {
  Ring ring;
  HomGroup hom;
};
EndRing end_ring(const BimodulePtr& m, Side side);

}  // namespace moritalab::rings
