#pragma once

#include "moritalab/wstar/correspondence.hpp"

namespace moritalab::wstar {

inline constexpr Eigen::Index kFusionDimensionCap = 10'000;

/// R_eta : L^2(N) -> H, determined by R_eta(J Lambda(y^*)) = eta y.
ComplexMatrix r_eta(const Correspondence& h, const ComplexVector& eta);

/// H (x)_N K with the factor map from the algebraic tensor product.
/// Ambient index of e_a (x) f_b is a * dim K + b.
struct FusionResult {
  CorrespondencePtr h, k;
  CorrespondencePtr product;
  ComplexMatrix gram;        // (, )_0 on the ambient basis
  ComplexMatrix projection;  // ambient -> product
  ComplexMatrix lift;        // product -> ambient representatives

  ComplexVector class_of(const ComplexVector& eta, const ComplexVector& zeta) const;
};

/// Throws AlgebraMismatch when H's right object is not K's left object and
/// DimensionCap when dim H * dim K exceeds max_ambient.
FusionResult connes_fusion(const CorrespondencePtr& h, const CorrespondencePtr& k,
                           double tol = numeric::kDefaultTolerance, Eigen::Index max_ambient = kFusionDimensionCap);

/// Lambda(x) (x) zeta -> x zeta on a fusion L^2(M) (x)_M K.
Intertwiner left_unitor(const FusionResult& l2_k);
/// eta (x) Lambda(y) -> eta (Delta^{-1/2} y Delta^{1/2}) on H (x)_N L^2(N).
Intertwiner right_unitor(const FusionResult& h_l2);
/// eta (x) Lambda(y) -> eta (Delta^t y Delta^{-t}); right_unitor is t = -1/2.
ComplexMatrix twisted_right_multiplication(const FusionResult& h_l2, double t);

/// (eta (x) zeta) (x) xi -> eta (x) (zeta (x) xi), realized on Gram-quotient
/// representatives and re-projected.
Intertwiner associator(const FusionResult& hk, const FusionResult& hk_l, const FusionResult& kl,
                       const FusionResult& h_kl);

/// f (x) g between two fusions.
Intertwiner horizontal_composite(const Intertwiner& f, const Intertwiner& g, const FusionResult& source,
                                 const FusionResult& target);

}  // namespace moritalab::wstar
