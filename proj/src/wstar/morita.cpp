#include "moritalab/wstar/morita.hpp"

#include <algorithm>
#include <cmath>

namespace moritalab::wstar {

std::string to_string(MoritaRefutation::Reason r) {
  switch (r) {
    case MoritaRefutation::Reason::NotFaithful: return "NotFaithful";
    case MoritaRefutation::Reason::CommutantMismatch: return "CommutantMismatch";
    case MoritaRefutation::Reason::FusionNotStandard: return "FusionNotStandard";
  }
  return "Unknown";
}

MoritaResult certify_morita_equivalent(const CorrespondencePtr& h, double tol) {
  MoritaRefutation refutation;
  const Eigen::Index d = h->dimension();
  const auto& left = h->left_units();
  const auto& right = h->right_units();

  ComplexMatrix stacked(d * d, static_cast<Eigen::Index>(left.size()));
  for (std::size_t a = 0; a < left.size(); ++a)
    stacked.col(static_cast<Eigen::Index>(a)) = left[a].reshaped();
  const numeric::HermitianSpectrum g = numeric::hermitian_eigen(stacked.adjoint() * stacked);
  const double margin = std::sqrt(std::max(0.0, g.eigenvalues[0]));
  if (margin <= tol) {
    refutation.reasons.push_back(MoritaRefutation::Reason::NotFaithful);
    refutation.detail += "pi_l has a kernel (smallest singular value " + std::to_string(margin) + "); ";
  }

  double residual = 1.0;
  if (d > 0) {
    std::vector<ComplexMatrix> gens;
    for (Eigen::Index a : h->left()->algebra().generating_units()) gens.push_back(left[static_cast<std::size_t>(a)]);
    const auto comm = numeric::commutant(gens, static_cast<std::size_t>(d), tol);
    const auto image = numeric::generated_algebra(right, static_cast<std::size_t>(d), tol);
    residual = 0;
    for (const auto& c : comm) residual = std::max(residual, numeric::span_residual(c, image));
    for (const auto& c : image) residual = std::max(residual, numeric::span_residual(c, comm));
  }
  if (residual > tol) {
    refutation.reasons.push_back(MoritaRefutation::Reason::CommutantMismatch);
    refutation.detail += "commutant of pi_l(M) differs from pi_r(N) (residual " + std::to_string(residual) + "); ";
  }
  if (!refutation.reasons.empty()) return refutation;

  const CorrespondencePtr bar = conjugate_correspondence(h);
  FusionResult h_hbar = connes_fusion(h, bar, tol);
  FusionResult hbar_h = connes_fusion(bar, h, tol);
  const auto to_m = find_unitary_intertwiner(h_hbar.product, identity_correspondence(h->left()), 1, tol);
  const auto to_n = find_unitary_intertwiner(hbar_h.product, identity_correspondence(h->right()), 2, tol);
  if (!to_m.unitary || !to_n.unitary) {
    refutation.reasons.push_back(MoritaRefutation::Reason::FusionNotStandard);
    refutation.detail = to_m.unitary ? to_n.reason : to_m.reason;
    return refutation;
  }
  return MoritaCertificate{h,      bar,     margin, residual, std::move(h_hbar), std::move(hbar_h),
                           *to_m.unitary, *to_n.unitary};
}

}  // namespace moritalab::wstar
