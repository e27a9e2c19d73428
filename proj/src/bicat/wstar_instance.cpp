#include "moritalab/bicat/wstar_instance.hpp"

#include <limits>

#include "moritalab/error.hpp"

namespace moritalab::bicat {

const wstar::FusionResult& WStarBicategory::fusion(const OneCell& h, const OneCell& k) {
  const Key key{h.get(), k.get()};
  auto it = fusions_.find(key);
  if (it == fusions_.end()) {
    if (!wstar::same_object(*h->right(), *k->left()))
      throw Error(ErrorKind::NotComposable, "correspondences are not composable");
    it = fusions_.emplace(key, wstar::connes_fusion(h, k, tol_)).first;
  }
  return it->second;
}

WStarBicategory::OneCell WStarBicategory::unit(const Object& a) {
  auto it = units_.find(a.get());
  if (it == units_.end()) it = units_.emplace(a.get(), std::make_pair(a, wstar::identity_correspondence(a))).first;
  return it->second.second;
}

WStarBicategory::TwoCell WStarBicategory::vertical(const TwoCell& g, const TwoCell& f) const {
  if (g.source != f.target) throw Error(ErrorKind::NotComposable, "vertical composite of unrelated cells");
  return TwoCell{f.source, g.target, g.matrix * f.matrix};
}

WStarBicategory::TwoCell WStarBicategory::horizontal(const TwoCell& f, const TwoCell& g) {
  const auto& src = fusion(f.source, g.source);
  const auto& tgt = fusion(f.target, g.target);
  return wstar::horizontal_composite(f, g, src, tgt);
}

WStarBicategory::TwoCell WStarBicategory::associator(const OneCell& h, const OneCell& k, const OneCell& l) {
  const auto& hk = fusion(h, k);
  const auto& kl = fusion(k, l);
  const auto& hk_l = fusion(hk.product, l);
  const auto& h_kl = fusion(h, kl.product);
  return wstar::associator(hk, hk_l, kl, h_kl);
}

WStarBicategory::TwoCell WStarBicategory::left_unitor(const OneCell& h) {
  return wstar::left_unitor(fusion(unit(h->left()), h));
}

WStarBicategory::TwoCell WStarBicategory::right_unitor(const OneCell& h) {
  return wstar::right_unitor(fusion(h, unit(h->right())));
}

double WStarBicategory::discrepancy(const TwoCell& a, const TwoCell& b) const {
  if (a.matrix.rows() != b.matrix.rows() || a.matrix.cols() != b.matrix.cols())
    return std::numeric_limits<double>::infinity();
  if (a.matrix.size() == 0) return 0.0;
  return numeric::operator_norm(a.matrix - b.matrix);
}

bool WStarBicategory::is_invertible(const TwoCell& f) const {
  return f.matrix.rows() == f.matrix.cols() && numeric::unitarity_residual(f.matrix) <= tol_ &&
         wstar::intertwining_residual(f) <= tol_;
}

std::optional<WStarBicategory::TwoCell> WStarBicategory::find_invertible(const OneCell& from, const OneCell& to) const {
  return wstar::find_unitary_intertwiner(from, to, 1, tol_).unitary;
}

}  // namespace moritalab::bicat
