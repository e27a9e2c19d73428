#pragma once

#include <map>
#include <optional>
#include <utility>

#include "moritalab/bicat/bicategory.hpp"
#include "moritalab/wstar/fusion.hpp"

namespace moritalab::bicat {

/// Finite-dimensional von Neumann algebras with a fixed faithful state,
/// correspondences and bounded bimodule maps; composition is Connes fusion
/// over the middle algebra's standard form.
class WStarBicategory {
 public:
  using Object = wstar::StandardFormPtr;
  using OneCell = wstar::CorrespondencePtr;
  using TwoCell = wstar::Intertwiner;

  explicit WStarBicategory(double tol = numeric::kDefaultTolerance) : tol_(tol) {}

  Object source(const OneCell& h) const { return h->left(); }
  Object target(const OneCell& h) const { return h->right(); }
  bool same_object(const Object& a, const Object& b) const { return wstar::same_object(*a, *b); }

  OneCell compose(const OneCell& h, const OneCell& k) { return fusion(h, k).product; }
  OneCell unit(const Object& a);
  const wstar::FusionResult& fusion(const OneCell& h, const OneCell& k);

  TwoCell identity_cell(const OneCell& h) const { return wstar::identity_intertwiner(h); }
  /// g o f.
  TwoCell vertical(const TwoCell& g, const TwoCell& f) const;
  TwoCell horizontal(const TwoCell& f, const TwoCell& g);

  TwoCell associator(const OneCell& h, const OneCell& k, const OneCell& l);
  TwoCell left_unitor(const OneCell& h);
  TwoCell right_unitor(const OneCell& h);

  /// Operator norm of the difference; infinite when shapes differ.
  double discrepancy(const TwoCell& a, const TwoCell& b) const;
  double tolerance() const { return tol_; }
  bool is_invertible(const TwoCell& f) const;
  std::optional<TwoCell> find_invertible(const OneCell& from, const OneCell& to) const;

 private:
  using Key = std::pair<const wstar::Correspondence*, const wstar::Correspondence*>;
  std::map<Key, wstar::FusionResult> fusions_;
  std::map<const wstar::StandardForm*, std::pair<Object, OneCell>> units_;
  double tol_;
};

static_assert(BicategoryInstance<WStarBicategory>);

}  // namespace moritalab::bicat
