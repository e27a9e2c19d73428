#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "moritalab/bicat/bicategory.hpp"
#include "moritalab/rings/tensor.hpp"

namespace moritalab::bicat {

/// Rings, bimodules and bimodule maps; composition is the tensor product
/// over the middle ring and 2-cells compare exactly.
///
/// Composites and identity bimodules are cached by pointer so that
/// compose(P, Q) returns the same object each time.
class RingsBicategory {
 public:
  using Object = rings::Ring;
  using OneCell = rings::BimodulePtr;
  using TwoCell = rings::BimoduleMap;

  explicit RingsBicategory(std::uint64_t iso_budget = 1'000'000) : iso_budget_(iso_budget) {}

  Object source(const OneCell& p) const { return p->left_ring(); }
  Object target(const OneCell& p) const { return p->right_ring(); }
  bool same_object(const Object& a, const Object& b) const { return rings::same_ring(a, b); }

  OneCell compose(const OneCell& p, const OneCell& q);
  OneCell unit(const Object& a);
  /// The tensor product data behind compose(p, q).
  const rings::TensorProductResult& tensor(const OneCell& p, const OneCell& q);

  TwoCell identity_cell(const OneCell& p) const { return rings::BimoduleMap::identity(p); }
  /// g o f.
  TwoCell vertical(const TwoCell& g, const TwoCell& f) const { return rings::compose(g, f); }
  TwoCell horizontal(const TwoCell& f, const TwoCell& g);

  TwoCell associator(const OneCell& p, const OneCell& q, const OneCell& r);
  TwoCell left_unitor(const OneCell& p);
  TwoCell right_unitor(const OneCell& p);

  double discrepancy(const TwoCell& a, const TwoCell& b) const;
  double tolerance() const { return 0.0; }
  bool is_invertible(const TwoCell& f) const { return f.is_bijective(); }
  std::optional<TwoCell> find_invertible(const OneCell& from, const OneCell& to) const;

 private:
  using Key = std::pair<const rings::Bimodule*, const rings::Bimodule*>;
  struct Entry {
    OneCell p, q;  // keep the keys alive
    rings::TensorProductResult result;
  };
  std::map<Key, Entry> tensors_;
  std::map<const rings::FiniteRing*, std::pair<Object, OneCell>> units_;
  std::uint64_t iso_budget_;
};

static_assert(BicategoryInstance<RingsBicategory>);

}  // namespace moritalab::bicat
