#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "moritalab/rings/bimodule.hpp"

namespace moritalab::rings {

struct SearchOptions {
  /// Rings above this order are refused with SearchBudgetExceeded.
  Integer max_order = Integer(1LL << 16);
  /// Search nodes before giving up with SearchBudgetExceeded.
  std::uint64_t node_budget = 2'000'000;
};

struct SearchStats {
  std::uint64_t nodes = 0;
};

/// Enumerate unital ring homomorphisms source -> target (as matrices whose
/// columns are the images of source generators) by backtracking with
/// linear domain propagation. The visitor returns false to stop. With
/// `injective` set, only injective maps are produced.
void enumerate_ring_homs(const FiniteRing& source, const FiniteRing& target, bool injective,
                         const std::function<bool(const IntegerMatrix&)>& visit, std::uint64_t node_budget,
                         SearchStats* stats = nullptr);

struct RingIsoResult {
  /// Columns are the images of the generators of R.
  std::optional<IntegerMatrix> iso;
  /// Search nodes explored; for NotFound this is the exhausted bound.
  std::uint64_t explored = 0;
  std::string reason;

  bool found() const noexcept { return iso.has_value(); }
};

/// Ring isomorphism R -> S or NotFound after exhaustive search.
RingIsoResult ring_iso_search(const FiniteRing& r, const FiniteRing& s, const SearchOptions& options = {});

struct BimoduleIsoResult {
  enum class Status { Isomorphic, NotIsomorphic, BudgetExhausted };
  Status status = Status::NotIsomorphic;
  std::optional<BimoduleMap> iso;
  std::string reason;
};

/// Compare carrier invariants, then look for a bijective element of
/// Hom(M, N) by enumerating at most `budget` elements.
BimoduleIsoResult find_bimodule_isomorphism(const BimodulePtr& m, const BimodulePtr& n,
                                            std::uint64_t budget = 1'000'000);

/// Finite abelian groups (invariant factors) with exponent dividing
/// `exponent_divisor` and order <= max_order, smallest first.
std::vector<FiniteAbelianGroup> abelian_groups_up_to(std::int64_t max_order, std::int64_t exponent_divisor);

/// Every right S-module whose carrier has order <= max_order: one entry per
/// (carrier, action) pair, the zero module included.
std::vector<BimodulePtr> right_module_family(const Ring& s, std::int64_t max_order, std::uint64_t node_budget = 2'000'000);
/// Left S-modules as (S, Z/char S)-bimodules, same enumeration order.
std::vector<BimodulePtr> left_module_family(const Ring& s, std::int64_t max_order, std::uint64_t node_budget = 2'000'000);

}  // namespace moritalab::rings
