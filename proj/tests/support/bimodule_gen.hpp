#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "moritalab/rings/corpus.hpp"
#include "moritalab/rings/search.hpp"
#include "moritalab/rings/tensor.hpp"
#include "support/random.hpp"

namespace moritalab::gen {

// Random (A, B)-bimodules of small order: U (x)_{Z/c} V for a left A-module
// U and a right B-module V of the same characteristic c, or the regular
// bimodule when A = B.
class BimoduleGen {
 public:
  BimoduleGen(std::uint64_t seed, std::int64_t family_bound = 4) : g_(seed), bound_(family_bound) {}

  Gen& gen() { return g_; }

  rings::BimodulePtr bimodule(const rings::Ring& a, const rings::Ring& b, std::int64_t max_order) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
      if (a == b && g_.integer(0, 3) == 0) return rings::regular_bimodule(a);
      const auto& lefts = family(a, false);
      const auto& rights = family(b, true);
      const auto& u = lefts[g_.index(lefts.size())];
      const auto& v = rights[g_.index(rights.size())];
      if (!rings::same_ring(u->right_ring(), v->left_ring())) continue;
      auto p = rings::tensor_product(u, v).product;
      if (p->rank() > 0 && p->carrier().order() <= exact::Integer(max_order)) return p;
    }
    throw std::runtime_error("no small bimodule between " + a->str() + " and " + b->str());
  }

 private:
  const std::vector<rings::BimodulePtr>& family(const rings::Ring& r, bool right) {
    auto& slot = cache_[{r.get(), right}];
    if (slot.empty()) {
      for (const auto& m : right ? rings::right_module_family(r, bound_) : rings::left_module_family(r, bound_))
        if (m->rank() > 0) slot.push_back(m);
    }
    return slot;
  }

  Gen g_;
  std::int64_t bound_;
  std::map<std::pair<const rings::FiniteRing*, bool>, std::vector<rings::BimodulePtr>> cache_;
};

}  // namespace moritalab::gen
