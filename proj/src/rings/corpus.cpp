#include "moritalab/rings/corpus.hpp"

#include "moritalab/rings/search.hpp"

namespace moritalab::rings {

Ring upper_triangular(const Ring& r) {
  // Ambient basis E_11, E_12, E_22 tensored with the generators of r.
  const std::size_t k = r->rank();
  const std::size_t n = 3 * k;
  const auto idx = [k](std::size_t block, std::size_t i) { return block * k + i; };
  Vector moduli(n);
  for (std::size_t b = 0; b < 3; ++b)
    for (std::size_t i = 0; i < k; ++i) moduli[idx(b, i)] = r->additive().invariant_factors()[i];
  // E_ab E_cd = [b == c] E_ad with blocks 0 = (1,1), 1 = (1,2), 2 = (2,2).
  const int row[3] = {0, 0, 1}, col[3] = {0, 1, 1};
  const auto block_of = [](int a, int d) { return a == 0 ? (d == 0 ? 0 : 1) : 2; };
  std::vector<std::vector<Vector>> mult(n, std::vector<Vector>(n, Vector(n)));
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y) {
      if (col[x] != row[y]) continue;
      const std::size_t z = block_of(row[x], col[y]);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          for (std::size_t t = 0; t < k; ++t) mult[idx(x, i)][idx(y, j)][idx(z, t)] = r->product_of_generators(i, j)[t];
    }
  Vector unit(n);
  for (std::size_t i = 0; i < k; ++i) {
    unit[idx(0, i)] = r->unit()[i];
    unit[idx(2, i)] = r->unit()[i];
  }
  return ring_from_ambient(moduli, mult, unit, "T_2(" + r->label() + ")");
}

std::vector<NamedRing> ring_corpus() {
  const Ring f2 = FiniteRing::cyclic(2);
  return {
      {"Z/2", f2},
      {"Z/3", FiniteRing::cyclic(3)},
      {"Z/4", FiniteRing::cyclic(4)},
      {"Z/6", FiniteRing::cyclic(6)},
      {"Z/8", FiniteRing::cyclic(8)},
      {"Z/12", FiniteRing::cyclic(12)},
      {"F2[x]/(x^2)", polynomial_quotient(2, {0, 0, 1})},
      {"F4", polynomial_quotient(2, {1, 1, 1})},
      {"F2[x]/(x^3)", polynomial_quotient(2, {0, 0, 0, 1})},
      {"Z/3[x]/(x^2)", polynomial_quotient(3, {0, 0, 1})},
      {"F2 x F2", direct_product(f2, f2)},
      {"Z/2 x Z/4", direct_product(f2, FiniteRing::cyclic(4))},
      {"T_2(F2)", upper_triangular(f2)},
  };
}

std::vector<TensorPair> tensor_pair_corpus() {
  std::vector<TensorPair> pairs;
  {
    // Z/4 and Z/6 with Z/12 acting through reduction.
    const Ring z12 = FiniteRing::cyclic(12);
    const IntegerMatrix one{{1}};
    auto z4 = std::make_shared<const Bimodule>(z12, z12, FiniteAbelianGroup::cyclic(4), std::vector<IntegerMatrix>{one},
                                               std::vector<IntegerMatrix>{one}, "Z/4");
    auto z6 = std::make_shared<const Bimodule>(z12, z12, FiniteAbelianGroup::cyclic(6), std::vector<IntegerMatrix>{one},
                                               std::vector<IntegerMatrix>{one}, "Z/6");
    pairs.push_back({"Z/4 (x)_Z/12 Z/6", z4, z6});
  }
  for (const auto& [name, s] : ring_corpus()) {
    const BimodulePtr reg = regular_bimodule(s);
    pairs.push_back({name + " regular (x) regular", reg, reg});

    const std::int64_t bound = s->order() <= Integer(4) ? 8 : 4;
    std::vector<BimodulePtr> rights, lefts;
    for (const auto& m : right_module_family(s, bound))
      if (m->rank() > 0) rights.push_back(m);
    for (const auto& m : left_module_family(s, bound))
      if (m->rank() > 0) lefts.push_back(m);
    // First, middle and last members of each family.
    const auto pick = [](const std::vector<BimodulePtr>& v) {
      std::vector<BimodulePtr> out;
      if (v.empty()) return out;
      for (std::size_t i : {std::size_t{0}, v.size() / 2, v.size() - 1})
        if (out.empty() || out.back() != v[i]) out.push_back(v[i]);
      return out;
    };
    const auto rs = pick(rights), ls = pick(lefts);
    for (const auto& m : rs)
      for (const auto& n : ls) pairs.push_back({name + ": " + m->label() + " (x) " + n->label(), m, n});
    if (!ls.empty()) pairs.push_back({name + ": regular (x) " + ls.back()->label(), reg, ls.back()});
    if (!rs.empty()) pairs.push_back({name + ": " + rs.back()->label() + " (x) regular", rs.back(), reg});
  }
  return pairs;
}

}  // namespace moritalab::rings
