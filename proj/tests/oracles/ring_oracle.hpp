#pragma once

// Enumeration oracles for rings and bimodules. They read only the raw
// structure data (invariant factors, structure constants, action matrices)
// and work element by element in int64.

#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "moritalab/rings/bimodule.hpp"
#include "oracles/abelian_oracle.hpp"

namespace moritalab::oracle {

inline std::vector<std::int64_t> factors_of(const exact::FiniteAbelianGroup& g) {
  std::vector<std::int64_t> out;
  for (const auto& d : g.invariant_factors()) out.push_back(d.to_int64());
  return out;
}

inline std::vector<std::vector<std::int64_t>> small_matrix(const exact::IntegerMatrix& m) {
  std::vector<std::vector<std::int64_t>> out(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).to_int64();
  return out;
}

/// x -> A x reduced into moduli.
inline Elem apply(const std::vector<std::vector<std::int64_t>>& a, const Elem& x,
                  const std::vector<std::int64_t>& moduli) {
  Elem y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) acc = emod(acc + a[i][j] * x[j], moduli[i]);
    y[i] = acc;
  }
  return y;
}

/// Multiplication of ring elements from the structure constants.
inline Elem ring_multiply(const rings::FiniteRing& r, const Elem& x, const Elem& y) {
  const auto mods = factors_of(r.additive());
  Elem out(mods.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) {
      const auto& e = r.product_of_generators(i, j);
      for (std::size_t t = 0; t < mods.size(); ++t) out[t] = emod(out[t] + x[i] * y[j] % mods[t] * e[t].to_int64(), mods[t]);
    }
  return out;
}

/// Associativity and unit law over every element (triple) of the ring.
inline bool ring_axioms_by_enumeration(const rings::FiniteRing& r) {
  const auto mods = factors_of(r.additive());
  const std::int64_t n = product(mods);
  Elem unit;
  for (const auto& u : r.unit()) unit.push_back(u.to_int64());
  std::vector<Elem> elems;
  for (std::int64_t c = 0; c < n; ++c) elems.push_back(decode(c, mods));
  for (const auto& x : elems) {
    if (ring_multiply(r, unit, x) != x || ring_multiply(r, x, unit) != x) return false;
    for (const auto& y : elems) {
      const Elem xy = ring_multiply(r, x, y);
      for (const auto& z : elems)
        if (ring_multiply(r, xy, z) != ring_multiply(r, x, ring_multiply(r, y, z))) return false;
    }
  }
  return true;
}

/// Order of M (x)_S N and its torsion profile, from the free lattice on
/// generator pairs modulo biadditivity and balancing over every s in S.
struct TensorOracle {
  std::int64_t order = 0;
  std::vector<std::int64_t> profile;
};

inline TensorOracle tensor_oracle(const rings::Bimodule& m, const rings::Bimodule& n, std::int64_t limit) {
  const auto dm = factors_of(m.carrier());
  const auto dn = factors_of(n.carrier());
  const auto& s = *m.right_ring();
  const auto ds = factors_of(s.additive());
  std::vector<std::int64_t> ambient;
  for (auto a : dm)
    for (auto b : dn) ambient.push_back(std::gcd(a, b));
  const std::size_t a = dm.size(), b = dn.size();
  std::vector<std::vector<std::vector<std::int64_t>>> rho, lam;
  for (std::size_t g = 0; g < ds.size(); ++g) {
    rho.push_back(small_matrix(m.right_action(g)));
    lam.push_back(small_matrix(n.left_action(g)));
  }
  std::vector<Elem> relations;
  const std::int64_t s_order = product(ds);
  for (std::int64_t code = 0; code < s_order; ++code) {
    const Elem sc = decode(code, ds);
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < b; ++j) {
        Elem rel(a * b, 0);
        for (std::size_t g = 0; g < ds.size(); ++g) {
          if (sc[g] == 0) continue;
          for (std::size_t k = 0; k < a; ++k) rel[k * b + j] += sc[g] * rho[g][k][i];
          for (std::size_t l = 0; l < b; ++l) rel[i * b + l] -= sc[g] * lam[g][l][j];
        }
        for (std::size_t t = 0; t < rel.size(); ++t) rel[t] = emod(rel[t], ambient[t]);
        relations.push_back(std::move(rel));
      }
  }
  const auto h = subgroup_closure(relations, ambient);
  std::int64_t h_order = 0;
  for (char c : h) h_order += c;
  return TensorOracle{product(ambient) / h_order, quotient_torsion_profile(h, ambient, limit)};
}

/// Number of additive maps M -> N commuting with the requested actions.
inline std::int64_t hom_count(const rings::Bimodule& m, const rings::Bimodule& n, bool left, bool right) {
  const auto dm = factors_of(m.carrier());
  const auto dn = factors_of(n.carrier());
  // Image of each generator m_i ranges over N; the map is well defined iff
  // d_i * image = 0.
  std::vector<std::int64_t> choices;
  for (std::size_t i = 0; i < dm.size(); ++i) choices.push_back(product(dn));
  const std::int64_t total = product(choices);
  std::vector<std::vector<std::vector<std::int64_t>>> ml, nl, mr, nr;
  if (left)
    for (std::size_t g = 0; g < m.left_actions().size(); ++g) {
      ml.push_back(small_matrix(m.left_action(g)));
      nl.push_back(small_matrix(n.left_action(g)));
    }
  if (right)
    for (std::size_t g = 0; g < m.right_actions().size(); ++g) {
      mr.push_back(small_matrix(m.right_action(g)));
      nr.push_back(small_matrix(n.right_action(g)));
    }
  std::int64_t count = 0;
  for (std::int64_t code = 0; code < total; ++code) {
    const Elem pick = decode(code, choices);
    std::vector<Elem> cols;
    bool ok = true;
    for (std::size_t i = 0; i < dm.size() && ok; ++i) {
      cols.push_back(decode(pick[i], dn));
      for (std::size_t t = 0; t < dn.size(); ++t)
        if (emod(dm[i] * cols.back()[t], dn[t]) != 0) ok = false;
    }
    if (!ok) continue;
    const auto f = [&](const Elem& x) {
      Elem y(dn.size(), 0);
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t t = 0; t < dn.size(); ++t) y[t] = emod(y[t] + x[i] * cols[i][t], dn[t]);
      return y;
    };
    const auto intertwines = [&](const auto& src, const auto& tgt) {
      for (std::size_t g = 0; g < src.size(); ++g)
        for (std::size_t i = 0; i < dm.size(); ++i) {
          Elem e(dm.size(), 0);
          e[i] = 1;
          if (f(apply(src[g], e, dm)) != apply(tgt[g], f(e), dn)) return false;
        }
      return true;
    };
    if (intertwines(ml, nl) && intertwines(mr, nr)) ++count;
  }
  return count;
}

/// Number of k x k matrices over F2 with N^2 = 0.
inline std::int64_t square_zero_count(std::size_t k) {
  std::int64_t count = 0;
  const std::int64_t total = std::int64_t{1} << (k * k);
  for (std::int64_t code = 0; code < total; ++code) {
    const auto at = [&](std::size_t i, std::size_t j) { return (code >> (i * k + j)) & 1; };
    bool zero = true;
    for (std::size_t i = 0; i < k && zero; ++i)
      for (std::size_t j = 0; j < k && zero; ++j) {
        std::int64_t acc = 0;
        for (std::size_t t = 0; t < k; ++t) acc ^= at(i, t) & at(t, j);
        zero = acc == 0;
      }
    count += zero;
  }
  return count;
}

}  // namespace moritalab::oracle
