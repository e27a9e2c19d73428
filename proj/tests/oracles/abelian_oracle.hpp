#pragma once

// Brute-force enumeration oracles for finite abelian groups. Everything is
// plain int64 arithmetic over explicit element lists, independent of the
// Smith-form code paths they check.

#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace moritalab::oracle {

using Elem = std::vector<std::int64_t>;

inline std::int64_t emod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t product(const std::vector<std::int64_t>& moduli) {
  std::int64_t p = 1;
  for (auto m : moduli) p *= m;
  return p;
}

inline std::int64_t encode(const Elem& x, const std::vector<std::int64_t>& moduli) {
  std::int64_t code = 0;
  for (std::size_t i = 0; i < x.size(); ++i) code = code * moduli[i] + emod(x[i], moduli[i]);
  return code;
}

inline Elem decode(std::int64_t code, const std::vector<std::int64_t>& moduli) {
  Elem x(moduli.size());
  for (std::size_t i = moduli.size(); i-- > 0;) {
    x[i] = code % moduli[i];
    code /= moduli[i];
  }
  return x;
}

/// Membership table of the subgroup of (+)Z/m_i generated by `gens`.
inline std::vector<char> subgroup_closure(const std::vector<Elem>& gens, const std::vector<std::int64_t>& moduli) {
  const std::int64_t total = product(moduli);
  std::vector<char> in(static_cast<std::size_t>(total), 0);
  std::vector<std::int64_t> frontier{0};
  in[0] = 1;
  while (!frontier.empty()) {
    const std::int64_t cur = frontier.back();
    frontier.pop_back();
    const Elem x = decode(cur, moduli);
    for (const auto& g : gens) {
      Elem y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = emod(x[i] + g[i], moduli[i]);
      const std::int64_t c = encode(y, moduli);
      if (!in[static_cast<std::size_t>(c)]) {
        in[static_cast<std::size_t>(c)] = 1;
        frontier.push_back(c);
      }
    }
  }
  return in;
}

/// k -> #{x in G : k x = 0} for k = 1..limit, where G = ambient / H.
inline std::vector<std::int64_t> quotient_torsion_profile(const std::vector<char>& h,
                                                          const std::vector<std::int64_t>& moduli,
                                                          std::int64_t limit) {
  const std::int64_t total = product(moduli);
  std::int64_t h_order = 0;
  for (char c : h) h_order += c;
  std::vector<std::int64_t> profile;
  for (std::int64_t k = 1; k <= limit; ++k) {
    std::int64_t count = 0;
    for (std::int64_t code = 0; code < total; ++code) {
      Elem x = decode(code, moduli);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = emod(k * x[i], moduli[i]);
      if (h[static_cast<std::size_t>(encode(x, moduli))]) ++count;
    }
    profile.push_back(count / h_order);
  }
  return profile;
}

/// The same profile for a group given by invariant factors.
inline std::vector<std::int64_t> torsion_profile(const std::vector<std::int64_t>& factors, std::int64_t limit) {
  std::vector<std::int64_t> profile;
  for (std::int64_t k = 1; k <= limit; ++k) {
    std::int64_t count = 1;
    for (auto d : factors) count *= std::gcd(k, d);
    profile.push_back(count);
  }
  return profile;
}

inline std::int64_t lcm_all(const std::vector<std::int64_t>& v) {
  std::int64_t l = 1;
  for (auto x : v) l = std::lcm(l, x);
  return l;
}

}  // namespace moritalab::oracle
