#include "moritalab/rings/search.hpp"

#include <algorithm>
#include <utility>

#include "moritalab/error.hpp"
#include "moritalab/exact/lattice.hpp"
#include "moritalab/rings/hom.hpp"

namespace moritalab::rings {

namespace {

using I64 = std::int64_t;
using Vec64 = std::vector<I64>;

I64 emod(I64 a, I64 m) {
  const I64 r = a % m;
  return r < 0 ? r + m : r;
}

// Backtracking over generator images. Every unassigned variable gets a
// domain from the constraints that are linear in it given the current
// assignment; the smallest domain is branched on first.
class HomSearch {
 public:
  HomSearch(const FiniteRing& source, const FiniteRing& target, bool injective,
            const std::function<bool(const IntegerMatrix&)>& visit, std::uint64_t budget, SearchStats* stats)
      : a_(source), t_(target), injective_(injective), visit_(visit), budget_(budget), stats_(stats) {
    k_ = a_.rank();
    m_ = t_.rank();
    f_ = t_.moduli64();
    for (const auto& d : a_.additive().invariant_factors()) d_.push_back(d.to_int64());
    for (const auto& x : a_.unit()) u_.push_back(x.to_int64());
    support_.resize(k_ * k_);
    involving_.resize(k_);
    for (std::size_t a = 0; a < k_; ++a)
      for (std::size_t b = 0; b < k_; ++b) {
        auto& s = support_[a * k_ + b];
        for (std::size_t t = 0; t < k_; ++t)
          if (a_.constant64(a, b, t) != 0) s.push_back(t);
        std::vector<std::size_t> inv = s;
        inv.push_back(a);
        inv.push_back(b);
        std::sort(inv.begin(), inv.end());
        inv.erase(std::unique(inv.begin(), inv.end()), inv.end());
        for (std::size_t v : inv) involving_[v].push_back(a * k_ + b);
        involved_.push_back(std::move(inv));
      }
    for (std::size_t i = 0; i < k_; ++i)
      if (u_[i] != 0) unit_support_.push_back(i);
    y_.assign(k_, Vec64(m_, 0));
    assigned_.assign(k_, 0);
    t_unit_.resize(m_);
    for (std::size_t t = 0; t < m_; ++t) t_unit_[t] = t_.unit()[t].to_int64();
  }

  void run() { recurse(0); }

 private:
  struct Domain {
    Vec64 particular;
    std::optional<exact::SubgroupPresentation> span;
    Integer size;
  };

  struct Equation {
    std::vector<Vec64> matrix;  // m x m, row-major rows
    Vec64 rhs;
  };

  Vec64 product(const Vec64& x, const Vec64& y) const {
    Vec64 out(m_);
    t_.multiply64(x.data(), y.data(), out.data());
    return out;
  }

  // sum_t c_abt Y_t over t != skip
  Vec64 combination(std::size_t a, std::size_t b, std::size_t skip) const {
    Vec64 out(m_, 0);
    for (std::size_t t : support_[a * k_ + b]) {
      if (t == skip) continue;
      const I64 c = a_.constant64(a, b, t);
      for (std::size_t q = 0; q < m_; ++q) out[q] = emod(out[q] + emod(c, f_[q]) * y_[t][q], f_[q]);
    }
    return out;
  }

  bool all_assigned_except(const std::vector<std::size_t>& vars, std::size_t j) const {
    for (std::size_t v : vars)
      if (v != j && !assigned_[v]) return false;
    return true;
  }

  // Matrix of x -> y * x (left) or x -> x * y (right).
  std::vector<Vec64> multiplication_matrix(const Vec64& y, bool left) const {
    std::vector<Vec64> rows(m_, Vec64(m_, 0));
    Vec64 e(m_, 0), col(m_);
    for (std::size_t q = 0; q < m_; ++q) {
      e.assign(m_, 0);
      e[q] = 1;
      if (left) {
        t_.multiply64(y.data(), e.data(), col.data());
      } else {
        t_.multiply64(e.data(), y.data(), col.data());
      }
      for (std::size_t r = 0; r < m_; ++r) rows[r][q] = col[r];
    }
    return rows;
  }

  std::vector<Vec64> scalar_matrix(I64 c) const {
    std::vector<Vec64> rows(m_, Vec64(m_, 0));
    for (std::size_t r = 0; r < m_; ++r) rows[r][r] = c;
    return rows;
  }

  std::optional<Domain> domain(std::size_t j) const {
    std::vector<Equation> eqs;
    eqs.push_back(Equation{scalar_matrix(d_[j]), Vec64(m_, 0)});
    if (!u_.empty() && u_[j] != 0 && all_assigned_except(unit_support_, j)) {
      Vec64 rhs = t_unit_;
      for (std::size_t i : unit_support_) {
        if (i == j) continue;
        for (std::size_t q = 0; q < m_; ++q) rhs[q] = emod(rhs[q] - u_[i] * y_[i][q], f_[q]);
      }
      eqs.push_back(Equation{scalar_matrix(u_[j]), std::move(rhs)});
    }
    for (std::size_t a = 0; a < k_; ++a) {
      for (std::size_t b = 0; b < k_; ++b) {
        const std::size_t p = a * k_ + b;
        if (a == j && b == j) continue;
        const auto& inv = involved_[p];
        if (!std::binary_search(inv.begin(), inv.end(), j) || !all_assigned_except(inv, j)) continue;
        const I64 cj = a_.constant64(a, b, j);
        std::vector<Vec64> mat;
        Vec64 rhs = combination(a, b, j);
        if (b == j) {
          mat = multiplication_matrix(y_[a], true);
        } else if (a == j) {
          mat = multiplication_matrix(y_[b], false);
        } else {
          mat = scalar_matrix(0);
          const Vec64 yy = product(y_[a], y_[b]);
          for (std::size_t q = 0; q < m_; ++q) rhs[q] = emod(yy[q] - rhs[q], f_[q]);
        }
        if (a == j || b == j) {
          for (std::size_t q = 0; q < m_; ++q) mat[q][q] -= cj;
        } else {
          for (std::size_t q = 0; q < m_; ++q) mat[q][q] += cj;
        }
        eqs.push_back(Equation{std::move(mat), std::move(rhs)});
      }
    }

    const std::size_t rows = eqs.size() * m_;
    IntegerMatrix sys(rows, m_);
    Vector moduli(rows), rhs(rows);
    for (std::size_t e = 0; e < eqs.size(); ++e)
      for (std::size_t r = 0; r < m_; ++r) {
        const std::size_t row = e * m_ + r;
        moduli[row] = Integer(static_cast<long long>(f_[r]));
        rhs[row] = Integer(static_cast<long long>(eqs[e].rhs[r]));
        for (std::size_t q = 0; q < m_; ++q) sys(row, q) = Integer(static_cast<long long>(eqs[e].matrix[r][q]));
      }
    const auto sol = exact::solve_congruences(sys, moduli, rhs);
    if (!sol) return std::nullopt;
    Domain dom;
    dom.particular.resize(m_);
    for (std::size_t q = 0; q < m_; ++q) dom.particular[q] = exact::mod(sol->particular[q], moduli[q]).to_int64();
    dom.span.emplace(sol->kernel, t_.additive().invariant_factors());
    dom.size = dom.span->group().order();
    return dom;
  }

  bool square_checkable(std::size_t j) const { return all_assigned_except(involved_[j * k_ + j], j); }

  bool consistent(std::size_t j) const {
    for (std::size_t p : involving_[j]) {
      if (!all_assigned_except(involved_[p], std::size_t(-1))) continue;
      const std::size_t a = p / k_, b = p % k_;
      const Vec64 lhs = product(y_[a], y_[b]);
      if (lhs != combination(a, b, std::size_t(-1))) return false;
    }
    if (u_[j] != 0 && all_assigned_except(unit_support_, std::size_t(-1))) {
      Vec64 s(m_, 0);
      for (std::size_t i : unit_support_)
        for (std::size_t q = 0; q < m_; ++q) s[q] = emod(s[q] + u_[i] * y_[i][q], f_[q]);
      if (s != t_unit_) return false;
    }
    if (injective_) {
      std::vector<Vector> cols;
      Integer expected = 1;
      for (std::size_t i = 0; i < k_; ++i) {
        if (!assigned_[i]) continue;
        Vector c(m_);
        for (std::size_t q = 0; q < m_; ++q) c[q] = Integer(static_cast<long long>(y_[i][q]));
        cols.push_back(std::move(c));
        expected *= Integer(static_cast<long long>(d_[i]));
      }
      if (image_order(IntegerMatrix::from_columns(m_, cols), t_.additive()) != expected) return false;
    }
    return true;
  }

  void recurse(std::size_t depth) {
    if (stop_) return;
    if (depth == k_) {
      IntegerMatrix map(m_, k_);
      for (std::size_t i = 0; i < k_; ++i)
        for (std::size_t q = 0; q < m_; ++q) map(q, i) = Integer(static_cast<long long>(y_[i][q]));
      if (!visit_(map)) stop_ = true;
      return;
    }
    std::size_t best = k_;
    std::optional<Domain> best_dom;
    bool best_checkable = false;
    for (std::size_t j = 0; j < k_; ++j) {
      if (assigned_[j]) continue;
      auto dom = domain(j);
      if (!dom) return;
      const bool checkable = square_checkable(j);
      if (best == k_ || dom->size < best_dom->size ||
          (dom->size == best_dom->size && checkable && !best_checkable)) {
        best = j;
        best_checkable = checkable;
        best_dom = std::move(dom);
      }
    }
    const std::size_t j = best;
    const Domain& dom = *best_dom;
    assigned_[j] = 1;
    dom.span->group().for_each_element([&](const Vector& c) {
      if (++nodes_ > budget_) {
        throw Error(ErrorKind::SearchBudgetExceeded,
                    "ring homomorphism search exceeded " + std::to_string(budget_) + " nodes");
      }
      if (stats_) stats_->nodes = nodes_;
      const Vector offset = dom.span->to_ambient(c);
      for (std::size_t q = 0; q < m_; ++q) y_[j][q] = emod(dom.particular[q] + offset[q].to_int64(), f_[q]);
      if (consistent(j)) recurse(depth + 1);
      return !stop_;
    });
    assigned_[j] = 0;
  }

  const FiniteRing& a_;
  const FiniteRing& t_;
  bool injective_;
  const std::function<bool(const IntegerMatrix&)>& visit_;
  std::uint64_t budget_;
  SearchStats* stats_;
  std::size_t k_ = 0, m_ = 0;
  Vec64 f_, d_, u_, t_unit_;
  std::vector<std::vector<std::size_t>> support_, involved_, involving_;
  std::vector<std::size_t> unit_support_;
  std::vector<Vec64> y_;
  std::vector<char> assigned_;
  std::uint64_t nodes_ = 0;
  bool stop_ = false;
};

void groups_rec(std::vector<Integer>& cur, const Integer& order, std::int64_t max_order, std::int64_t e,
                std::vector<FiniteAbelianGroup>& out) {
  out.emplace_back(cur);
  const std::int64_t last = cur.empty() ? 1 : cur.back().to_int64();
  for (std::int64_t d = std::max<std::int64_t>(2, last); d <= e; ++d) {
    if (e % d != 0 || d % last != 0) continue;
    if (order.to_int64() * d > max_order) continue;
    cur.emplace_back(static_cast<long long>(d));
    groups_rec(cur, order * Integer(static_cast<long long>(d)), max_order, e, out);
    cur.pop_back();
  }
}

}  // namespace

void enumerate_ring_homs(const FiniteRing& source, const FiniteRing& target, bool injective,
                         const std::function<bool(const IntegerMatrix&)>& visit, std::uint64_t node_budget,
                         SearchStats* stats) {
  HomSearch search(source, target, injective, visit, node_budget, stats);
  search.run();
}

RingIsoResult ring_iso_search(const FiniteRing& r, const FiniteRing& s, const SearchOptions& options) {
  RingIsoResult result;
  if (r.additive() != s.additive()) {
    result.reason = "additive groups differ: " + r.additive().str() + " vs " + s.additive().str();
    return result;
  }
  if (r.order() > options.max_order) {
    throw Error(ErrorKind::SearchBudgetExceeded,
                "ring order " + r.order().str() + " exceeds the search cap " + options.max_order.str());
  }
  if (r.characteristic() != s.characteristic()) {
    result.reason = "characteristics differ";
    return result;
  }
  if (r.is_commutative() != s.is_commutative()) {
    result.reason = "exactly one ring is commutative";
    return result;
  }
  SearchStats stats;
  enumerate_ring_homs(
      r, s, true,
      [&](const IntegerMatrix& m) {
        result.iso = m;
        return false;
      },
      options.node_budget, &stats);
  result.explored = stats.nodes;
  if (!result.iso) result.reason = "exhaustive search found no isomorphism";
  return result;
}

BimoduleIsoResult find_bimodule_isomorphism(const BimodulePtr& m, const BimodulePtr& n, std::uint64_t budget) {
  BimoduleIsoResult result;
  if (!same_ring(m->left_ring(), n->left_ring()) || !same_ring(m->right_ring(), n->right_ring())) {
    result.reason = "rings differ";
    return result;
  }
  if (m->carrier() != n->carrier()) {
    result.reason = "carriers differ: " + m->carrier().str() + " vs " + n->carrier().str();
    return result;
  }
  const HomGroup h = hom_group(m, n, Side::Both);
  std::uint64_t seen = 0;
  bool exhausted = false;
  h.group().for_each_element([&](const Vector& c) {
    if (++seen > budget) {
      exhausted = true;
      return false;
    }
    const IntegerMatrix mat = h.to_matrix(c);
    if (image_order(mat, n->carrier()) == n->carrier().order()) {
      result.iso = BimoduleMap::trusted(m, n, mat);
      return false;
    }
    return true;
  });
  if (result.iso) {
    result.status = BimoduleIsoResult::Status::Isomorphic;
  } else if (exhausted) {
    result.status = BimoduleIsoResult::Status::BudgetExhausted;
    result.reason = "no bijection among the first " + std::to_string(budget) + " bimodule maps";
  } else {
    result.reason = "no bimodule map is bijective";
  }
  return result;
}

std::vector<FiniteAbelianGroup> abelian_groups_up_to(std::int64_t max_order, std::int64_t exponent_divisor) {
  std::vector<FiniteAbelianGroup> out;
  std::vector<Integer> cur;
  groups_rec(cur, Integer(1), max_order, exponent_divisor, out);
  std::stable_sort(out.begin(), out.end(), [](const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.order() < b.order();
  });
  return out;
}

namespace {

// One module per (carrier, action): actions are ring homs `acting` -> End(A).
std::vector<BimodulePtr> module_family(const Ring& s, std::int64_t max_order, std::uint64_t node_budget,
                                       bool right) {
  std::vector<BimodulePtr> family;
  const Ring scalars = scalar_ring_for(s);
  const Ring acting = right ? opposite_ring(s) : s;
  const std::int64_t c = s->characteristic().to_int64();
  auto make = [&](const FiniteAbelianGroup& g, std::vector<IntegerMatrix> action, std::string label) {
    const std::size_t n = g.rank();
    std::vector<IntegerMatrix> scalar(scalars->rank(), IntegerMatrix::identity(n));
    if (right) return std::make_shared<const Bimodule>(scalars, s, g, std::move(scalar), std::move(action), label);
    return std::make_shared<const Bimodule>(s, scalars, g, std::move(action), std::move(scalar), label);
  };
  for (const auto& g : abelian_groups_up_to(max_order, c)) {
    const std::size_t n = g.rank();
    if (n == 0) {
      family.push_back(make(g, std::vector<IntegerMatrix>(s->rank(), IntegerMatrix(0, 0)), "0"));
      continue;
    }
    const auto plain = std::make_shared<const Bimodule>(scalars, scalars, g, std::vector<IntegerMatrix>{IntegerMatrix::identity(n)},
                                                        std::vector<IntegerMatrix>{IntegerMatrix::identity(n)});
    const EndRing end = end_ring(plain, Side::Both);
    std::size_t index = 0;
    enumerate_ring_homs(
        *acting, *end.ring, false,
        [&](const IntegerMatrix& phi) {
          std::vector<IntegerMatrix> action;
          for (std::size_t j = 0; j < s->rank(); ++j) action.push_back(end.hom.to_matrix(phi.column(j)));
          family.push_back(make(g, std::move(action), g.str() + " #" + std::to_string(index++)));
          return true;
        },
        node_budget);
  }
  return family;
}

}  // namespace

std::vector<BimodulePtr> right_module_family(const Ring& s, std::int64_t max_order, std::uint64_t node_budget) {
  return module_family(s, max_order, node_budget, true);
}

std::vector<BimodulePtr> left_module_family(const Ring& s, std::int64_t max_order, std::uint64_t node_budget) {
  return module_family(s, max_order, node_budget, false);
}

}  // namespace moritalab::rings
