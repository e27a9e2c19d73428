#include "moritalab/exact/lattice.hpp"

#include <algorithm>
#include <utility>

#include "moritalab/error.hpp"

namespace moritalab::exact {

namespace {

// Working state for the Smith reduction; every elementary operation on D is
// mirrored on the transforms and their inverses.
class SmithReducer {
 public:
  explicit SmithReducer(const IntegerMatrix& a)
      : d_(a),
        u_(IntegerMatrix::identity(a.rows())),
        u_inv_(IntegerMatrix::identity(a.rows())),
        v_(IntegerMatrix::identity(a.cols())),
        v_inv_(IntegerMatrix::identity(a.cols())) {}

  SmithDecomposition run() {
    const std::size_t m = d_.rows();
    const std::size_t n = d_.cols();
    const std::size_t limit = std::min(m, n);
    for (std::size_t t = 0; t < limit; ++t) {
      std::size_t pr = 0, pc = 0;
      if (!find_min_pivot(t, pr, pc)) break;
      row_swap(t, pr);
      col_swap(t, pc);
      while (true) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (d_(i, t).is_zero()) continue;
          row_add(i, t, -floor_div(d_(i, t), d_(t, t)));
          if (!d_(i, t).is_zero()) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (d_(t, j).is_zero()) continue;
          col_add(j, t, -floor_div(d_(t, j), d_(t, t)));
          if (!d_(t, j).is_zero()) clean = false;
        }
        if (!clean) {
          bring_cross_pivot(t);
          continue;
        }
        bool fixed = false;
        for (std::size_t i = t + 1; i < m && !fixed; ++i) {
          for (std::size_t j = t + 1; j < n; ++j) {
            if (!divides(d_(t, t), d_(i, j))) {
              row_add(t, i, Integer(1));
              fixed = true;
              break;
            }
          }
        }
        if (!fixed) break;
      }
    }
    for (std::size_t t = 0; t < limit; ++t) {
      if (d_(t, t).sign() < 0) row_negate(t);
    }
    return SmithDecomposition{std::move(u_), std::move(d_), std::move(v_), std::move(u_inv_), std::move(v_inv_)};
  }

 private:
  bool find_min_pivot(std::size_t t, std::size_t& pr, std::size_t& pc) const {
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < d_.rows(); ++i) {
      for (std::size_t j = t; j < d_.cols(); ++j) {
        if (d_(i, j).is_zero()) continue;
        Integer a = abs(d_(i, j));
        if (!found || a < best) {
          best = std::move(a);
          pr = i;
          pc = j;
          found = true;
        }
      }
    }
    return found;
  }

  // After a pass leaves remainders in row t / column t, move the smallest
  // one (ties: lowest row, then lowest column) onto the diagonal.
  void bring_cross_pivot(std::size_t t) {
    bool found = false;
    Integer best;
    std::size_t pr = t, pc = t;
    auto consider = [&](std::size_t i, std::size_t j) {
      if (d_(i, j).is_zero()) return;
      Integer a = abs(d_(i, j));
      if (!found || a < best || (a == best && (i < pr || (i == pr && j < pc)))) {
        best = std::move(a);
        pr = i;
        pc = j;
        found = true;
      }
    };
    for (std::size_t j = t + 1; j < d_.cols(); ++j) consider(t, j);
    for (std::size_t i = t + 1; i < d_.rows(); ++i) consider(i, t);
    if (!found) return;
    if (pr != t) row_swap(t, pr);
    if (pc != t) col_swap(t, pc);
  }

  void row_add(std::size_t dst, std::size_t src, const Integer& f) {
    if (f.is_zero()) return;
    d_.add_row_multiple(dst, src, f);
    u_.add_row_multiple(dst, src, f);
    u_inv_.add_col_multiple(src, dst, -f);
  }
  void row_swap(std::size_t a, std::size_t b) {
    if (a == b) return;
    d_.swap_rows(a, b);
    u_.swap_rows(a, b);
    u_inv_.swap_cols(a, b);
  }
  void row_negate(std::size_t r) {
    d_.negate_row(r);
    u_.negate_row(r);
    u_inv_.negate_col(r);
  }
  void col_add(std::size_t dst, std::size_t src, const Integer& f) {
    if (f.is_zero()) return;
    d_.add_col_multiple(dst, src, f);
    v_.add_col_multiple(dst, src, f);
    v_inv_.add_row_multiple(src, dst, -f);
  }
  void col_swap(std::size_t a, std::size_t b) {
    if (a == b) return;
    d_.swap_cols(a, b);
    v_.swap_cols(a, b);
    v_inv_.swap_rows(a, b);
  }

  IntegerMatrix d_, u_, u_inv_, v_, v_inv_;
};

bool all_positive(const Vector& moduli) {
  return std::all_of(moduli.begin(), moduli.end(), [](const Integer& m) { return !m.is_zero(); });
}

Integer lcm_of(const Vector& moduli) {
  Integer l = 1;
  for (const auto& m : moduli) l = lcm(l, m);
  return l;
}

// Echelon basis (leading index = first nonzero coordinate) of the Z-span of
// `vectors` modulo N * Z^len. Unimodular pairwise combinations only, so the
// generated module mod N is unchanged. At most len vectors come back.
std::vector<Vector> echelon_mod(const std::vector<Vector>& vectors, std::size_t len, const Integer& modulus) {
  std::vector<std::optional<Vector>> pivots(len);
  for (const auto& input : vectors) {
    Vector v(len);
    for (std::size_t i = 0; i < len; ++i) v[i] = mod(input[i], modulus);
    for (std::size_t r = 0; r < len; ++r) {
      if (v[r].is_zero()) continue;
      if (!pivots[r]) {
        pivots[r] = std::move(v);
        break;
      }
      Vector& p = *pivots[r];
      const Bezout bz = extended_gcd(p[r], v[r]);
      const Integer pa = exact_div(p[r], bz.g);
      const Integer va = exact_div(v[r], bz.g);
      Vector np(len), nv(len);
      for (std::size_t i = r; i < len; ++i) {
        np[i] = mod(bz.s * p[i] + bz.t * v[i], modulus);
        nv[i] = mod(va * p[i] - pa * v[i], modulus);
      }
      p = std::move(np);
      v = std::move(nv);
    }
  }
  std::vector<Vector> out;
  for (auto& p : pivots)
    if (p) out.push_back(std::move(*p));
  return out;
}

// Column generators of colspan(a) + N Z^n, reduced to at most n columns.
IntegerMatrix compress_columns(const IntegerMatrix& a, const Integer& modulus) {
  std::vector<Vector> cols;
  cols.reserve(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) cols.push_back(a.column(c));
  return IntegerMatrix::from_columns(a.rows(), echelon_mod(cols, a.rows(), modulus));
}

}  // namespace

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  const std::size_t limit = std::min(D.rows(), D.cols());
  while (r < limit && !D(r, r).is_zero()) ++r;
  return r;
}

Vector SmithDecomposition::diagonal() const {
  const std::size_t limit = std::min(D.rows(), D.cols());
  Vector d(limit);
  for (std::size_t i = 0; i < limit; ++i) d[i] = D(i, i);
  return d;
}

SmithDecomposition smith_normal_form(const IntegerMatrix& a) { return SmithReducer(a).run(); }

Vector Cokernel::project(const Vector& ambient) const { return group.reduce(projection * ambient); }

Cokernel cokernel(const IntegerMatrix& a, const Vector& moduli) {
  const std::size_t n = moduli.size();
  if (a.rows() != n && !(a.cols() == 0)) {
    throw Error(ErrorKind::InvalidArgument, "cokernel: relation rows must match moduli length");
  }
  IntegerMatrix gens = a.rows() == n ? a : IntegerMatrix(n, 0);
  if (all_positive(moduli) && n > 0 && gens.cols() > n) gens = compress_columns(gens, lcm_of(moduli));
  const IntegerMatrix rel = hstack(gens, IntegerMatrix::diagonal(moduli));
  const SmithDecomposition snf = smith_normal_form(rel);

  std::vector<Integer> factors;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer d = i < std::min(rel.rows(), rel.cols()) ? snf.D(i, i) : Integer(0);
    if (d.is_zero()) throw Error(ErrorKind::InfiniteQuotient, "quotient has a free summand");
    if (d == Integer(1)) continue;
    factors.push_back(d);
    kept.push_back(i);
  }
  Cokernel out;
  out.group = FiniteAbelianGroup(std::move(factors));
  out.projection = IntegerMatrix(kept.size(), n);
  out.lift = IntegerMatrix(n, kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      out.projection(k, j) = snf.U(kept[k], j);
      out.lift(j, k) = snf.U_inv(j, kept[k]);
    }
  }
  return out;
}

std::optional<CongruenceSolution> solve_congruences(const IntegerMatrix& a_in, const Vector& moduli_in,
                                                    const Vector& b_in) {
  const std::size_t n = a_in.cols();
  if (a_in.rows() != moduli_in.size() || a_in.rows() != b_in.size()) {
    throw Error(ErrorKind::InvalidArgument, "solve_congruences: inconsistent dimensions");
  }
  IntegerMatrix a = a_in;
  Vector moduli = moduli_in;
  Vector b = b_in;

  // Tall systems with finite moduli: bring every row to the common modulus
  // N and keep only an echelon basis of the augmented row module mod N.
  if (a.rows() > n + 1 && all_positive(moduli)) {
    const Integer big = lcm_of(moduli);
    std::vector<Vector> rows;
    rows.reserve(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
      const Integer scale = exact_div(big, abs(moduli[r]));
      Vector row(n + 1);
      for (std::size_t c = 0; c < n; ++c) row[c] = a(r, c) * scale;
      row[n] = b[r] * scale;
      rows.push_back(std::move(row));
    }
    std::vector<Vector> reduced = echelon_mod(rows, n + 1, big);
    a = IntegerMatrix(reduced.size(), n);
    moduli.assign(reduced.size(), big);
    b.assign(reduced.size(), Integer(0));
    for (std::size_t r = 0; r < reduced.size(); ++r) {
      for (std::size_t c = 0; c < n; ++c) a(r, c) = reduced[r][c];
      b[r] = reduced[r][n];
    }
  }

  const std::size_t m = a.rows();
  if (m == 0) return CongruenceSolution{Vector(n), IntegerMatrix::identity(n)};

  const IntegerMatrix system = hstack(a, IntegerMatrix::diagonal(moduli));
  const SmithDecomposition snf = smith_normal_form(system);
  const std::size_t r = snf.rank();
  const Vector c = snf.U * b;
  Vector z(system.cols());
  for (std::size_t i = 0; i < m; ++i) {
    if (i < r) {
      if (!divides(snf.D(i, i), c[i])) return std::nullopt;
      z[i] = exact_div(c[i], snf.D(i, i));
    } else if (!c[i].is_zero()) {
      return std::nullopt;
    }
  }
  const Vector full = snf.V * z;
  CongruenceSolution sol;
  sol.particular.assign(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<Vector> kernel_cols;
  for (std::size_t j = r; j < system.cols(); ++j) {
    Vector col(n);
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      col[i] = snf.V(i, j);
      nonzero = nonzero || !col[i].is_zero();
    }
    if (nonzero) kernel_cols.push_back(std::move(col));
  }
  sol.kernel = IntegerMatrix::from_columns(n, kernel_cols);
  return sol;
}

SubgroupPresentation::SubgroupPresentation(const IntegerMatrix& generators, const Vector& ambient_moduli)
    : moduli_(ambient_moduli) {
  const std::size_t n = moduli_.size();
  if (generators.rows() != n && generators.cols() != 0) {
    throw Error(ErrorKind::InvalidArgument, "subgroup generators do not match ambient rank");
  }
  if (!all_positive(moduli_)) throw Error(ErrorKind::InvalidArgument, "ambient group must be finite");
  IntegerMatrix gens = generators.rows() == n ? generators : IntegerMatrix(n, 0);
  if (n > 0) gens = compress_columns(gens, lcm_of(moduli_));
  const SmithDecomposition snf = smith_normal_form(hstack(gens, IntegerMatrix::diagonal(moduli_)));
  basis_transform_ = snf.U;
  basis_scales_ = Vector(n);
  for (std::size_t i = 0; i < n; ++i) basis_scales_[i] = snf.D(i, i);

  // Coordinates relative to the lattice basis B = U^-1 diag(d); the ambient
  // relations diag(a) become T = diag(d)^-1 U diag(a).
  IntegerMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t(i, j) = exact_div(snf.U(i, j) * moduli_[j], basis_scales_[i]);
  cokernel_ = cokernel(t, Vector(n));

  IntegerMatrix basis(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) basis(i, j) = snf.U_inv(i, j) * basis_scales_[j];
  lift_ = basis * cokernel_.lift;
  for (std::size_t i = 0; i < lift_.rows(); ++i)
    for (std::size_t j = 0; j < lift_.cols(); ++j) lift_(i, j) = mod(lift_(i, j), moduli_[i]);
}

std::optional<Vector> SubgroupPresentation::coordinates(const Vector& ambient) const {
  const Vector y = basis_transform_ * ambient;
  Vector c(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!divides(basis_scales_[i], y[i])) return std::nullopt;
    c[i] = exact_div(y[i], basis_scales_[i]);
  }
  return cokernel_.project(c);
}

Vector SubgroupPresentation::to_ambient(const Vector& coords) const {
  Vector x = lift_ * coords;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i], moduli_[i]);
  return x;
}

}  // namespace moritalab::exact
