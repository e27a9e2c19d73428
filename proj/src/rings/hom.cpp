#include "moritalab/rings/hom.hpp"

#include <utility>

#include "moritalab/error.hpp"

namespace moritalab::rings {

namespace {

Vector flatten(const IntegerMatrix& m) {
  Vector v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t j = 0; j < m.rows(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i) v.push_back(m(j, i));
  return v;
}

IntegerMatrix unflatten(const Vector& v, std::size_t rows, std::size_t cols) {
  IntegerMatrix m(rows, cols);
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t i = 0; i < cols; ++i) m(j, i) = v[j * cols + i];
  return m;
}

Vector flat_moduli(const Bimodule& source, const Bimodule& target) {
  Vector mods;
  for (std::size_t j = 0; j < target.rank(); ++j)
    for (std::size_t i = 0; i < source.rank(); ++i) mods.push_back(target.carrier().invariant_factors()[j]);
  return mods;
}

// Rows of (X A - B X) = 0, entry (j, i) taken mod n_j.
void add_intertwining_rows(const IntegerMatrix& a, const IntegerMatrix& b, std::size_t src, std::size_t tgt,
                           const Vector& target_factors, std::vector<Vector>& rows, Vector& moduli) {
  for (std::size_t j = 0; j < tgt; ++j) {
    for (std::size_t i = 0; i < src; ++i) {
      Vector row(src * tgt);
      for (std::size_t k = 0; k < src; ++k) row[j * src + k] += a(k, i);
      for (std::size_t l = 0; l < tgt; ++l) row[l * src + i] -= b(j, l);
      bool nonzero = false;
      for (const auto& x : row)
        if (!exact::divides(target_factors[j], x)) {
          nonzero = true;
          break;
        }
      if (!nonzero) continue;
      rows.push_back(std::move(row));
      moduli.push_back(target_factors[j]);
    }
  }
}

}  // namespace

HomGroup::HomGroup(BimodulePtr source, BimodulePtr target, Side side, exact::SubgroupPresentation presentation)
    : source_(std::move(source)), target_(std::move(target)), side_(side), presentation_(std::move(presentation)) {
  for (std::size_t g = 0; g < presentation_.group().rank(); ++g)
    basis_.push_back(unflatten(presentation_.lift().column(g), target_->rank(), source_->rank()));
}

IntegerMatrix HomGroup::to_matrix(const Vector& coords) const {
  return unflatten(presentation_.to_ambient(coords), target_->rank(), source_->rank());
}

std::optional<Vector> HomGroup::coordinates(const IntegerMatrix& map) const {
  if (map.rows() != target_->rank() || map.cols() != source_->rank()) return std::nullopt;
  return presentation_.coordinates(flatten(map));
}

HomGroup hom_group(const BimodulePtr& m, const BimodulePtr& n, Side side) {
  const bool left = side == Side::Left || side == Side::Both;
  const bool right = side == Side::Right || side == Side::Both;
  if (left && !same_ring(m->left_ring(), n->left_ring()))
    throw Error(ErrorKind::RingMismatch, "Hom: left rings differ");
  if (right && !same_ring(m->right_ring(), n->right_ring()))
    throw Error(ErrorKind::RingMismatch, "Hom: right rings differ");

  const std::size_t src = m->rank(), tgt = n->rank();
  const Vector ambient = flat_moduli(*m, *n);
  const auto& d = m->carrier().invariant_factors();
  const auto& nf = n->carrier().invariant_factors();

  std::vector<Vector> rows;
  Vector moduli;
  for (std::size_t j = 0; j < tgt; ++j)
    for (std::size_t i = 0; i < src; ++i) {
      if (exact::divides(nf[j], d[i])) continue;
      Vector row(src * tgt);
      row[j * src + i] = d[i];
      rows.push_back(std::move(row));
      moduli.push_back(nf[j]);
    }
  if (left)
    for (std::size_t g = 0; g < m->left_actions().size(); ++g)
      add_intertwining_rows(m->left_action(g), n->left_action(g), src, tgt, nf, rows, moduli);
  if (right)
    for (std::size_t g = 0; g < m->right_actions().size(); ++g)
      add_intertwining_rows(m->right_action(g), n->right_action(g), src, tgt, nf, rows, moduli);

  IntegerMatrix kernel;
  if (rows.empty()) {
    kernel = IntegerMatrix::identity(src * tgt);
  } else {
    IntegerMatrix system(rows.size(), src * tgt);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < src * tgt; ++c) system(r, c) = rows[r][c];
    const auto sol = exact::solve_congruences(system, moduli, Vector(rows.size()));
    kernel = sol->kernel;
  }
  return HomGroup(m, n, side, exact::SubgroupPresentation(kernel, ambient));
}

EndRing end_ring(const BimodulePtr& m, Side side) {
  HomGroup h = hom_group(m, m, side);
  if (h.group().is_trivial()) throw Error(ErrorKind::UnitDegenerate, "endomorphism ring of the zero module");
  const std::size_t k = h.group().rank();
  std::vector<std::vector<Vector>> mult(k, std::vector<Vector>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) mult[a][b] = *h.coordinates(h.basis()[a] * h.basis()[b]);
  Vector unit = *h.coordinates(IntegerMatrix::identity(m->rank()));
  const char* tag = side == Side::Left ? "End_L(" : side == Side::Right ? "End_R(" : "End(";
  Ring ring = std::make_shared<const FiniteRing>(h.group(), std::move(mult), std::move(unit),
                                                 std::string(tag) + m->str() + ")");
  return EndRing{std::move(ring), std::move(h)};
}

}  // namespace moritalab::rings
