#include "moritalab/rings/tensor.hpp"

#include <utility>

#include "moritalab/error.hpp"

namespace moritalab::rings {

namespace {

IntegerMatrix kron_left(const IntegerMatrix& a, std::size_t b) { return exact::kronecker(a, IntegerMatrix::identity(b)); }
IntegerMatrix kron_right(std::size_t a, const IntegerMatrix& b) { return exact::kronecker(IntegerMatrix::identity(a), b); }

bool same_carrier_bimodule(const Bimodule& a, const Bimodule& b) {
  return a.carrier() == b.carrier() && same_ring(a.left_ring(), b.left_ring()) &&
         same_ring(a.right_ring(), b.right_ring()) && a.left_actions() == b.left_actions() &&
         a.right_actions() == b.right_actions();
}

}  // namespace

Vector TensorProductResult::tau(std::size_t i, std::size_t j) const {
  return product->carrier().reduce(projection.column(i * right->rank() + j));
}

Vector TensorProductResult::tau(const Vector& m, const Vector& n) const {
  const std::size_t b = right->rank();
  Vector ambient(ambient_moduli.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].is_zero()) continue;
    for (std::size_t j = 0; j < n.size(); ++j)
      if (!n[j].is_zero()) ambient[i * b + j] = m[i] * n[j];
  }
  return product->carrier().reduce(projection * ambient);
}

TensorProductResult tensor_product(const BimodulePtr& m, const BimodulePtr& n) {
  if (!same_ring(m->right_ring(), n->left_ring())) {
    throw Error(ErrorKind::RingMismatch,
                "cannot tensor over " + m->right_ring()->str() + " with a module over " + n->left_ring()->str());
  }
  const std::size_t a = m->rank(), b = n->rank();
  const std::size_t dim = a * b;
  const auto& d = m->carrier().invariant_factors();
  const auto& e = n->carrier().invariant_factors();

  TensorProductResult t;
  t.left = m;
  t.right = n;
  t.ambient_moduli.resize(dim);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) t.ambient_moduli[i * b + j] = exact::gcd(d[i], e[j]);

  const Ring& s = m->right_ring();
  std::vector<Vector> rels;
  for (std::size_t g = 0; g < s->rank(); ++g) {
    const IntegerMatrix& rho = m->right_action(g);
    const IntegerMatrix& lam = n->left_action(g);
    for (std::size_t i = 0; i < a; ++i) {
      for (std::size_t j = 0; j < b; ++j) {
        // (m_i s) (x) n_j - m_i (x) (s n_j)
        Vector rel(dim);
        for (std::size_t x = 0; x < a; ++x) rel[x * b + j] += rho(x, i);
        for (std::size_t y = 0; y < b; ++y) rel[i * b + y] -= lam(y, j);
        bool nonzero = false;
        for (std::size_t z = 0; z < dim && !nonzero; ++z)
          nonzero = !exact::divides(t.ambient_moduli[z], rel[z]);
        if (nonzero) rels.push_back(std::move(rel));
      }
    }
  }
  t.relations = IntegerMatrix::from_columns(dim, rels);

  const exact::Cokernel cok = exact::cokernel(t.relations, t.ambient_moduli);
  t.projection = cok.projection;
  t.lift = cok.lift;

  std::vector<IntegerMatrix> left, right;
  for (const auto& l : m->left_actions()) left.push_back(cok.group.reduce_map(t.projection * kron_left(l, b) * t.lift));
  for (const auto& r : n->right_actions())
    right.push_back(cok.group.reduce_map(t.projection * kron_right(a, r) * t.lift));
  std::string label;
  if (!m->label().empty() && !n->label().empty()) label = "(" + m->label() + ") (x) (" + n->label() + ")";
  t.product = std::make_shared<const Bimodule>(m->left_ring(), n->right_ring(), cok.group, std::move(left),
                                               std::move(right), std::move(label));
  return t;
}

BimoduleMap factor_through_tensor(const BalancedMap& phi, const TensorProductResult& t) {
  const Bimodule& x = *phi.target;
  const Bimodule& m = *t.left;
  const Bimodule& n = *t.right;
  if (!same_ring(x.left_ring(), m.left_ring()) || !same_ring(x.right_ring(), n.right_ring()))
    throw Error(ErrorKind::RingMismatch, "balanced map target has the wrong rings");
  const std::size_t dim = t.ambient_moduli.size();
  if (phi.values.rows() != x.rank() || phi.values.cols() != dim)
    throw Error(ErrorKind::InvalidArgument, "balanced map has wrong shape");
  const auto& xc = x.carrier();

  IntegerMatrix scaled = phi.values;
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < scaled.rows(); ++r) scaled(r, c) *= t.ambient_moduli[c];
  if (!xc.same_map(scaled, IntegerMatrix(x.rank(), dim)))
    throw Error(ErrorKind::NotBalanced, "map is not biadditive on generator pairs");
  if (t.relations.cols() > 0 && !xc.same_map(phi.values * t.relations, IntegerMatrix(x.rank(), t.relations.cols())))
    throw Error(ErrorKind::NotBalanced, "map is not balanced over the middle ring");
  for (std::size_t i = 0; i < m.left_actions().size(); ++i)
    if (!xc.same_map(phi.values * kron_left(m.left_action(i), n.rank()), x.left_action(i) * phi.values))
      throw Error(ErrorKind::NotBalanced, "map is not left linear");
  for (std::size_t j = 0; j < n.right_actions().size(); ++j)
    if (!xc.same_map(phi.values * kron_right(m.rank(), n.right_action(j)), x.right_action(j) * phi.values))
      throw Error(ErrorKind::NotBalanced, "map is not right linear");

  return BimoduleMap(t.product, phi.target, phi.values * t.lift);
}

bool tau_image_generates(const TensorProductResult& t) {
  return image_order(t.projection, t.product->carrier()) == t.product->carrier().order();
}

BimoduleMap tensor_maps(const BimoduleMap& f, const BimoduleMap& g, const TensorProductResult& source,
                        const TensorProductResult& target) {
  if (!same_carrier_bimodule(*f.source(), *source.left) || !same_carrier_bimodule(*g.source(), *source.right) ||
      !same_carrier_bimodule(*f.target(), *target.left) || !same_carrier_bimodule(*g.target(), *target.right)) {
    throw Error(ErrorKind::NotComposable, "tensor of maps: products do not match the maps");
  }
  const IntegerMatrix k = exact::kronecker(f.matrix(), g.matrix());
  return BimoduleMap(source.product, target.product, target.projection * k * source.lift);
}

}  // namespace moritalab::rings
