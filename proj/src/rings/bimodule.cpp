#include "moritalab/rings/bimodule.hpp"

#include <utility>

#include "moritalab/error.hpp"
#include "moritalab/exact/lattice.hpp"

namespace moritalab::rings {

namespace {

IntegerMatrix combine(const std::vector<IntegerMatrix>& mats, const Vector& coeffs, const FiniteAbelianGroup& g) {
  IntegerMatrix out(g.rank(), g.rank());
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    for (std::size_t r = 0; r < out.rows(); ++r)
      for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) += coeffs[i] * mats[i](r, c);
  }
  return g.reduce_map(std::move(out));
}

void check_square(const IntegerMatrix& m, std::size_t n, const char* what) {
  if (m.rows() != n || m.cols() != n)
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " matrix has wrong shape");
}

}  // namespace

Bimodule::Bimodule(Ring left, Ring right, FiniteAbelianGroup carrier, std::vector<IntegerMatrix> left_action,
                   std::vector<IntegerMatrix> right_action, std::string label)
    : left_(std::move(left)),
      right_(std::move(right)),
      carrier_(std::move(carrier)),
      left_action_(std::move(left_action)),
      right_action_(std::move(right_action)),
      label_(std::move(label)) {
  if (!left_ || !right_) throw Error(ErrorKind::InvalidArgument, "bimodule needs both rings");
  const std::size_t n = carrier_.rank();
  if (left_action_.size() != left_->rank() || right_action_.size() != right_->rank())
    throw Error(ErrorKind::InvalidArgument, "one action matrix per ring generator is required");
  const auto& dl = left_->additive().invariant_factors();
  const auto& dr = right_->additive().invariant_factors();
  for (std::size_t i = 0; i < left_action_.size(); ++i) {
    check_square(left_action_[i], n, "left action");
    if (!FiniteAbelianGroup::is_homomorphism(left_action_[i], carrier_, carrier_))
      throw Error(ErrorKind::InvalidArgument, "left action is not additive on the carrier");
    left_action_[i] = carrier_.reduce_map(std::move(left_action_[i]));
    if (!carrier_.same_map(IntegerMatrix::diagonal(Vector(n, dl[i])) * left_action_[i], IntegerMatrix(n, n)))
      throw Error(ErrorKind::InvalidArgument, "left action does not respect the ring's additive relations");
  }
  for (std::size_t j = 0; j < right_action_.size(); ++j) {
    check_square(right_action_[j], n, "right action");
    if (!FiniteAbelianGroup::is_homomorphism(right_action_[j], carrier_, carrier_))
      throw Error(ErrorKind::InvalidArgument, "right action is not additive on the carrier");
    right_action_[j] = carrier_.reduce_map(std::move(right_action_[j]));
    if (!carrier_.same_map(IntegerMatrix::diagonal(Vector(n, dr[j])) * right_action_[j], IntegerMatrix(n, n)))
      throw Error(ErrorKind::InvalidArgument, "right action does not respect the ring's additive relations");
  }
  const IntegerMatrix id = IntegerMatrix::identity(n);
  if (!carrier_.same_map(left_matrix(left_->unit()), id))
    throw Error(ErrorKind::InvalidArgument, "left action is not unital");
  if (!carrier_.same_map(right_matrix(right_->unit()), id))
    throw Error(ErrorKind::InvalidArgument, "right action is not unital");
  for (std::size_t i = 0; i < left_->rank(); ++i)
    for (std::size_t j = 0; j < left_->rank(); ++j)
      if (!carrier_.same_map(left_matrix(left_->product_of_generators(i, j)), left_action_[i] * left_action_[j]))
        throw Error(ErrorKind::InvalidArgument, "left action is not multiplicative");
  for (std::size_t i = 0; i < right_->rank(); ++i)
    for (std::size_t j = 0; j < right_->rank(); ++j)
      if (!carrier_.same_map(right_matrix(right_->product_of_generators(i, j)),
                             right_action_[j] * right_action_[i]))
        throw Error(ErrorKind::InvalidArgument, "right action is not a right action");
  for (const auto& l : left_action_)
    for (const auto& r : right_action_)
      if (!carrier_.same_map(l * r, r * l)) throw Error(ErrorKind::InvalidArgument, "actions do not commute");
}

IntegerMatrix Bimodule::left_matrix(const Vector& r) const { return combine(left_action_, r, carrier_); }

IntegerMatrix Bimodule::right_matrix(const Vector& s) const { return combine(right_action_, s, carrier_); }

Vector Bimodule::act_left(const Vector& r, const Vector& m) const { return carrier_.reduce(left_matrix(r) * m); }

Vector Bimodule::act_right(const Vector& m, const Vector& s) const { return carrier_.reduce(right_matrix(s) * m); }

std::string Bimodule::str() const {
  if (!label_.empty()) return label_;
  return "(" + left_->str() + ", " + right_->str() + ")-bimodule on " + carrier_.str();
}

BimodulePtr bimodule_from_ambient(Ring left, Ring right, const Vector& moduli,
                                  const std::vector<IntegerMatrix>& left_ambient,
                                  const std::vector<IntegerMatrix>& right_ambient, std::string label) {
  const exact::Cokernel cok = exact::cokernel(IntegerMatrix(moduli.size(), 0), moduli);
  std::vector<IntegerMatrix> l, r;
  for (const auto& m : left_ambient) l.push_back(cok.group.reduce_map(cok.projection * m * cok.lift));
  for (const auto& m : right_ambient) r.push_back(cok.group.reduce_map(cok.projection * m * cok.lift));
  return std::make_shared<const Bimodule>(std::move(left), std::move(right), cok.group, std::move(l), std::move(r),
                                          std::move(label));
}

BimodulePtr regular_bimodule(const Ring& r) {
  std::vector<IntegerMatrix> l, rr;
  for (std::size_t i = 0; i < r->rank(); ++i) {
    l.push_back(r->left_multiplication(r->generator(i)));
    rr.push_back(r->right_multiplication(r->generator(i)));
  }
  return std::make_shared<const Bimodule>(r, r, r->additive(), std::move(l), std::move(rr), r->str());
}

Ring scalar_ring_for(const Ring& s) {
  const Integer c = s->characteristic();
  return FiniteRing::cyclic(c.to_int64());
}

BimodulePtr right_module(const Ring& s, FiniteAbelianGroup carrier, std::vector<IntegerMatrix> right_action,
                         std::string label) {
  const std::size_t n = carrier.rank();
  std::vector<IntegerMatrix> l{IntegerMatrix::identity(n)};
  return std::make_shared<const Bimodule>(scalar_ring_for(s), s, std::move(carrier), std::move(l),
                                          std::move(right_action), std::move(label));
}

BimodulePtr underlying_right_module(const BimodulePtr& m) {
  return right_module(m->right_ring(), m->carrier(), m->right_actions(), m->label());
}

BimodulePtr column_module(const Ring& r, std::size_t n) {
  const PresentedRing e = matrix_ring_presented(r, n);
  const std::size_t k = r->rank();
  const std::size_t amb_e = n * n * k;
  const std::size_t dim = n * k;
  Vector moduli(dim);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < k; ++i) moduli[a * k + i] = r->additive().invariant_factors()[i];

  // left action of each ambient matrix unit E_ab (x) r_i
  std::vector<IntegerMatrix> ambient_left(amb_e, IntegerMatrix(dim, dim));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t i = 0; i < k; ++i) {
        IntegerMatrix& m = ambient_left[(a * n + b) * k + i];
        for (std::size_t j = 0; j < k; ++j) {
          const Vector& p = r->product_of_generators(i, j);
          for (std::size_t t = 0; t < k; ++t) m(a * k + t, b * k + j) = p[t];
        }
      }
  std::vector<IntegerMatrix> left;
  for (std::size_t g = 0; g < e.ring->rank(); ++g) {
    IntegerMatrix m(dim, dim);
    for (std::size_t x = 0; x < amb_e; ++x)
      if (!e.lift(x, g).is_zero()) m = m + IntegerMatrix::diagonal(Vector(dim, e.lift(x, g))) * ambient_left[x];
    left.push_back(std::move(m));
  }
  std::vector<IntegerMatrix> right;
  for (std::size_t s = 0; s < k; ++s) {
    IntegerMatrix m(dim, dim);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t j = 0; j < k; ++j) {
        const Vector& p = r->product_of_generators(j, s);
        for (std::size_t t = 0; t < k; ++t) m(a * k + t, a * k + j) = p[t];
      }
    right.push_back(std::move(m));
  }
  return bimodule_from_ambient(e.ring, r, moduli, left, right,
                               r->str() + "^" + std::to_string(n) + " over (" + e.ring->str() + ", " + r->str() + ")");
}

bool is_bimodule_map(const Bimodule& source, const Bimodule& target, const IntegerMatrix& matrix) {
  if (!same_ring(source.left_ring(), target.left_ring()) || !same_ring(source.right_ring(), target.right_ring()))
    return false;
  if (!FiniteAbelianGroup::is_homomorphism(matrix, source.carrier(), target.carrier())) return false;
  const auto& tc = target.carrier();
  for (std::size_t i = 0; i < source.left_actions().size(); ++i)
    if (!tc.same_map(matrix * source.left_action(i), target.left_action(i) * matrix)) return false;
  for (std::size_t j = 0; j < source.right_actions().size(); ++j)
    if (!tc.same_map(matrix * source.right_action(j), target.right_action(j) * matrix)) return false;
  return true;
}

Integer image_order(const IntegerMatrix& map, const FiniteAbelianGroup& target) {
  if (target.is_trivial()) return Integer(1);
  return exact::SubgroupPresentation(map, target.invariant_factors()).group().order();
}

BimoduleMap::BimoduleMap(BimodulePtr source, BimodulePtr target, IntegerMatrix matrix, bool)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_->rank() || matrix_.cols() != source_->rank())
    throw Error(ErrorKind::InvalidArgument, "bimodule map has wrong shape");
  matrix_ = target_->carrier().reduce_map(std::move(matrix_));
}

BimoduleMap::BimoduleMap(BimodulePtr source, BimodulePtr target, IntegerMatrix matrix)
    : BimoduleMap(std::move(source), std::move(target), std::move(matrix), true) {
  if (!is_bimodule_map(*source_, *target_, matrix_))
    throw Error(ErrorKind::NotHomomorphism, "matrix is not a bimodule map");
}

BimoduleMap BimoduleMap::identity(const BimodulePtr& m) {
  return BimoduleMap(m, m, IntegerMatrix::identity(m->rank()), true);
}

BimoduleMap BimoduleMap::zero(const BimodulePtr& source, const BimodulePtr& target) {
  return BimoduleMap(source, target, IntegerMatrix(target->rank(), source->rank()));
}

BimoduleMap BimoduleMap::trusted(BimodulePtr source, BimodulePtr target, IntegerMatrix matrix) {
  return BimoduleMap(std::move(source), std::move(target), std::move(matrix), true);
}

Vector BimoduleMap::apply(const Vector& m) const { return target_->carrier().reduce(matrix_ * m); }

bool BimoduleMap::is_injective() const {
  return image_order(matrix_, target_->carrier()) == source_->carrier().order();
}

bool BimoduleMap::is_surjective() const {
  return image_order(matrix_, target_->carrier()) == target_->carrier().order();
}

bool BimoduleMap::is_bijective() const {
  return source_->carrier().order() == target_->carrier().order() && is_surjective();
}

std::optional<Vector> BimoduleMap::preimage(const Vector& y) const {
  if (source_->rank() == 0) {
    if (target_->carrier().equal(y, target_->carrier().zero())) return Vector{};
    return std::nullopt;
  }
  if (target_->rank() == 0) return source_->carrier().zero();
  const auto sol = exact::solve_congruences(matrix_, target_->carrier().invariant_factors(), y);
  if (!sol) return std::nullopt;
  return source_->carrier().reduce(sol->particular);
}

BimoduleMap BimoduleMap::inverse() const {
  if (!is_bijective()) throw Error(ErrorKind::InvalidArgument, "map is not invertible");
  IntegerMatrix inv(source_->rank(), target_->rank());
  for (std::size_t j = 0; j < target_->rank(); ++j) {
    Vector e(target_->rank());
    e[j] = 1;
    inv.set_column(j, *preimage(e));
  }
  return BimoduleMap(target_, source_, std::move(inv), true);
}

bool BimoduleMap::equals(const BimoduleMap& other) const {
  return matrix_.cols() == other.matrix_.cols() && target_->carrier().same_map(matrix_, other.matrix_);
}

BimoduleMap compose(const BimoduleMap& f, const BimoduleMap& g) {
  if (f.source()->carrier() != g.target()->carrier() || f.source()->rank() != g.target()->rank())
    throw Error(ErrorKind::NotComposable, "map composition: carriers differ");
  return BimoduleMap::trusted(g.source(), f.target(), f.matrix() * g.matrix());
}

}  // namespace moritalab::rings
