#include "moritalab/rings/ring.hpp"

#include <sstream>
#include <utility>

#include "moritalab/error.hpp"
#include "moritalab/exact/lattice.hpp"

namespace moritalab::rings {

namespace {

constexpr std::int64_t kMaxFactor = std::int64_t{1} << 31;

std::vector<std::int64_t> to64(const Vector& v) {
  std::vector<std::int64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].to_int64();
  return out;
}

Vector from64(const std::int64_t* v, std::size_t n) {
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = Integer(static_cast<long long>(v[i]));
  return out;
}

}  // namespace

FiniteRing::FiniteRing(FiniteAbelianGroup additive, std::vector<std::vector<Vector>> mult, Vector unit,
                       std::string label)
    : additive_(std::move(additive)), mult_(std::move(mult)), unit_(std::move(unit)), label_(std::move(label)) {
  const std::size_t k = additive_.rank();
  if (k == 0) throw Error(ErrorKind::UnitDegenerate, "the zero ring is not allowed");
  for (const auto& d : additive_.invariant_factors()) {
    if (!(d < Integer(static_cast<long long>(kMaxFactor))))
      throw Error(ErrorKind::InvalidArgument, "ring invariant factor too large: " + d.str());
  }
  if (mult_.size() != k) throw Error(ErrorKind::InvalidArgument, "structure constants: wrong row count");
  if (unit_.size() != k) throw Error(ErrorKind::InvalidArgument, "unit has wrong length");
  unit_ = additive_.reduce(unit_);
  mods_ = to64(additive_.invariant_factors());
  table_.assign(k * k * k, 0);
  const auto& d = additive_.invariant_factors();
  for (std::size_t i = 0; i < k; ++i) {
    if (mult_[i].size() != k) throw Error(ErrorKind::InvalidArgument, "structure constants: wrong column count");
    for (std::size_t j = 0; j < k; ++j) {
      if (mult_[i][j].size() != k) throw Error(ErrorKind::InvalidArgument, "structure constant has wrong length");
      mult_[i][j] = additive_.reduce(mult_[i][j]);
      if (!additive_.equal(additive_.scale(d[i], mult_[i][j]), additive_.zero()) ||
          !additive_.equal(additive_.scale(d[j], mult_[i][j]), additive_.zero())) {
        throw Error(ErrorKind::InvalidArgument, "multiplication is not biadditive on generators");
      }
      for (std::size_t t = 0; t < k; ++t) table_[(i * k + j) * k + t] = mult_[i][j][t].to_int64();
    }
  }
  if (additive_.element_order(unit_) < Integer(2)) throw Error(ErrorKind::UnitDegenerate, "unit must be nonzero");

  std::vector<std::int64_t> lhs(k), rhs(k);
  const std::vector<std::int64_t> u = to64(unit_);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::int64_t> ei(k, 0);
    ei[i] = 1;
    multiply64(u.data(), ei.data(), lhs.data());
    multiply64(ei.data(), u.data(), rhs.data());
    if (lhs != ei || rhs != ei) throw Error(ErrorKind::InvalidArgument, "unit law fails on a generator");
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const std::int64_t* ij = &table_[(i * k + j) * k];
      for (std::size_t t = 0; t < k; ++t) {
        std::vector<std::int64_t> et(k, 0), ei(k, 0);
        et[t] = 1;
        ei[i] = 1;
        multiply64(ij, et.data(), lhs.data());
        const std::int64_t* jt = &table_[(j * k + t) * k];
        multiply64(ei.data(), jt, rhs.data());
        if (lhs != rhs) throw Error(ErrorKind::InvalidArgument, "multiplication is not associative");
      }
    }
  }
}

std::shared_ptr<const FiniteRing> FiniteRing::cyclic(std::int64_t n) {
  if (n < 2) throw Error(ErrorKind::UnitDegenerate, "Z/n needs n >= 2");
  FiniteAbelianGroup g({Integer(static_cast<long long>(n))});
  return std::make_shared<const FiniteRing>(g, std::vector<std::vector<Vector>>{{Vector{Integer(1)}}},
                                            Vector{Integer(1)}, "Z/" + std::to_string(n));
}

bool FiniteRing::is_commutative() const {
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = i + 1; j < rank(); ++j)
      if (mult_[i][j] != mult_[j][i]) return false;
  return true;
}

Vector FiniteRing::generator(std::size_t i) const {
  Vector e(rank());
  e[i] = 1;
  return e;
}

void FiniteRing::multiply64(const std::int64_t* a, const std::int64_t* b, std::int64_t* out) const {
  const std::size_t k = rank();
  for (std::size_t t = 0; t < k; ++t) out[t] = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (b[j] == 0) continue;
      const std::int64_t* row = &table_[(i * k + j) * k];
      for (std::size_t t = 0; t < k; ++t) {
        if (row[t] == 0) continue;
        const std::int64_t f = mods_[t];
        const std::int64_t c = (a[i] % f) * (b[j] % f) % f;
        out[t] = (out[t] + c * row[t]) % f;
      }
    }
  }
  for (std::size_t t = 0; t < k; ++t)
    if (out[t] < 0) out[t] += mods_[t];
}

Vector FiniteRing::multiply(const Vector& a, const Vector& b) const {
  const std::vector<std::int64_t> x = to64(additive_.reduce(a));
  const std::vector<std::int64_t> y = to64(additive_.reduce(b));
  std::vector<std::int64_t> z(rank());
  multiply64(x.data(), y.data(), z.data());
  return from64(z.data(), z.size());
}

IntegerMatrix FiniteRing::left_multiplication(const Vector& a) const {
  IntegerMatrix m(rank(), rank());
  for (std::size_t j = 0; j < rank(); ++j) m.set_column(j, multiply(a, generator(j)));
  return m;
}

IntegerMatrix FiniteRing::right_multiplication(const Vector& a) const {
  IntegerMatrix m(rank(), rank());
  for (std::size_t j = 0; j < rank(); ++j) m.set_column(j, multiply(generator(j), a));
  return m;
}

std::string FiniteRing::str() const {
  if (!label_.empty()) return label_;
  return "Ring(" + additive_.str() + ")";
}

bool same_ring(const Ring& a, const Ring& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

PresentedRing present_ring(const Vector& moduli, const std::vector<std::vector<Vector>>& ambient_mult,
                           const Vector& ambient_unit, std::string label) {
  const std::size_t n = moduli.size();
  const exact::Cokernel cok = exact::cokernel(IntegerMatrix(n, 0), moduli);
  const std::size_t k = cok.group.rank();
  auto ambient_product = [&](const Vector& x, const Vector& y) {
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j].is_zero()) continue;
        const Integer c = x[i] * y[j];
        const Vector& e = ambient_mult[i][j];
        for (std::size_t t = 0; t < n; ++t)
          if (!e[t].is_zero()) out[t] += c * e[t];
      }
    }
    for (std::size_t t = 0; t < n; ++t) out[t] = exact::mod(out[t], moduli[t]);
    return out;
  };
  std::vector<Vector> lifts(k);
  for (std::size_t g = 0; g < k; ++g) lifts[g] = cok.lift.column(g);
  std::vector<std::vector<Vector>> mult(k, std::vector<Vector>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) mult[a][b] = cok.project(ambient_product(lifts[a], lifts[b]));
  Ring ring =
      std::make_shared<const FiniteRing>(cok.group, std::move(mult), cok.project(ambient_unit), std::move(label));
  return PresentedRing{std::move(ring), cok.lift, cok.projection};
}

Ring ring_from_ambient(const Vector& moduli, const std::vector<std::vector<Vector>>& ambient_mult,
                       const Vector& ambient_unit, std::string label) {
  return present_ring(moduli, ambient_mult, ambient_unit, std::move(label)).ring;
}

Ring matrix_ring(const Ring& r, std::size_t n) { return matrix_ring_presented(r, n).ring; }

PresentedRing matrix_ring_presented(const Ring& r, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "matrix ring needs n >= 1");
  if (n == 1) return PresentedRing{r, IntegerMatrix::identity(r->rank()), IntegerMatrix::identity(r->rank())};
  const std::size_t k = r->rank();
  const std::size_t dim = n * n * k;
  auto index = [&](std::size_t a, std::size_t b, std::size_t i) { return (a * n + b) * k + i; };
  Vector moduli(dim);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t i = 0; i < k; ++i) moduli[index(a, b, i)] = r->additive().invariant_factors()[i];
  std::vector<std::vector<Vector>> mult(dim, std::vector<Vector>(dim, Vector(dim)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t d = 0; d < n; ++d)
          for (std::size_t j = 0; j < k; ++j) {
            Vector& out = mult[index(a, b, i)][index(b, d, j)];
            const Vector& p = r->product_of_generators(i, j);
            for (std::size_t t = 0; t < k; ++t) out[index(a, d, t)] = p[t];
          }
  Vector unit(dim);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < k; ++i) unit[index(a, a, i)] = r->unit()[i];
  return present_ring(moduli, mult, unit, "M_" + std::to_string(n) + "(" + r->str() + ")");
}

Ring opposite_ring(const Ring& r) {
  const std::size_t k = r->rank();
  std::vector<std::vector<Vector>> mult(k, std::vector<Vector>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) mult[i][j] = r->product_of_generators(j, i);
  std::string label = r->label();
  if (label.size() > 3 && label.compare(label.size() - 3, 3, "^op") == 0) {
    label.resize(label.size() - 3);
  } else if (!label.empty()) {
    label += "^op";
  }
  return std::make_shared<const FiniteRing>(r->additive(), std::move(mult), r->unit(), std::move(label));
}

Ring direct_product(const Ring& a, const Ring& b) {
  const std::size_t ka = a->rank(), kb = b->rank(), n = ka + kb;
  Vector moduli(n);
  for (std::size_t i = 0; i < ka; ++i) moduli[i] = a->additive().invariant_factors()[i];
  for (std::size_t i = 0; i < kb; ++i) moduli[ka + i] = b->additive().invariant_factors()[i];
  std::vector<std::vector<Vector>> mult(n, std::vector<Vector>(n, Vector(n)));
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t j = 0; j < ka; ++j)
      for (std::size_t t = 0; t < ka; ++t) mult[i][j][t] = a->product_of_generators(i, j)[t];
  for (std::size_t i = 0; i < kb; ++i)
    for (std::size_t j = 0; j < kb; ++j)
      for (std::size_t t = 0; t < kb; ++t) mult[ka + i][ka + j][ka + t] = b->product_of_generators(i, j)[t];
  Vector unit(n);
  for (std::size_t i = 0; i < ka; ++i) unit[i] = a->unit()[i];
  for (std::size_t i = 0; i < kb; ++i) unit[ka + i] = b->unit()[i];
  return ring_from_ambient(moduli, mult, unit, a->str() + " x " + b->str());
}

Ring polynomial_quotient(std::int64_t m, const std::vector<std::int64_t>& monic) {
  if (m < 2) throw Error(ErrorKind::UnitDegenerate, "coefficient ring Z/m needs m >= 2");
  if (monic.size() < 2 || monic.back() != 1)
    throw Error(ErrorKind::InvalidArgument, "polynomial must be monic of degree >= 1");
  const std::size_t deg = monic.size() - 1;
  // x^e reduced modulo f, as coefficient vectors
  std::vector<std::vector<std::int64_t>> powers;
  std::vector<std::int64_t> cur(deg, 0);
  cur[0] = 1;
  for (std::size_t e = 0; e + 1 < 2 * deg; ++e) {
    powers.push_back(cur);
    const std::int64_t top = cur[deg - 1];
    std::vector<std::int64_t> next(deg, 0);
    for (std::size_t t = deg - 1; t > 0; --t) next[t] = cur[t - 1];
    for (std::size_t t = 0; t < deg; ++t) next[t] = ((next[t] - top * monic[t]) % m + m) % m;
    cur = std::move(next);
  }
  Vector moduli(deg, Integer(static_cast<long long>(m)));
  std::vector<std::vector<Vector>> mult(deg, std::vector<Vector>(deg, Vector(deg)));
  for (std::size_t i = 0; i < deg; ++i)
    for (std::size_t j = 0; j < deg; ++j)
      for (std::size_t t = 0; t < deg; ++t) mult[i][j][t] = Integer(static_cast<long long>(powers[i + j][t]));
  Vector unit(deg);
  unit[0] = 1;

  std::ostringstream label;
  label << "(Z/" << m << ")[x]/(";
  bool first = true;
  for (std::size_t t = deg + 1; t-- > 0;) {
    const std::int64_t c = ((monic[t] % m) + m) % m;
    if (c == 0) continue;
    if (!first) label << " + ";
    first = false;
    if (t == 0 || c != 1) label << c;
    if (t >= 1) label << "x";
    if (t >= 2) label << "^" << t;
  }
  label << ")";
  return ring_from_ambient(moduli, mult, unit, label.str());
}

bool is_ring_homomorphism(const FiniteRing& source, const FiniteRing& target, const IntegerMatrix& map) {
  if (!FiniteAbelianGroup::is_homomorphism(map, source.additive(), target.additive())) return false;
  if (!target.additive().equal(map * source.unit(), target.unit())) return false;
  std::vector<Vector> images(source.rank());
  for (std::size_t i = 0; i < source.rank(); ++i) images[i] = map.column(i);
  for (std::size_t i = 0; i < source.rank(); ++i)
    for (std::size_t j = 0; j < source.rank(); ++j)
      if (!target.additive().equal(map * source.product_of_generators(i, j),
                                   target.multiply(images[i], images[j])))
        return false;
  return true;
}

}  // namespace moritalab::rings
