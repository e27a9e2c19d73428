#include "moritalab/exact/abelian_group.hpp"

#include <sstream>
#include <utility>

#include "moritalab/error.hpp"

namespace moritalab::exact {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Integer> invariant_factors)
    : factors_(std::move(invariant_factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < Integer(2)) {
      throw Error(ErrorKind::InvalidArgument, "invariant factor must be >= 2, got " + factors_[i].str());
    }
    if (i + 1 < factors_.size() && !divides(factors_[i], factors_[i + 1])) {
      throw Error(ErrorKind::InvalidArgument, "invariant factors must form a divisibility chain");
    }
  }
}

FiniteAbelianGroup FiniteAbelianGroup::cyclic(const Integer& n) {
  if (n < Integer(1)) throw Error(ErrorKind::InvalidArgument, "cyclic group order must be positive");
  if (n == Integer(1)) return FiniteAbelianGroup();
  return FiniteAbelianGroup({n});
}

Integer FiniteAbelianGroup::order() const {
  Integer o = 1;
  for (const auto& d : factors_) o *= d;
  return o;
}

Integer FiniteAbelianGroup::exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }

Vector FiniteAbelianGroup::reduce(Vector v) const {
  if (v.size() != factors_.size()) throw Error(ErrorKind::InvalidArgument, "element length mismatch");
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod(v[i], factors_[i]);
  return v;
}

bool FiniteAbelianGroup::is_reduced(const Vector& v) const {
  if (v.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i].sign() < 0 || v[i] >= factors_[i]) return false;
  return true;
}

bool FiniteAbelianGroup::equal(const Vector& a, const Vector& b) const {
  if (a.size() != factors_.size() || b.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!divides(factors_[i], a[i] - b[i])) return false;
  return true;
}

Vector FiniteAbelianGroup::add(const Vector& a, const Vector& b) const {
  Vector s(factors_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = mod(a[i] + b[i], factors_[i]);
  return s;
}

Vector FiniteAbelianGroup::scale(const Integer& k, const Vector& a) const {
  Vector s(factors_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = mod(k * a[i], factors_[i]);
  return s;
}

Integer FiniteAbelianGroup::element_order(const Vector& a) const {
  Integer o = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const Integer g = gcd(a[i], factors_[i]);
    o = lcm(o, exact_div(factors_[i], g));
  }
  return o;
}

bool FiniteAbelianGroup::is_homomorphism(const IntegerMatrix& m, const FiniteAbelianGroup& source,
                                         const FiniteAbelianGroup& target) {
  if (m.rows() != target.rank() || m.cols() != source.rank()) return false;
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!divides(target.factors_[i], source.factors_[j] * m(i, j))) return false;
  return true;
}

bool FiniteAbelianGroup::same_map(const IntegerMatrix& a, const IntegerMatrix& b) const {
  if (a.rows() != factors_.size() || b.rows() != factors_.size() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!divides(factors_[i], a(i, j) - b(i, j))) return false;
  return true;
}

IntegerMatrix FiniteAbelianGroup::reduce_map(IntegerMatrix m) const {
  if (m.rows() != factors_.size()) throw Error(ErrorKind::InvalidArgument, "map row count mismatch");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod(m(i, j), factors_[i]);
  return m;
}

void FiniteAbelianGroup::for_each_element(const std::function<bool(const Vector&)>& visit) const {
  Vector v(factors_.size());
  while (true) {
    if (!visit(v)) return;
    std::size_t i = v.size();
    while (i > 0) {
      --i;
      v[i] += 1;
      if (v[i] < factors_[i]) break;
      v[i] = 0;
      if (i == 0) return;
    }
    if (v.empty()) return;
  }
}

std::string FiniteAbelianGroup::str() const {
  if (factors_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? " + " : "") << "Z/" << factors_[i];
  return os.str();
}

}  // namespace moritalab::exact
