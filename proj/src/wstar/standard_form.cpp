#include "moritalab/wstar/standard_form.hpp"

#include <algorithm>
#include <cmath>

#include "moritalab/error.hpp"

namespace moritalab::wstar {

using numeric::operator_norm;

StandardForm::StandardForm(State state, double tol) : state_(std::move(state)) {
  const MultiMatrixAlgebra& m = algebra();
  const Eigen::Index d = m.dimension();
  std::vector<ComplexMatrix> units;
  units.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index a = 0; a < d; ++a) units.push_back(m.matrix_unit(a));

  ComplexMatrix gram(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) gram(a, b) = state_(units[a].adjoint() * units[b]);
  const numeric::GramQuotient q = numeric::gram_quotient(gram, tol);
  if (q.rank != d) throw Error(ErrorKind::NotFaithful, "GNS Gram matrix is singular");
  coords_ = q.projection;
  inverse_ = q.lift;

  // c(x^*) = P conj(c(x)) with P the transpose permutation on units.
  ComplexMatrix perm = ComplexMatrix::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) perm(m.adjoint_index(a), a) = 1.0;
  s_ = numeric::AntilinearOp(coords_ * perm * inverse_.conjugate());
  numeric::PolarDecomposition polar = numeric::polar_antilinear(s_, tol);
  j_ = polar.j;
  delta_ = polar.delta;
  delta_spectrum_ = numeric::hermitian_eigen(delta_);

  left_units_.reserve(units.size());
  right_units_.reserve(units.size());
  for (const auto& e : units) left_units_.push_back(pi_l(e));
  for (const auto& e : units) right_units_.push_back(pi_r(e));
}

ComplexVector StandardForm::lambda(const ComplexMatrix& x) const { return coords_ * algebra().coefficients(x); }

ComplexMatrix StandardForm::element(const ComplexVector& v) const {
  if (v.size() != dimension()) throw Error(ErrorKind::InvalidArgument, "vector is not in L^2");
  return algebra().element(inverse_ * v);
}

ComplexMatrix StandardForm::delta_power(double t) const {
  return delta_spectrum_.apply([t](double x) { return std::pow(x, t); });
}

ComplexMatrix StandardForm::pi_l(const ComplexMatrix& x) const {
  const MultiMatrixAlgebra& m = algebra();
  const Eigen::Index d = m.dimension();
  ComplexMatrix left(d, d);
  for (Eigen::Index b = 0; b < d; ++b) left.col(b) = m.coefficients(x * m.matrix_unit(b));
  return coords_ * left * inverse_;
}

ComplexMatrix StandardForm::pi_r(const ComplexMatrix& y) const {
  const ComplexMatrix& a = j_.matrix();
  return a * pi_l(y.adjoint()).conjugate() * a.conjugate();
}

ComplexMatrix StandardForm::modular_conjugate(const ComplexMatrix& x, double t) const {
  return element(delta_power(t) * lambda(x));
}

double StandardForm::modular_residual() const {
  const Eigen::Index d = dimension();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix js = j_.after_linear(delta_power(0.5)).matrix();
  double r = operator_norm(s_.matrix() - js);
  r = std::max(r, operator_norm(j_.then_antilinear(j_) - id));
  r = std::max(r, operator_norm(j_.matrix() - j_.adjoint().matrix()));
  return r;
}

double StandardForm::center_residual() const {
  const ComplexMatrix half = delta_power(0.5), minus = delta_power(-0.5);
  double r = 0;
  for (std::size_t k = 0; k < algebra().block_count(); ++k) {
    const ComplexMatrix z = pi_l(algebra().block_identity(k));
    r = std::max(r, operator_norm(half * z * minus - z));
  }
  return r;
}

double StandardForm::commutant_residual(double tol) const {
  const auto d = static_cast<std::size_t>(dimension());
  std::vector<ComplexMatrix> gens;
  for (Eigen::Index a : algebra().generating_units()) gens.push_back(left_units_[static_cast<std::size_t>(a)]);
  const auto comm = numeric::commutant(gens, d, tol);
  const auto right = numeric::generated_algebra(right_units_, d, tol);
  if (comm.size() != right.size()) return 1.0;
  double r = 0;
  for (const auto& c : comm) r = std::max(r, numeric::span_residual(c, right));
  for (const auto& c : right) r = std::max(r, numeric::span_residual(c, comm));
  return r;
}

StandardFormPtr gns_standard_form(const State& state, double tol) {
  return std::make_shared<const StandardForm>(state, tol);
}

}  // namespace moritalab::wstar
