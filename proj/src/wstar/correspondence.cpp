#include "moritalab/wstar/correspondence.hpp"

#include <algorithm>
#include <random>

#include "moritalab/error.hpp"

namespace moritalab::wstar {

using numeric::operator_norm;

namespace {

ComplexMatrix combine(const std::vector<ComplexMatrix>& units, const ComplexVector& c, Eigen::Index dim) {
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (std::size_t a = 0; a < units.size(); ++a)
    if (c[static_cast<Eigen::Index>(a)] != Complex(0.0)) out += c[static_cast<Eigen::Index>(a)] * units[a];
  return out;
}

// Residual of the matrix-unit relations; `anti` reverses products.
double representation_residual(const MultiMatrixAlgebra& alg, const std::vector<ComplexMatrix>& pi, Eigen::Index dim,
                               bool anti) {
  const Eigen::Index d = alg.dimension();
  ComplexMatrix unit_sum = ComplexMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < alg.block_count(); ++k)
    for (int i = 0; i < alg.block_sizes()[k]; ++i) unit_sum += pi[static_cast<std::size_t>(alg.unit_index(k, i, i))];
  double r = operator_norm(unit_sum - ComplexMatrix::Identity(dim, dim));
  for (Eigen::Index a = 0; a < d; ++a) {
    const auto& pa = pi[static_cast<std::size_t>(a)];
    r = std::max(r, operator_norm(pi[static_cast<std::size_t>(alg.adjoint_index(a))] - pa.adjoint()));
    for (Eigen::Index b = 0; b < d; ++b) {
      const auto& pb = pi[static_cast<std::size_t>(b)];
      const auto prod = anti ? alg.product_index(b, a) : alg.product_index(a, b);
      const ComplexMatrix lhs = pa * pb;
      r = std::max(r, prod ? operator_norm(lhs - pi[static_cast<std::size_t>(*prod)]) : operator_norm(lhs));
    }
  }
  return r;
}

// One side of the conditional expectation onto intertwiners.
ComplexMatrix average(const ComplexMatrix& x, const MultiMatrixAlgebra& alg, const std::vector<ComplexMatrix>& from,
                      const std::vector<ComplexMatrix>& to) {
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (std::size_t k = 0; k < alg.block_count(); ++k) {
    const int n = alg.block_sizes()[k];
    ComplexMatrix block = ComplexMatrix::Zero(x.rows(), x.cols());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        block += to[static_cast<std::size_t>(alg.unit_index(k, i, j))] * x *
                 from[static_cast<std::size_t>(alg.unit_index(k, j, i))];
    out += block / static_cast<double>(n);
  }
  return out;
}

}  // namespace

Correspondence::Correspondence(StandardFormPtr left, StandardFormPtr right, Eigen::Index dim,
                               std::vector<ComplexMatrix> pi_l, std::vector<ComplexMatrix> pi_r, std::string name,
                               double tol)
    : left_(std::move(left)), right_(std::move(right)), dim_(dim), pi_l_(std::move(pi_l)), pi_r_(std::move(pi_r)),
      name_(std::move(name)) {
  if (!left_ || !right_) throw Error(ErrorKind::InvalidArgument, "correspondence needs both algebras");
  if (dim_ < 0) throw Error(ErrorKind::InvalidArgument, "negative dimension");
  if (static_cast<Eigen::Index>(pi_l_.size()) != left_->dimension() ||
      static_cast<Eigen::Index>(pi_r_.size()) != right_->dimension())
    throw Error(ErrorKind::InvalidArgument, "one operator per matrix unit is required");
  for (const auto* side : {&pi_l_, &pi_r_})
    for (const auto& m : *side) {
      if (m.rows() != dim_ || m.cols() != dim_) throw Error(ErrorKind::InvalidArgument, "action has the wrong size");
      numeric::require_finite(m, "correspondence action");
    }
  const double r = axiom_residual();
  if (r > tol) throw Error(ErrorKind::InvalidArgument, "not a correspondence: residual " + std::to_string(r));
}

ComplexMatrix Correspondence::pi_l(const ComplexMatrix& x) const {
  return combine(pi_l_, left_->algebra().coefficients(x), dim_);
}

ComplexMatrix Correspondence::pi_r(const ComplexMatrix& y) const {
  return combine(pi_r_, right_->algebra().coefficients(y), dim_);
}

double Correspondence::axiom_residual() const {
  double r = representation_residual(left_->algebra(), pi_l_, dim_, false);
  r = std::max(r, representation_residual(right_->algebra(), pi_r_, dim_, true));
  for (const auto& a : pi_l_)
    for (const auto& b : pi_r_) r = std::max(r, operator_norm(a * b - b * a));
  return r;
}

bool same_object(const StandardForm& a, const StandardForm& b) {
  if (&a == &b) return true;
  return a.algebra() == b.algebra() &&
         (a.state().density() - b.state().density()).cwiseAbs().maxCoeff() <= 1e-12;
}

double intertwining_residual(const Intertwiner& t) {
  const Correspondence& a = *t.source;
  const Correspondence& b = *t.target;
  if (t.matrix.rows() != b.dimension() || t.matrix.cols() != a.dimension()) return 1e300;
  double r = 0;
  for (std::size_t i = 0; i < a.left_units().size(); ++i)
    r = std::max(r, operator_norm(t.matrix * a.left_units()[i] - b.left_units()[i] * t.matrix));
  for (std::size_t i = 0; i < a.right_units().size(); ++i)
    r = std::max(r, operator_norm(t.matrix * a.right_units()[i] - b.right_units()[i] * t.matrix));
  return r;
}

Intertwiner identity_intertwiner(const CorrespondencePtr& h) {
  return Intertwiner{h, h, ComplexMatrix::Identity(h->dimension(), h->dimension())};
}

CorrespondencePtr identity_correspondence(const StandardFormPtr& m) {
  std::vector<ComplexMatrix> left, right;
  for (Eigen::Index a = 0; a < m->dimension(); ++a) {
    left.push_back(m->pi_l_unit(a));
    right.push_back(m->pi_r_unit(a));
  }
  return std::make_shared<const Correspondence>(m, m, m->dimension(), std::move(left), std::move(right),
                                                "L2(" + m->algebra().str() + ")");
}

CorrespondencePtr conjugate_correspondence(const CorrespondencePtr& h) {
  const MultiMatrixAlgebra& m = h->left()->algebra();
  const MultiMatrixAlgebra& n = h->right()->algebra();
  std::vector<ComplexMatrix> left, right;
  for (Eigen::Index u = 0; u < n.dimension(); ++u)
    left.push_back(h->right_units()[static_cast<std::size_t>(n.adjoint_index(u))].conjugate());
  for (Eigen::Index a = 0; a < m.dimension(); ++a)
    right.push_back(h->left_units()[static_cast<std::size_t>(m.adjoint_index(a))].conjugate());
  return std::make_shared<const Correspondence>(h->right(), h->left(), h->dimension(), std::move(left),
                                                std::move(right), "conj(" + h->name() + ")");
}

Intertwiner double_conjugate_identification(const CorrespondencePtr& h, const CorrespondencePtr& hbarbar) {
  return Intertwiner{hbarbar, h, ComplexMatrix::Identity(h->dimension(), h->dimension())};
}

CorrespondencePtr corr_from_homomorphism(const StandardFormPtr& m, const std::vector<ComplexMatrix>& rho,
                                         const StandardFormPtr& n, double tol) {
  const MultiMatrixAlgebra& src = m->algebra();
  const MultiMatrixAlgebra& tgt = n->algebra();
  if (static_cast<Eigen::Index>(rho.size()) != src.dimension())
    throw Error(ErrorKind::NotHomomorphism, "one image per matrix unit is required");
  for (const auto& x : rho) {
    if (x.rows() != tgt.matrix_size() || x.cols() != tgt.matrix_size())
      throw Error(ErrorKind::NotHomomorphism, "image has the wrong size");
    if (tgt.off_block_norm(x) > tol) throw Error(ErrorKind::NotHomomorphism, "image is not in the target algebra");
  }
  double r = 0;
  for (Eigen::Index a = 0; a < src.dimension(); ++a) {
    const auto& ra = rho[static_cast<std::size_t>(a)];
    r = std::max(r, operator_norm(rho[static_cast<std::size_t>(src.adjoint_index(a))] - ra.adjoint()));
    for (Eigen::Index b = 0; b < src.dimension(); ++b) {
      const ComplexMatrix lhs = ra * rho[static_cast<std::size_t>(b)];
      const auto prod = src.product_index(a, b);
      r = std::max(r, prod ? operator_norm(lhs - rho[static_cast<std::size_t>(*prod)]) : operator_norm(lhs));
    }
  }
  if (r > tol) throw Error(ErrorKind::NotHomomorphism, "matrix-unit relations fail: residual " + std::to_string(r));

  ComplexMatrix one = ComplexMatrix::Zero(tgt.matrix_size(), tgt.matrix_size());
  for (std::size_t k = 0; k < src.block_count(); ++k)
    for (int i = 0; i < src.block_sizes()[k]; ++i) one += rho[static_cast<std::size_t>(src.unit_index(k, i, i))];
  const auto spec = numeric::hermitian_eigen(n->pi_r(one));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
    if (spec.eigenvalues[i] > 0.5) keep.push_back(i);
  ComplexMatrix basis(n->dimension(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) basis.col(static_cast<Eigen::Index>(i)) = spec.eigenvectors.col(keep[i]);

  std::vector<ComplexMatrix> left, right;
  for (Eigen::Index u = 0; u < tgt.dimension(); ++u) left.push_back(basis.adjoint() * n->pi_l_unit(u) * basis);
  for (const auto& x : rho) right.push_back(basis.adjoint() * n->pi_r(x) * basis);
  return std::make_shared<const Correspondence>(n, m, basis.cols(), std::move(left), std::move(right),
                                                "L2(rho: " + src.str() + " -> " + tgt.str() + ")");
}

ComplexMatrix project_to_intertwiners(const ComplexMatrix& x, const Correspondence& a, const Correspondence& b) {
  const ComplexMatrix y = average(x, a.left()->algebra(), a.left_units(), b.left_units());
  return average(y, a.right()->algebra(), a.right_units(), b.right_units());
}

UnitaryIntertwinerResult find_unitary_intertwiner(const CorrespondencePtr& a, const CorrespondencePtr& b,
                                                  std::uint64_t seed, double tol) {
  UnitaryIntertwinerResult out;
  if (!same_object(*a->left(), *b->left()) || !same_object(*a->right(), *b->right())) {
    out.reason = "different algebras or states";
    return out;
  }
  if (a->dimension() != b->dimension()) {
    out.reason = "dimensions differ: " + std::to_string(a->dimension()) + " vs " + std::to_string(b->dimension());
    return out;
  }
  const Eigen::Index d = a->dimension();
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal;
  for (int attempt = 0; attempt < 3; ++attempt) {
    ComplexMatrix x(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) x(i, j) = Complex(normal(engine), normal(engine));
    x = project_to_intertwiners(x, *a, *b);
    const numeric::HermitianSpectrum g = numeric::hermitian_eigen(x.adjoint() * x);
    if (d > 0 && g.eigenvalues[0] <= 1e-12 * std::max(1.0, g.eigenvalues[d - 1])) continue;
    Intertwiner t{a, b, x * g.apply([](double v) { return 1.0 / std::sqrt(v); })};
    const double r = std::max(intertwining_residual(t), numeric::unitarity_residual(t.matrix));
    if (r <= tol) {
      out.unitary = std::move(t);
      return out;
    }
    out.reason = "polar part misses the tolerance: residual " + std::to_string(r);
    return out;
  }
  out.reason = "every projected intertwiner is singular";
  return out;
}

}  // namespace moritalab::wstar
