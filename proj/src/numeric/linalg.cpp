#include "moritalab/numeric/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "moritalab/error.hpp"

namespace moritalab::numeric {

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) throw Error(ErrorKind::InvalidArgument, std::string(what) + ": non-finite entry");
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  const ComplexMatrix g = m.rows() <= m.cols() ? ComplexMatrix(m * m.adjoint()) : ComplexMatrix(m.adjoint() * m);
  return std::sqrt(std::max(0.0, hermitian_eigen(g).eigenvalues.maxCoeff()));
}

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return (m + m.adjoint()) / 2.0; }

ComplexMatrix HermitianSpectrum::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

ComplexMatrix HermitianSpectrum::apply(const std::function<double(double)>& f) const {
  RealVector fx(eigenvalues.size());
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) fx[i] = f(eigenvalues[i]);
  return eigenvectors * fx.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

double HermitianSpectrum::max_abs() const {
  return eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
}

HermitianSpectrum hermitian_eigen(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw Error(ErrorKind::InvalidArgument, "hermitian_eigen: matrix is not square");
  require_finite(h, "hermitian_eigen");
  if (h.rows() == 0) return HermitianSpectrum{RealVector(0), ComplexMatrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::InvalidArgument, "hermitian_eigen did not converge");
  return HermitianSpectrum{solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
  return hermitian_eigen(h).apply([](double x) { return std::sqrt(std::max(0.0, x)); });
}

ComplexMatrix pd_inverse_sqrt(const ComplexMatrix& h) {
  const HermitianSpectrum sp = hermitian_eigen(h);
  if (sp.eigenvalues.size() > 0 && sp.eigenvalues.minCoeff() <= 0.0)
    throw Error(ErrorKind::Singular, "inverse square root of a singular matrix");
  return sp.apply([](double x) { return 1.0 / std::sqrt(x); });
}

PolarDecomposition polar_antilinear(const AntilinearOp& s, double tol) {
  if (s.rows() != s.cols()) throw Error(ErrorKind::InvalidArgument, "polar_antilinear: operator is not square");
  require_finite(s.matrix(), "polar_antilinear");
  // Delta = S^* S = A^T conj(A) = conj(A^H A).
  const ComplexMatrix delta = hermitian_part((s.matrix().adjoint() * s.matrix()).conjugate());
  const HermitianSpectrum sp = hermitian_eigen(delta);
  const double smax = std::sqrt(std::max(0.0, sp.eigenvalues.size() ? sp.eigenvalues.maxCoeff() : 0.0));
  const double smin = std::sqrt(std::max(0.0, sp.eigenvalues.size() ? sp.eigenvalues.minCoeff() : 0.0));
  if (sp.eigenvalues.size() > 0 && smin < tol * std::max(1.0, smax))
    throw Error(ErrorKind::Singular, "antilinear operator is singular");
  const ComplexMatrix root = sp.apply([](double x) { return std::sqrt(x); });
  const ComplexMatrix inv_root = sp.apply([](double x) { return 1.0 / std::sqrt(x); });
  return PolarDecomposition{s.after_linear(inv_root), delta, root};
}

namespace {

// Orthonormalise `candidate` against `basis` (Frobenius inner product);
// appends it when the remainder is above tol * max(||candidate||, reference).
// Products pass the norm of their factors as reference, so a product that
// vanishes up to rounding is not mistaken for a new direction.
bool extend_basis(std::vector<ComplexMatrix>& basis, ComplexMatrix candidate, double tol, double reference = 0.0) {
  const double scale = std::max(candidate.norm(), reference);
  if (scale == 0.0) return false;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) candidate -= (b.adjoint() * candidate).trace() * b;
  const double rest = candidate.norm();
  if (rest <= tol * scale) return false;
  basis.push_back(candidate / rest);
  return true;
}

}  // namespace

std::vector<ComplexMatrix> commutant(const std::vector<ComplexMatrix>& generators, std::size_t dim, double tol) {
  const Eigen::Index d = static_cast<Eigen::Index>(dim);
  const Eigen::Index n = d * d;
  // vec(XA - AX) = (A^T (x) I - I (x) A) vec(X), column-major vec.
  ComplexMatrix gram = ComplexMatrix::Zero(n, n);
  double scale = 0.0;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (const auto& a : generators) {
    if (a.rows() != d || a.cols() != d) throw Error(ErrorKind::InvalidArgument, "commutant: dimension mismatch");
    require_finite(a, "commutant");
    ComplexMatrix k(n, n);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) k.block(i * d, j * d, d, d) = a(j, i) * id - (i == j ? a : ComplexMatrix::Zero(d, d));
    gram += k.adjoint() * k;
    scale += a.squaredNorm();
  }
  const HermitianSpectrum sp = hermitian_eigen(gram);
  // Scalar generators give a Gram matrix that is zero up to rounding.
  const double threshold = tol * std::max(sp.max_abs(), scale);
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index c = 0; c < n; ++c) {
    if (sp.eigenvalues[c] > threshold) break;
    ComplexMatrix x(d, d);
    for (Eigen::Index j = 0; j < d; ++j) x.col(j) = sp.eigenvectors.col(c).segment(j * d, d);
    basis.push_back(x);
  }
  return basis;
}

std::vector<ComplexMatrix> generated_algebra(const std::vector<ComplexMatrix>& generators, std::size_t dim,
                                             double tol) {
  const Eigen::Index d = static_cast<Eigen::Index>(dim);
  std::vector<ComplexMatrix> basis;
  extend_basis(basis, ComplexMatrix::Identity(d, d), tol);
  for (const auto& g : generators) extend_basis(basis, g, tol);
  // Close under multiplication by generators.
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (const auto& g : generators) {
      const double reference = g.norm();
      extend_basis(basis, basis[i] * g, tol, reference);
      extend_basis(basis, g * basis[i], tol, reference);
    }
  return basis;
}

double span_residual(const ComplexMatrix& m, const std::vector<ComplexMatrix>& orthonormal_basis) {
  ComplexMatrix r = m;
  for (const auto& b : orthonormal_basis) r -= (b.adjoint() * m).trace() * b;
  return r.norm();
}

GramQuotient gram_quotient(const ComplexMatrix& g, double tol) {
  const HermitianSpectrum sp = hermitian_eigen(g);
  const Eigen::Index d = sp.eigenvalues.size();
  const double top = sp.max_abs();
  if (d > 0 && sp.eigenvalues.minCoeff() < -tol * top)
    throw Error(ErrorKind::NotPSD, "Gram matrix has a negative eigenvalue");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = d; i-- > 0;)
    if (top > 0.0 && sp.eigenvalues[i] > tol * top) keep.push_back(i);
  const Eigen::Index r = static_cast<Eigen::Index>(keep.size());
  GramQuotient q{ComplexMatrix(r, d), ComplexMatrix(d, r), r};
  for (Eigen::Index k = 0; k < r; ++k) {
    const double lambda = sp.eigenvalues[keep[k]];
    const ComplexVector u = sp.eigenvectors.col(keep[k]);
    q.projection.row(k) = std::sqrt(lambda) * u.adjoint();
    q.lift.col(k) = u / std::sqrt(lambda);
  }
  return q;
}

double unitarity_residual(const ComplexMatrix& u) {
  const ComplexMatrix a = u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols());
  const ComplexMatrix b = u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.rows());
  return std::max(operator_norm(a), operator_norm(b));
}

}  // namespace moritalab::numeric
