#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace moritalab::numeric {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance used when callers do not pass one.
inline constexpr double kDefaultTolerance = 1e-8;

/// Throws InvalidArgument on NaN or infinite entries.
void require_finite(const ComplexMatrix& m, const char* what);

double operator_norm(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);
/// (m + m^H) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Eigenvalues ascending with orthonormal eigenvectors as columns.
struct HermitianSpectrum {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
  /// U f(D) U^H.
  ComplexMatrix apply(const std::function<double(double)>& f) const;
  double max_abs() const;
};

/// Decomposes the Hermitian part of h.
HermitianSpectrum hermitian_eigen(const ComplexMatrix& h);

/// Square root and inverse square root of a positive definite matrix.
ComplexMatrix psd_sqrt(const ComplexMatrix& h);
ComplexMatrix pd_inverse_sqrt(const ComplexMatrix& h);

/// v -> A conj(v) relative to the standard basis.
class AntilinearOp {
 public:
  AntilinearOp() = default;
  explicit AntilinearOp(ComplexMatrix a) : a_(std::move(a)) {}

  const ComplexMatrix& matrix() const noexcept { return a_; }
  Eigen::Index rows() const noexcept { return a_.rows(); }
  Eigen::Index cols() const noexcept { return a_.cols(); }

  ComplexVector apply(const ComplexVector& v) const { return a_ * v.conjugate(); }
  /// The adjoint: <S v, w> = conj(<v, S^* w>), matrix A^T.
  AntilinearOp adjoint() const { return AntilinearOp(a_.transpose()); }
  /// Matrix of the linear map this o other.
  ComplexMatrix then_antilinear(const AntilinearOp& other) const { return a_ * other.a_.conjugate(); }
  /// this o L is antilinear with matrix A conj(L).
  AntilinearOp after_linear(const ComplexMatrix& l) const { return AntilinearOp(a_ * l.conjugate()); }
  /// L o this is antilinear with matrix L A.
  AntilinearOp before_linear(const ComplexMatrix& l) const { return AntilinearOp(l * a_); }

 private:
  ComplexMatrix a_;
};

/// S = J Delta^{1/2} with Delta = S^* S positive definite and J antiunitary.
struct PolarDecomposition {
  AntilinearOp j;
  ComplexMatrix delta;
  ComplexMatrix delta_sqrt;
};

/// Throws Singular when the smallest singular value of S is below
/// tol * max(1, ||S||).
PolarDecomposition polar_antilinear(const AntilinearOp& s, double tol = kDefaultTolerance);

/// Orthonormal (Frobenius) basis of {X : X A = A X for every generator}.
/// A direction counts as null when its eigenvalue in the stacked
/// Sylvester Gram matrix is at most tol * max(largest eigenvalue,
/// sum of ||A||_F^2).
std::vector<ComplexMatrix> commutant(const std::vector<ComplexMatrix>& generators, std::size_t dim,
                                     double tol = kDefaultTolerance);

/// Orthonormal basis of the unital algebra generated by `generators`.
std::vector<ComplexMatrix> generated_algebra(const std::vector<ComplexMatrix>& generators, std::size_t dim,
                                             double tol = kDefaultTolerance);

/// Frobenius distance from m to the span of an orthonormal basis.
double span_residual(const ComplexMatrix& m, const std::vector<ComplexMatrix>& orthonormal_basis);

/// Quotient of C^d by the null space of a PSD Gram matrix G.
///
/// projection (r x d) maps v to its class so that <Pv, Pw> = v^H G w;
/// lift (d x r) is a right inverse of projection.
struct GramQuotient {
  ComplexMatrix projection;
  ComplexMatrix lift;
  Eigen::Index rank = 0;
};

/// rank = #{eigenvalues > tol * lambda_max}. Throws NotPSD when an
/// eigenvalue is below -tol * ||G||.
GramQuotient gram_quotient(const ComplexMatrix& g, double tol = kDefaultTolerance);

/// ||U^H U - I|| and ||U U^H - I||, the larger of the two.
double unitarity_residual(const ComplexMatrix& u);

}  // namespace moritalab::numeric
