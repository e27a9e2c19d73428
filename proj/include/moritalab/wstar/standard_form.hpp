#pragma once

#include <memory>

#include "moritalab/wstar/algebra.hpp"

namespace moritalab::wstar {

/// L^2(M, phi) in orthonormal coordinates.
///
/// The carrier is C^D (D = dim M) and Lambda(x) = F c(x), where c(x) are the
/// matrix-unit coefficients of x and F^H F is the Gram matrix
/// phi(e_a^* e_b). S is the matrix of Lambda(x) -> Lambda(x^*) and (J, Delta)
/// is its polar decomposition.
class StandardForm {
 public:
  explicit StandardForm(State state, double tol = numeric::kDefaultTolerance);

  const State& state() const noexcept { return state_; }
  const MultiMatrixAlgebra& algebra() const noexcept { return *state_.algebra(); }
  const AlgebraPtr& algebra_ptr() const noexcept { return state_.algebra(); }
  Eigen::Index dimension() const noexcept { return algebra().dimension(); }

  ComplexVector lambda(const ComplexMatrix& x) const;
  /// Lambda^{-1}: the algebra element with Lambda(x) = v.
  ComplexMatrix element(const ComplexVector& v) const;
  /// Matrix-unit coefficients of Lambda^{-1}(v).
  ComplexVector coefficients_of(const ComplexVector& v) const { return inverse_ * v; }
  /// Lambda of the a-th matrix unit.
  ComplexVector lambda_unit(Eigen::Index a) const { return coords_.col(a); }

  const numeric::AntilinearOp& s() const noexcept { return s_; }
  const numeric::AntilinearOp& j() const noexcept { return j_; }
  const ComplexMatrix& delta() const noexcept { return delta_; }
  /// Delta^t for real t.
  ComplexMatrix delta_power(double t) const;

  ComplexMatrix pi_l(const ComplexMatrix& x) const;
  /// J x^* J.
  ComplexMatrix pi_r(const ComplexMatrix& y) const;
  const ComplexMatrix& pi_l_unit(Eigen::Index a) const { return left_units_[static_cast<std::size_t>(a)]; }
  const ComplexMatrix& pi_r_unit(Eigen::Index a) const { return right_units_[static_cast<std::size_t>(a)]; }

  /// The element y with Lambda(y) = Delta^t Lambda(x); for t = +-1/2 this is
  /// Delta^t x Delta^{-t} read back in M.
  ComplexMatrix modular_conjugate(const ComplexMatrix& x, double t) const;

  /// Largest of ||S - J Delta^{1/2}||, ||J^2 - I||, ||J - J^*||.
  double modular_residual() const;
  /// Largest ||Delta^{1/2} z Delta^{-1/2} - z|| over block identities z.
  double center_residual() const;
  /// Mutual span residual between the commutant of pi_l(M) and J pi_l(M) J.
  double commutant_residual(double tol = numeric::kDefaultTolerance) const;

 private:
  State state_;
  ComplexMatrix coords_;  // F: coefficients -> L^2
  ComplexMatrix inverse_;  // F^{-1}
  numeric::AntilinearOp s_, j_;
  ComplexMatrix delta_;
  numeric::HermitianSpectrum delta_spectrum_;
  std::vector<ComplexMatrix> left_units_, right_units_;
};

using StandardFormPtr = std::shared_ptr<const StandardForm>;

StandardFormPtr gns_standard_form(const State& state, double tol = numeric::kDefaultTolerance);

}  // namespace moritalab::wstar
