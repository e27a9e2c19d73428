#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "moritalab/numeric/linalg.hpp"

namespace moritalab::wstar {

using numeric::Complex;
using numeric::ComplexMatrix;
using numeric::ComplexVector;

/// (+)_k M_{n_k}(C), elements stored as block-diagonal N x N matrices with
/// N = sum n_k. The matrix units e^k_ij are numbered block by block,
/// row-major inside a block.
class MultiMatrixAlgebra {
 public:
  explicit MultiMatrixAlgebra(std::vector<int> block_sizes);

  const std::vector<int>& block_sizes() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  /// sum n_k^2.
  Eigen::Index dimension() const noexcept { return dim_; }
  /// sum n_k, the size of the defining representation.
  Eigen::Index matrix_size() const noexcept { return size_; }

  struct Unit {
    std::size_t block;
    int i, j;
  };
  Unit unit(Eigen::Index a) const;
  Eigen::Index unit_index(std::size_t block, int i, int j) const;
  /// Index of e_ji for a = e_ij.
  Eigen::Index adjoint_index(Eigen::Index a) const;
  /// e_a e_b as a unit index, or nullopt when the product is zero.
  std::optional<Eigen::Index> product_index(Eigen::Index a, Eigen::Index b) const;

  ComplexMatrix matrix_unit(Eigen::Index a) const;
  ComplexMatrix identity() const { return ComplexMatrix::Identity(size_, size_); }
  ComplexMatrix block_identity(std::size_t k) const;
  ComplexMatrix element(const ComplexVector& coefficients) const;
  ComplexVector coefficients(const ComplexMatrix& x) const;
  /// Frobenius norm of the off-block part.
  double off_block_norm(const ComplexMatrix& x) const;
  /// Indices of e^k_{i,i+1}, e^k_{i+1,i} and e^k_{11}: these generate the
  /// algebra as a unital algebra.
  std::vector<Eigen::Index> generating_units() const;

  std::string str() const;
  friend bool operator==(const MultiMatrixAlgebra& a, const MultiMatrixAlgebra& b) { return a.blocks_ == b.blocks_; }

 private:
  std::vector<int> blocks_;
  std::vector<Eigen::Index> unit_offset_, matrix_offset_;
  Eigen::Index dim_ = 0, size_ = 0;
};

using AlgebraPtr = std::shared_ptr<const MultiMatrixAlgebra>;

inline constexpr double kFaithfulnessFloor = 1e-3;

/// Faithful normal state phi(x) = Tr(rho x).
class State {
 public:
  /// rho must be Hermitian, block diagonal, of trace 1 (within 1e-12) and
  /// have smallest eigenvalue >= floor (NotFaithful otherwise).
  State(AlgebraPtr algebra, ComplexMatrix density, double floor = kFaithfulnessFloor);

  /// Tr(x) / N.
  static State normalized_trace(AlgebraPtr algebra);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  const ComplexMatrix& density() const noexcept { return density_; }
  Complex operator()(const ComplexMatrix& x) const { return (density_ * x).trace(); }
  bool is_tracial(double tol = 1e-12) const;

 private:
  AlgebraPtr algebra_;
  ComplexMatrix density_;
};

}  // namespace moritalab::wstar
