#include "moritalab/wstar/algebra.hpp"

#include <cmath>

#include "moritalab/error.hpp"

namespace moritalab::wstar {

MultiMatrixAlgebra::MultiMatrixAlgebra(std::vector<int> block_sizes) : blocks_(std::move(block_sizes)) {
  if (blocks_.empty()) throw Error(ErrorKind::InvalidArgument, "algebra needs at least one block");
  for (int n : blocks_) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "block sizes must be >= 1");
    unit_offset_.push_back(dim_);
    matrix_offset_.push_back(size_);
    dim_ += static_cast<Eigen::Index>(n) * n;
    size_ += n;
  }
}

MultiMatrixAlgebra::Unit MultiMatrixAlgebra::unit(Eigen::Index a) const {
  std::size_t k = blocks_.size() - 1;
  while (unit_offset_[k] > a) --k;
  const Eigen::Index r = a - unit_offset_[k];
  return Unit{k, static_cast<int>(r / blocks_[k]), static_cast<int>(r % blocks_[k])};
}

Eigen::Index MultiMatrixAlgebra::unit_index(std::size_t block, int i, int j) const {
  return unit_offset_[block] + static_cast<Eigen::Index>(i) * blocks_[block] + j;
}

Eigen::Index MultiMatrixAlgebra::adjoint_index(Eigen::Index a) const {
  const Unit u = unit(a);
  return unit_index(u.block, u.j, u.i);
}

std::optional<Eigen::Index> MultiMatrixAlgebra::product_index(Eigen::Index a, Eigen::Index b) const {
  const Unit u = unit(a), v = unit(b);
  if (u.block != v.block || u.j != v.i) return std::nullopt;
  return unit_index(u.block, u.i, v.j);
}

ComplexMatrix MultiMatrixAlgebra::matrix_unit(Eigen::Index a) const {
  const Unit u = unit(a);
  ComplexMatrix e = ComplexMatrix::Zero(size_, size_);
  e(matrix_offset_[u.block] + u.i, matrix_offset_[u.block] + u.j) = 1.0;
  return e;
}

ComplexMatrix MultiMatrixAlgebra::block_identity(std::size_t k) const {
  ComplexMatrix e = ComplexMatrix::Zero(size_, size_);
  for (int i = 0; i < blocks_[k]; ++i) e(matrix_offset_[k] + i, matrix_offset_[k] + i) = 1.0;
  return e;
}

ComplexMatrix MultiMatrixAlgebra::element(const ComplexVector& c) const {
  if (c.size() != dim_) throw Error(ErrorKind::InvalidArgument, "coefficient vector has the wrong length");
  ComplexMatrix x = ComplexMatrix::Zero(size_, size_);
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    for (int i = 0; i < blocks_[k]; ++i)
      for (int j = 0; j < blocks_[k]; ++j)
        x(matrix_offset_[k] + i, matrix_offset_[k] + j) = c[unit_index(k, i, j)];
  return x;
}

ComplexVector MultiMatrixAlgebra::coefficients(const ComplexMatrix& x) const {
  if (x.rows() != size_ || x.cols() != size_) throw Error(ErrorKind::InvalidArgument, "element has the wrong size");
  ComplexVector c(dim_);
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    for (int i = 0; i < blocks_[k]; ++i)
      for (int j = 0; j < blocks_[k]; ++j) c[unit_index(k, i, j)] = x(matrix_offset_[k] + i, matrix_offset_[k] + j);
  return c;
}

double MultiMatrixAlgebra::off_block_norm(const ComplexMatrix& x) const {
  return (x - element(coefficients(x))).norm();
}

std::vector<Eigen::Index> MultiMatrixAlgebra::generating_units() const {
  std::vector<Eigen::Index> out;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    out.push_back(unit_index(k, 0, 0));
    for (int i = 0; i + 1 < blocks_[k]; ++i) {
      out.push_back(unit_index(k, i, i + 1));
      out.push_back(unit_index(k, i + 1, i));
    }
  }
  return out;
}

std::string MultiMatrixAlgebra::str() const {
  std::string s;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (k) s += " + ";
    s += blocks_[k] == 1 ? std::string("C") : "M_" + std::to_string(blocks_[k]);
  }
  return s;
}

State::State(AlgebraPtr algebra, ComplexMatrix density, double floor)
    : algebra_(std::move(algebra)), density_(std::move(density)) {
  const Eigen::Index n = algebra_->matrix_size();
  if (density_.rows() != n || density_.cols() != n) throw Error(ErrorKind::InvalidArgument, "density has the wrong size");
  numeric::require_finite(density_, "state density");
  if ((density_ - density_.adjoint()).norm() > 1e-12 * (1 + density_.norm()))
    throw Error(ErrorKind::InvalidArgument, "density is not Hermitian");
  if (algebra_->off_block_norm(density_) > 1e-12) throw Error(ErrorKind::InvalidArgument, "density is not block diagonal");
  if (std::abs(density_.trace() - Complex(1.0)) > 1e-12) throw Error(ErrorKind::InvalidArgument, "density has trace != 1");
  density_ = numeric::hermitian_part(density_);
  const double low = numeric::hermitian_eigen(density_).eigenvalues.minCoeff();
  if (low < floor)
    throw Error(ErrorKind::NotFaithful, "state is not faithful: smallest density eigenvalue " + std::to_string(low));
}

State State::normalized_trace(AlgebraPtr algebra) {
  const Eigen::Index n = algebra->matrix_size();
  ComplexMatrix rho = ComplexMatrix::Identity(n, n) / static_cast<double>(n);
  return State(std::move(algebra), std::move(rho), 0.0);
}

bool State::is_tracial(double tol) const {
  // phi is tracial iff rho is central: a scalar on each block.
  for (std::size_t k = 0; k < algebra_->block_count(); ++k) {
    const ComplexMatrix p = algebra_->block_identity(k);
    const ComplexMatrix b = p * density_ * p;
    const Complex mean = b.trace() / static_cast<double>(algebra_->block_sizes()[k]);
    if ((b - mean * p).norm() > tol) return false;
  }
  return true;
}

}  // namespace moritalab::wstar
