#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "moritalab/exact/integer.hpp"

namespace moritalab::exact {

using Vector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix diagonal(const Vector& diag);
  static IntegerMatrix from_columns(std::size_t rows, const std::vector<Vector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  void set_column(std::size_t c, const Vector& v);

  IntegerMatrix transpose() const;
  /// Columns [first, first + count).
  IntegerMatrix column_block(std::size_t first, std::size_t count) const;
  /// Rows [first, first + count).
  IntegerMatrix row_block(std::size_t first, std::size_t count) const;

  // Elementary operations; used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  bool is_zero() const;
  bool is_diagonal() const;

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;
  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b);
  friend IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b);

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

Vector operator*(const IntegerMatrix& a, const Vector& v);

/// [a | b]; row counts must agree.
IntegerMatrix hstack(const IntegerMatrix& a, const IntegerMatrix& b);
/// Kronecker product a (x) b.
IntegerMatrix kronecker(const IntegerMatrix& a, const IntegerMatrix& b);

/// Exact determinant (fraction-free Bareiss elimination).
Integer determinant(const IntegerMatrix& a);

}  // namespace moritalab::exact
