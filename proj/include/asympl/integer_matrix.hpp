#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "asympl/rational.hpp"

namespace asympl {

/// Dense matrix of arbitrary-precision integers, row-major.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> data);
  /// Row-major literal; every row must have the same length.
  static IntegerMatrix from_rows(const std::vector<std::vector<long>>& rows);
  static IntegerMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols);
  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Integer> row(std::size_t r) const;
  bool is_zero() const;
  bool is_identity() const;
  IntegerMatrix transpose() const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  /// row_i += k * row_j
  void add_row_multiple(std::size_t i, std::size_t j, const Integer& k);
  void add_col_multiple(std::size_t i, std::size_t j, const Integer& k);
  void negate_row(std::size_t i);
  void negate_col(std::size_t i);

  /// Exact determinant (fraction-free Bareiss elimination).
  Integer determinant() const;
  bool is_unimodular() const;
  /// Inverse of a unimodular matrix; throws ValidationError otherwise.
  IntegerMatrix inverse_unimodular() const;

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend std::vector<Integer> operator*(const IntegerMatrix& a, const std::vector<Integer>& v);
  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

}  // namespace asympl
