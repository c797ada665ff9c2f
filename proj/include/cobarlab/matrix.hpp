#pragma once

#include "cobarlab/field.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cobarlab {

struct Triplet {
  std::size_t row;
  std::size_t col;
  Scalar value;
};

struct MatrixEntry {
  std::size_t row;
  Scalar value;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact sparse matrix, stored column by column. Column c holds the
/// coordinates of the image of the c-th source basis vector. No zero entry
/// is ever stored and rows within a column are strictly increasing.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldSpec field, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldSpec field, std::size_t n);
  /// Duplicate positions are summed.
  static Matrix from_triplets(FieldSpec field, std::size_t rows, std::size_t cols,
                              std::vector<Triplet> triplets);
  static Matrix from_rows(FieldSpec field, std::size_t cols, const std::vector<Vector>& rows);
  static Matrix from_columns(FieldSpec field, std::size_t rows, const std::vector<Vector>& cols);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  std::span<const MatrixEntry> column(std::size_t c) const { return columns_.at(c); }
  Scalar at(std::size_t r, std::size_t c) const;
  Vector column_vector(std::size_t c) const;

  Vector apply(const Vector& x) const;
  Matrix transpose() const;
  std::vector<Vector> to_dense_rows() const;
  std::vector<Triplet> triplets() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  FieldSpec field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<MatrixEntry>> columns_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, const Scalar& s);
/// Tensor product of linear maps; basis of the product ordered
/// lexicographically, index (i, j) -> i * dim_b + j.
Matrix kronecker(const Matrix& a, const Matrix& b);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix select_columns(const Matrix& a, std::span<const std::size_t> cols);
Matrix select_rows(const Matrix& a, std::span<const std::size_t> rows);

}  // namespace cobarlab
