#include "cobarlab/matrix.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace cobarlab {

namespace {

void require_same_field(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) throw DimensionError("matrices over different fields");
}

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

Matrix::Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), columns_(cols) {}

Matrix Matrix::identity(FieldSpec field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.columns_[i].push_back({i, Scalar(1)});
  return m;
}

Matrix Matrix::from_triplets(FieldSpec field, std::size_t rows, std::size_t cols,
                             std::vector<Triplet> triplets) {
  Matrix m(field, rows, cols);
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& x, const Triplet& y) {
    return x.col != y.col ? x.col < y.col : x.row < y.row;
  });
  for (std::size_t k = 0; k < triplets.size();) {
    const auto r = triplets[k].row, c = triplets[k].col;
    if (r >= rows || c >= cols)
      throw DimensionError("triplet (" + std::to_string(r) + "," + std::to_string(c) +
                           ") outside " + shape(m));
    Scalar sum = 0;
    for (; k < triplets.size() && triplets[k].row == r && triplets[k].col == c; ++k)
      sum += triplets[k].value;
    sum = field.normalize(sum);
    if (sum != 0) m.columns_[c].push_back({r, std::move(sum)});
  }
  return m;
}

Matrix Matrix::from_rows(FieldSpec field, std::size_t cols, const std::vector<Vector>& rows) {
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionError("ragged row in dense matrix");
    for (std::size_t c = 0; c < cols; ++c)
      if (rows[r][c] != 0) t.push_back({r, c, rows[r][c]});
  }
  return from_triplets(field, rows.size(), cols, std::move(t));
}

Matrix Matrix::from_columns(FieldSpec field, std::size_t rows, const std::vector<Vector>& cols) {
  Matrix m(field, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw DimensionError("ragged column in dense matrix");
    for (std::size_t r = 0; r < rows; ++r) {
      Scalar v = field.normalize(cols[c][r]);
      if (v != 0) m.columns_[c].push_back({r, std::move(v)});
    }
  }
  return m;
}

std::size_t Matrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

Scalar Matrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw DimensionError("index outside " + shape(*this));
  const auto& col = columns_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const MatrixEntry& e, std::size_t row) { return e.row < row; });
  return (it != col.end() && it->row == r) ? it->value : Scalar(0);
}

Vector Matrix::column_vector(std::size_t c) const {
  Vector v(rows_, Scalar(0));
  for (const auto& e : columns_.at(c)) v[e.row] = e.value;
  return v;
}

Vector Matrix::apply(const Vector& x) const {
  if (x.size() != cols_)
    throw DimensionError("vector of length " + std::to_string(x.size()) + " applied to " +
                         shape(*this));
  Vector y(rows_, Scalar(0));
  for (std::size_t c = 0; c < cols_; ++c) {
    if (x[c] == 0) continue;
    for (const auto& e : columns_[c]) y[e.row] += e.value * x[c];
  }
  for (auto& v : y) v = field_.normalize(v);
  return y;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (const auto& e : columns_[c]) t.columns_[e.row].push_back({c, e.value});
  return t;
}

std::vector<Vector> Matrix::to_dense_rows() const {
  std::vector<Vector> d(rows_, Vector(cols_, Scalar(0)));
  for (std::size_t c = 0; c < cols_; ++c)
    for (const auto& e : columns_[c]) d[e.row][c] = e.value;
  return d;
}

std::vector<Triplet> Matrix::triplets() const {
  std::vector<Triplet> t;
  for (std::size_t c = 0; c < cols_; ++c)
    for (const auto& e : columns_[c]) t.push_back({e.row, c, e.value});
  return t;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (!(a.field_ == b.field_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t c = 0; c < a.cols_; ++c) {
    const auto& x = a.columns_[c];
    const auto& y = b.columns_[c];
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k].row != y[k].row || x[k].value != y[k].value) return false;
  }
  return true;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows())
    throw DimensionError("cannot multiply " + shape(a) + " by " + shape(b));
  const auto& f = a.field();
  std::vector<Triplet> out;
  std::map<std::size_t, Scalar> acc;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    acc.clear();
    for (const auto& eb : b.column(c))
      for (const auto& ea : a.column(eb.row)) acc[ea.row] += ea.value * eb.value;
    for (auto& [r, v] : acc) {
      Scalar w = f.normalize(v);
      if (w != 0) out.push_back({r, c, std::move(w)});
    }
  }
  return Matrix::from_triplets(f, a.rows(), b.cols(), std::move(out));
}

Matrix add(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("cannot add " + shape(a) + " and " + shape(b));
  auto t = a.triplets();
  for (auto& x : b.triplets()) t.push_back(std::move(x));
  return Matrix::from_triplets(a.field(), a.rows(), a.cols(), std::move(t));
}

Matrix scale(const Matrix& a, const Scalar& s) {
  auto t = a.triplets();
  for (auto& x : t) x.value *= s;
  return Matrix::from_triplets(a.field(), a.rows(), a.cols(), std::move(t));
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  std::vector<Triplet> t;
  t.reserve(a.nnz() * b.nnz());
  for (std::size_t ca = 0; ca < a.cols(); ++ca)
    for (const auto& ea : a.column(ca))
      for (std::size_t cb = 0; cb < b.cols(); ++cb)
        for (const auto& eb : b.column(cb))
          t.push_back({ea.row * b.rows() + eb.row, ca * b.cols() + cb, ea.value * eb.value});
  return Matrix::from_triplets(a.field(), a.rows() * b.rows(), a.cols() * b.cols(), std::move(t));
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows()) throw DimensionError("hstack of " + shape(a) + " and " + shape(b));
  auto t = a.triplets();
  for (auto& x : b.triplets()) t.push_back({x.row, x.col + a.cols(), std::move(x.value)});
  return Matrix::from_triplets(a.field(), a.rows(), a.cols() + b.cols(), std::move(t));
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.cols()) throw DimensionError("vstack of " + shape(a) + " and " + shape(b));
  auto t = a.triplets();
  for (auto& x : b.triplets()) t.push_back({x.row + a.rows(), x.col, std::move(x.value)});
  return Matrix::from_triplets(a.field(), a.rows() + b.rows(), a.cols(), std::move(t));
}

Matrix select_columns(const Matrix& a, std::span<const std::size_t> cols) {
  std::vector<Triplet> t;
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (const auto& e : a.column(cols[k])) t.push_back({e.row, k, e.value});
  return Matrix::from_triplets(a.field(), a.rows(), cols.size(), std::move(t));
}

Matrix select_rows(const Matrix& a, std::span<const std::size_t> rows) {
  std::vector<std::ptrdiff_t> where(a.rows(), -1);
  for (std::size_t k = 0; k < rows.size(); ++k) where.at(rows[k]) = static_cast<std::ptrdiff_t>(k);
  std::vector<Triplet> t;
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (const auto& e : a.column(c))
      if (where[e.row] >= 0) t.push_back({static_cast<std::size_t>(where[e.row]), c, e.value});
  return Matrix::from_triplets(a.field(), rows.size(), a.cols(), std::move(t));
}

}  // namespace cobarlab
