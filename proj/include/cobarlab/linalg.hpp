#pragma once

#include "cobarlab/matrix.hpp"

#include <optional>
#include <vector>

namespace cobarlab {

/// Ordered basis of a subspace of a coordinate space k^n.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;
  /// The vectors must be linearly independent; only their lengths are checked.
  SubspaceBasis(std::size_t ambient_dim, std::vector<Vector> vectors);
  /// Keeps a maximal independent subset, in order.
  static SubspaceBasis span_of(const FieldSpec& field, std::size_t ambient_dim,
                               const std::vector<Vector>& vectors);
  static SubspaceBasis whole(const FieldSpec& field, std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return vectors_.size(); }
  bool empty() const { return vectors_.empty(); }
  const std::vector<Vector>& vectors() const { return vectors_; }
  const Vector& operator[](std::size_t i) const { return vectors_[i]; }

  /// ambient_dim x dim matrix whose columns are the basis vectors.
  Matrix as_columns(const FieldSpec& field) const;
  bool contains(const FieldSpec& field, const Vector& v) const;
  /// Coordinates of v in this basis, if v lies in the span.
  std::optional<Vector> coordinates(const FieldSpec& field, const Vector& v) const;

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<Vector> vectors_;
};

std::size_t rank(const Matrix& m);
SubspaceBasis kernel_basis(const Matrix& m);
/// Some x with m x = b, or nothing when the system is inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);
/// One elimination shared by every right-hand side.
std::vector<std::optional<Vector>> solve_many(const Matrix& m, const std::vector<Vector>& rhs);
SubspaceBasis image_basis(const Matrix& m);

/// Reduced row echelon form of the span of some vectors: each row has a
/// pivot entry 1 and zeros in the other rows' pivot columns.
struct RowEchelon {
  std::size_t ambient_dim = 0;
  std::vector<std::size_t> pivot_columns;
  std::vector<Vector> rows;
};

RowEchelon row_reduce(const FieldSpec& field, std::size_t ambient_dim,
                      const std::vector<Vector>& vectors);

/// The coordinate space k^n modulo a subspace W, with the quotient basis given
/// by the standard vectors outside the pivot columns of W's echelon form.
class Quotient {
 public:
  Quotient(const FieldSpec& field, std::size_t ambient_dim, const std::vector<Vector>& spanning);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return complement_.size(); }
  std::size_t sub_dim() const { return echelon_.rows.size(); }
  /// Standard basis indices representing the quotient basis.
  const std::vector<std::size_t>& complement() const { return complement_; }
  /// dim x ambient: coordinates of the class of x.
  const Matrix& projection() const { return projection_; }
  /// ambient x dim: the standard-vector section.
  const Matrix& section() const { return section_; }

 private:
  std::size_t ambient_dim_;
  RowEchelon echelon_;
  std::vector<std::size_t> complement_;
  Matrix projection_;
  Matrix section_;
};

}  // namespace cobarlab
