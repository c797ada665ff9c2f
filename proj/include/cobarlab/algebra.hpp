#pragma once

#include "cobarlab/cobar.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace cobarlab {

/// Finite-dimensional associative algebra by structure constants:
/// e_a e_b = sum_t mult(t, a * dim + b) e_t.
class Algebra {
 public:
  Algebra(FieldSpec field, std::size_t dim, Vector unit, Matrix mult, std::optional<Vector> augmentation = {},
          std::optional<std::vector<unsigned>> weights = {});

  const FieldSpec& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Vector& unit() const { return unit_; }
  /// dim x dim^2.
  const Matrix& mult() const { return mult_; }
  /// Product of two basis elements.
  Vector product(std::size_t a, std::size_t b) const { return mult_.column_vector(a * dim_ + b); }
  Vector multiply(const Vector& x, const Vector& y) const;
  const std::optional<Vector>& augmentation() const { return augmentation_; }
  bool is_graded() const { return weights_.has_value(); }
  const std::optional<std::vector<unsigned>>& weights() const { return weights_; }
  unsigned weight(std::size_t t) const { return weights_ ? (*weights_)[t] : 0; }

  friend bool operator==(const Algebra& a, const Algebra& b);

 private:
  FieldSpec field_;
  std::size_t dim_;
  Vector unit_;
  Matrix mult_;
  std::optional<Vector> augmentation_;
  std::optional<std::vector<unsigned>> weights_;
};

struct AlgebraReport {
  bool associative = false;
  bool unital = false;
  bool augmentation_multiplicative = true;
  bool ok() const { return associative && unital && augmentation_multiplicative; }
};
AlgebraReport validate(const Algebra& a);

Algebra opposite(const Algebra& a);

/// C^* with (fg)(c) = f(c_(2)) g(c_(1)) in the dual basis e^t; unit = counit,
/// augmentation = evaluation at the grouplike, weights inherited.
Algebra dual_algebra(const Coalgebra& c);

/// Positively graded algebra truncated at degree D with A_0 = k. Component
/// (p, q) is the dims[p+q] x dims[p]*dims[q] matrix of A_p (x) A_q -> A_{p+q}
/// (column a * dims[q] + b).
class GradedAlgebra {
 public:
  using Key = std::pair<unsigned, unsigned>;
  GradedAlgebra(FieldSpec field, unsigned bound, std::vector<std::size_t> dims, std::map<Key, Matrix> components);

  const FieldSpec& field() const { return field_; }
  unsigned bound() const { return bound_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  Matrix component(unsigned p, unsigned q) const;
  const std::map<Key, Matrix>& components() const { return components_; }

  friend bool operator==(const GradedAlgebra& a, const GradedAlgebra& b);

 private:
  FieldSpec field_;
  unsigned bound_;
  std::vector<std::size_t> dims_;
  std::map<Key, Matrix> components_;
};

AlgebraReport validate(const GradedAlgebra& a);

/// Degree-wise dual with the same product convention as dual_algebra.
GradedAlgebra graded_dual(const GradedCoalgebra& c);
/// Inverse of the above.
GradedCoalgebra graded_dual(const GradedAlgebra& a);
/// Finite-dimensional algebra with weights, unit in degree 0.
Algebra flatten(const GradedAlgebra& a);

/// Truncated free algebra on m letters, words of length j indexed in base m
/// with the first letter most significant.
GradedAlgebra free_algebra(unsigned m, unsigned D, const FieldSpec& field);

/// Quotient of the free algebra by the ideal generated by degree-2 relations
/// (vectors in k^{m*m}, index a*m + b for the word ab), truncated at degree D.
/// Degree-j basis: words outside the pivot columns of the degree-j ideal.
GradedAlgebra quadratic_algebra(unsigned m, const std::vector<Vector>& relations, unsigned D, const FieldSpec& field);

/// Tor/Ext of k over an augmented algebra from the reduced bar complex,
/// split by weight when the algebra is graded and the augmentation is a
/// coordinate functional.
ExtTable bar_ext_table(const Algebra& a, unsigned imax, std::optional<unsigned> jmax = {}, unsigned threads = 1);
/// Throws TruncationError when jmax exceeds the truncation bound.
ExtTable bar_ext_table(const GradedAlgebra& a, unsigned imax, unsigned jmax, unsigned threads = 1);

}  // namespace cobarlab
