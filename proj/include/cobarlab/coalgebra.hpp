#pragma once

#include "cobarlab/linalg.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace cobarlab {

/// Malformed presentation data (indices out of range, bad lengths, ...).
class PresentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One term coeff * e_left (x) e_right of a comultiplication or coaction.
struct TensorTerm {
  std::size_t left;
  std::size_t right;
  Scalar coeff;
};
using TermList = std::vector<TensorTerm>;

/// A finite-dimensional coaugmented coalgebra given by structure constants in
/// a basis e_0, ..., e_{n-1}. The coaugmentation sends 1 to the basis vector
/// e_g. An optional grading assigns a weight to each basis vector; it must be
/// 0 on e_g, positive elsewhere, and compatible with the comultiplication.
class Coalgebra {
 public:
  Coalgebra(FieldSpec field, std::size_t dim, std::size_t grouplike, Vector counit,
            std::vector<TermList> comul, std::optional<std::vector<unsigned>> grading = {},
            std::optional<unsigned> truncation_bound = {});

  const FieldSpec& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  std::size_t grouplike() const { return grouplike_; }
  const Vector& counit() const { return counit_; }
  const TermList& comul(std::size_t t) const { return comul_.at(t); }
  const std::vector<TermList>& comul() const { return comul_; }

  bool is_graded() const { return grading_.has_value(); }
  const std::optional<std::vector<unsigned>>& grading() const { return grading_; }
  unsigned weight(std::size_t t) const { return grading_ ? (*grading_)[t] : 0; }
  unsigned max_weight() const;
  /// Degree above which a flattened truncated graded coalgebra was cut off.
  std::optional<unsigned> truncation_bound() const { return truncation_bound_; }

  /// Basis indices other than the grouplike; they represent a basis of C_+ = C / k g.
  std::vector<std::size_t> reduced_basis() const;
  /// (dim*dim) x dim, row index left*dim + right.
  Matrix comul_matrix() const;

  friend bool operator==(const Coalgebra& a, const Coalgebra& b);

 private:
  FieldSpec field_;
  std::size_t dim_;
  std::size_t grouplike_;
  Vector counit_;
  std::vector<TermList> comul_;
  std::optional<std::vector<unsigned>> grading_;
  std::optional<unsigned> truncation_bound_;
};

/// Positively graded coalgebra truncated at degree D, with C_0 = k.
/// Component (j, p, q) is the dims[p]*dims[q] x dims[j] matrix of
/// C_j -> C_p (x) C_q (row index a*dims[q] + b).
class GradedCoalgebra {
 public:
  using Key = std::tuple<unsigned, unsigned, unsigned>;

  GradedCoalgebra(FieldSpec field, unsigned bound, std::vector<std::size_t> dims,
                  std::map<Key, Matrix> components);

  const FieldSpec& field() const { return field_; }
  unsigned bound() const { return bound_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total_dim() const;
  /// Zero matrix when no component was stored.
  Matrix component(unsigned j, unsigned p, unsigned q) const;
  const std::map<Key, Matrix>& components() const { return components_; }

  friend bool operator==(const GradedCoalgebra& a, const GradedCoalgebra& b);

 private:
  FieldSpec field_;
  unsigned bound_;
  std::vector<std::size_t> dims_;
  std::map<Key, Matrix> components_;
};

struct ValidationReport {
  bool coassociative = false;
  bool counital = false;
  bool coaugmented = false;
  bool conilpotent = false;
  bool cocommutative = false;
  bool grading_compatible = true;
  std::vector<std::string> problems;

  /// Everything except cocommutativity.
  bool all_required() const {
    return coassociative && counital && coaugmented && conilpotent && grading_compatible;
  }
};

ValidationReport validate(const Coalgebra& c);
ValidationReport validate(const GradedCoalgebra& g);

/// Ascending chain F_0 = k g, F_1, ... of the coaugmentation filtration.
struct FiltrationChain {
  std::vector<SubspaceBasis> subspaces;
  bool exhaustive = false;
};

/// F_m C = kernel of C -> C^{(x) m+1} -> C_+^{(x) m+1}. Stops when F_m = C or
/// the chain stabilizes (then it is constant forever).
FiltrationChain coaugmentation_filtration(const Coalgebra& c);

/// Deconcatenation coalgebra on words of length <= D in m letters.
GradedCoalgebra tensor_coalgebra(unsigned m, unsigned D, const FieldSpec& field);

class UnsupportedCharacteristic : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Symmetric tensors in Ten(V), dim V = m, in the basis of monomials
/// x^a = sum of all words of content a. Requires char 0 or char > D.
GradedCoalgebra symmetric_coalgebra(unsigned m, unsigned D, const FieldSpec& field);
/// Exponent vectors indexing the degree-j basis of symmetric_coalgebra(m, .).
std::vector<std::vector<unsigned>> monomial_basis(unsigned m, unsigned j);
/// Per degree j, the dims(Ten)_j x dims(Sym)_j matrix of the inclusion Sym -> Ten.
std::vector<Matrix> symmetric_inclusion(unsigned m, unsigned D, const FieldSpec& field);

Coalgebra opposite(const Coalgebra& c);
GradedCoalgebra opposite(const GradedCoalgebra& g);

Coalgebra flatten(const GradedCoalgebra& g);

}  // namespace cobarlab
