#pragma once

#include "cobarlab/comodule.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cobarlab {

/// Requested internal degree lies beyond what a truncated presentation determines.
class TruncationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A cochain basis element: positions in the reduced basis of C_+, one per
/// tensor slot, followed by a comodule basis index when there are coefficients.
using Word = std::vector<std::uint32_t>;

/// Reduced cobar complex C_+^{(x) i} (x) M, 0 <= i <= imax + 1, split into
/// cells (i, j) by internal weight when the coalgebra (and M) are graded.
/// Without a grading every degree is a single cell with j = 0.
/// Differential on slot t (1-based) of the C_+ factors has sign (-1)^{t+1};
/// the coaction on M enters with sign (-1)^i.
class CobarComplex {
 public:
  CobarComplex(const Coalgebra& c, unsigned imax, std::optional<unsigned> jmax = {});
  /// Throws TruncationError when jmax exceeds the truncation bound.
  CobarComplex(const GradedCoalgebra& g, unsigned imax, unsigned jmax);
  /// With coefficients in a comodule; Ext^i_C(k, M).
  CobarComplex(const Comodule& m, unsigned imax, std::optional<unsigned> jmax = {});

  const Coalgebra& coalgebra() const { return coalgebra_; }
  const FieldSpec& field() const { return coalgebra_.field(); }
  bool graded() const { return graded_; }
  bool has_coefficients() const { return module_.has_value(); }
  unsigned imax() const { return imax_; }
  /// Largest internal degree with cells (0 when ungraded).
  unsigned jmax() const { return jmax_; }
  /// True when every nonzero cell with i <= imax lies inside the window.
  bool window_complete() const { return window_complete_; }
  std::string truncation_note() const { return note_; }

  std::size_t term_dim(unsigned i, unsigned j) const;
  const std::vector<Word>& term_basis(unsigned i, unsigned j) const;
  /// Column index of a word in its cell, if the word belongs to cell (i, j).
  std::optional<std::size_t> index_of(unsigned i, unsigned j, const Word& w) const;
  /// Cell (i, j) -> cell (i + 1, j); requires i <= imax.
  Matrix differential(unsigned i, unsigned j) const;
  /// Internal degrees j with a (possibly empty) cell in cohomological degree i.
  std::vector<unsigned> internal_degrees() const;

 private:
  struct Cell {
    std::vector<Word> words;
    std::unordered_map<std::uint64_t, std::size_t> index;
  };
  void build(std::optional<unsigned> jmax_request);
  std::uint64_t encode(const Word& w) const;
  const Cell* cell(unsigned i, unsigned j) const;

  Coalgebra coalgebra_;
  std::optional<Comodule> module_;
  bool graded_ = false;
  unsigned imax_;
  unsigned jmax_ = 0;
  bool window_complete_ = true;
  std::string note_;
  std::vector<std::size_t> reduced_;   // reduced position -> coalgebra index
  std::vector<std::ptrdiff_t> pos_;    // coalgebra index -> reduced position or -1
  std::vector<std::vector<std::tuple<std::uint32_t, std::uint32_t, Scalar>>> reduced_comul_;
  std::map<std::pair<unsigned, unsigned>, Cell> cells_;
};

/// Ext dims per cell (i, j); for ungraded input all entries have j = 0.
struct ExtTable {
  bool graded = false;
  unsigned imax = 0;
  unsigned jmax = 0;
  std::map<std::pair<unsigned, unsigned>, std::size_t> cells;
  bool totals_complete = true;
  std::string truncation_note;

  std::size_t at(unsigned i, unsigned j) const;
  /// Sum over j for each i <= imax.
  std::vector<std::size_t> totals() const;
  /// Entries restricted to i <= imax and j <= jmax.
  ExtTable restricted(unsigned imax, unsigned jmax) const;
  /// Same window and same nonzero entries.
  friend bool operator==(const ExtTable& a, const ExtTable& b);
};

/// threads = 0 picks the hardware concurrency.
ExtTable ext_table(const CobarComplex& cx, unsigned threads = 1);
/// Ext^i_C(k, M) dims for 0 <= i <= imax.
std::vector<std::size_t> cobar_with_coefficients(const Comodule& m, unsigned imax, unsigned threads = 1);

struct CobarClass {
  unsigned i = 0;
  unsigned j = 0;
  Vector cocycle;
};

class NotACocycle : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cohomology of a cobar complex (no coefficients) with chosen representatives
/// and the concatenation product.
class ExtAlgebra {
 public:
  explicit ExtAlgebra(std::shared_ptr<const CobarComplex> cx, unsigned threads = 1);

  const CobarComplex& complex() const { return *cx_; }
  std::size_t dim(unsigned i, unsigned j) const;
  const std::vector<Vector>& representatives(unsigned i, unsigned j) const;
  CobarClass basis_class(unsigned i, unsigned j, std::size_t k) const;
  CobarClass unit() const { return basis_class(0, 0, 0); }
  /// Coordinates of the class of a cocycle; throws NotACocycle.
  Vector class_coordinates(unsigned i, unsigned j, const Vector& cocycle) const;
  /// Concatenate representatives and reduce to the stored representative.
  CobarClass product(const CobarClass& a, const CobarClass& b) const;
  /// dim(ia+ib, ja+jb) x (dim(ia,ja) * dim(ib,jb)), column ka * dim(ib,jb) + kb.
  Matrix multiplication(unsigned ia, unsigned ja, unsigned ib, unsigned jb) const;

 private:
  struct CellData {
    std::vector<Vector> reps;
    Matrix out;            // outgoing differential
    Matrix reps_and_bdry;  // columns: representatives, then coboundary spanning set
  };
  const CellData& data(unsigned i, unsigned j) const;

  std::shared_ptr<const CobarComplex> cx_;
  std::map<std::pair<unsigned, unsigned>, CellData> data_;
};

CobarClass ext_product(const ExtAlgebra& ext, const CobarClass& a, const CobarClass& b);

/// Reverse the tensor factors of every word: a chain map up to sign from the
/// cobar complex of C to that of C^op (same reduced basis), sending a product
/// ab to the reversed product.
Vector reverse_words(const CobarComplex& from, const CobarComplex& to, unsigned i, unsigned j, const Vector& v);

/// Matrix of the isomorphism Ext(C) -> Ext(C^op) induced by reversal on cell (i, j).
Matrix reversal_matching(const ExtAlgebra& ext, const ExtAlgebra& ext_op, unsigned i, unsigned j);

/// Checks m_C(a, b) and m_{C^op}(rho b, rho a) agree after matching for all
/// cells with total degree <= max_degree.
struct AntiIsomorphismReport {
  bool holds = true;
  std::size_t products_checked = 0;
  std::vector<std::string> failures;
};
AntiIsomorphismReport check_anti_isomorphism(const ExtAlgebra& ext, const ExtAlgebra& ext_op, unsigned max_degree);

}  // namespace cobarlab
