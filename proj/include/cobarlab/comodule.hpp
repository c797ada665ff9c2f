#pragma once

#include "cobarlab/coalgebra.hpp"

#include <memory>
#include <random>

namespace cobarlab {

using CoalgebraPtr = std::shared_ptr<const Coalgebra>;

/// Left comodule over a finite-dimensional coalgebra, coaction given by terms
/// coeff * e_left (x) m_right with e_left a coalgebra basis vector.
class Comodule {
 public:
  Comodule(CoalgebraPtr base, std::size_t dim, std::vector<TermList> coaction,
           std::optional<std::vector<unsigned>> weights = {});

  /// The one-dimensional comodule k, coaction 1 -> g (x) 1.
  static Comodule trivial(CoalgebraPtr base);
  /// C over itself.
  static Comodule regular(CoalgebraPtr base);
  /// C (x) V with V of dimension n; basis index c * n + v.
  static Comodule cofree(CoalgebraPtr base, std::size_t n,
                         std::optional<std::vector<unsigned>> v_weights = {});

  const Coalgebra& base() const { return *base_; }
  const CoalgebraPtr& shared_base() const { return base_; }
  std::size_t dim() const { return dim_; }
  const TermList& coaction(std::size_t t) const { return coaction_.at(t); }
  bool is_graded() const { return weights_.has_value(); }
  const std::optional<std::vector<unsigned>>& weights() const { return weights_; }
  unsigned weight(std::size_t t) const { return weights_ ? (*weights_)[t] : 0; }

  /// (dim C * dim M) x dim M, row index c * dim M + m.
  Matrix coaction_matrix() const;
  /// Composite M -> C (x) M -> C_+ (x) M, rows indexed by (position in reduced basis, m).
  Matrix reduced_coaction_matrix() const;

 private:
  CoalgebraPtr base_;
  std::size_t dim_;
  std::vector<TermList> coaction_;
  std::optional<std::vector<unsigned>> weights_;
};

struct ComoduleReport {
  bool coassociative = false;
  bool counital = false;
  bool grading_compatible = true;
  bool ok() const { return coassociative && counital && grading_compatible; }
};

ComoduleReport validate(const Comodule& m);

/// Maximal trivial subcomodule: kernel of M -> C_+ (x) M. Homogeneous when M is graded.
SubspaceBasis socle(const Comodule& m);

Comodule direct_sum(const Comodule& a, const Comodule& b);
/// Restriction of the coaction to an invariant subspace (throws if not invariant).
Comodule subcomodule(const Comodule& m, const SubspaceBasis& sub);
/// Quotient by an invariant subspace in the basis chosen by Quotient.
Comodule quotient_comodule(const Comodule& m, const SubspaceBasis& sub);
/// Same comodule in the basis given by the columns of an invertible matrix.
Comodule change_basis(const Comodule& m, const Matrix& basis);

bool is_comodule_morphism(const Comodule& from, const Comodule& to, const Matrix& f);
/// Basis of Hom_C(from, to) as dim(to) x dim(from) matrices.
std::vector<Matrix> comodule_hom_basis(const Comodule& from, const Comodule& to);

/// Primitive elements x with mu(x) = g (x) x + x (x) g, as vectors in C.
SubspaceBasis primitives(const Coalgebra& c);
/// Extension of k by k with m2 -> g (x) m2 + v (x) m1 for a primitive v.
Comodule two_dim_extension(CoalgebraPtr base, const Vector& v);
/// two_dim_extension with random primitive v, followed by a random change of basis.
Comodule random_two_dim_comodule(CoalgebraPtr base, std::mt19937_64& rng);

}  // namespace cobarlab
