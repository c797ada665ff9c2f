#pragma once

#include "cobarlab/algebra.hpp"
#include "cobarlab/comodule.hpp"

#include <memory>

namespace cobarlab {

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Left module over a finite-dimensional algebra: one dim x dim action matrix
/// per algebra basis element.
class ModulePresentation {
 public:
  ModulePresentation(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> action);

  /// k through the augmentation.
  static ModulePresentation trivial(AlgebraPtr a);
  static ModulePresentation regular(AlgebraPtr a);
  /// A^g, basis index s * dim A + t for e_t in the s-th copy.
  static ModulePresentation free(AlgebraPtr a, std::size_t g);

  const Algebra& algebra() const { return *algebra_; }
  const AlgebraPtr& shared_algebra() const { return algebra_; }
  std::size_t dim() const { return dim_; }
  const Matrix& action(std::size_t a) const { return action_.at(a); }
  /// Action of an arbitrary algebra element.
  Matrix action_of(const Vector& x) const;

 private:
  AlgebraPtr algebra_;
  std::size_t dim_;
  std::vector<Matrix> action_;
};

struct ModuleReport {
  bool associative = false;
  bool unital = false;
  bool ok() const { return associative && unital; }
};
ModuleReport validate(const ModulePresentation& m);

ModulePresentation direct_sum(const ModulePresentation& a, const ModulePresentation& b);
/// Restriction to an invariant subspace (throws PresentationError otherwise).
ModulePresentation submodule(const ModulePresentation& m, const SubspaceBasis& sub);
bool is_module_morphism(const ModulePresentation& from, const ModulePresentation& to, const Matrix& f);
/// Basis of Hom_A(from, to) as dim(to) x dim(from) matrices.
std::vector<Matrix> module_hom_basis(const ModulePresentation& from, const ModulePresentation& to);

/// f . m = f(m_(-1)) m_(0) over dual_algebra(base).
ModulePresentation comodule_to_module(const Comodule& m, AlgebraPtr dual);
ModulePresentation comodule_to_module(const Comodule& m);
/// m -> sum_c e_c (x) e^c . m; the result may fail validation when the module is not rational.
Comodule module_to_comodule(const ModulePresentation& m, CoalgebraPtr base);

/// P_n -> ... -> P_0 -> X with P_i = A^{g_i}. Generators in each step are a
/// complement of A_+ X, extended greedily if they do not generate.
struct FreeResolution {
  ModulePresentation target;
  std::vector<std::size_t> ranks;
  Matrix augmentation;               // dim X x dim P_0
  std::vector<Matrix> differentials;  // d_i : P_i -> P_{i-1}, entry i-1
};
FreeResolution free_resolution(const ModulePresentation& x, unsigned length);

/// Ext^i_A(L, M), 0 <= i <= n.
std::vector<std::size_t> module_ext(const ModulePresentation& L, const ModulePresentation& M, unsigned n);

struct ComparisonReport {
  std::vector<std::size_t> comodule_side;
  std::vector<std::size_t> module_side;
  std::vector<bool> equal;
  bool verdict = false;
  double seconds = 0;
};
/// Ext_C(L, M) against Ext_{C*}(L, M) computed by independent resolutions.
ComparisonReport compare_theorem1(const Comodule& L, const Comodule& M, unsigned n);

/// Direct summand of a free module, decided by splitting a cover.
bool is_projective(const ModulePresentation& p);

/// Exact sequence ... -> P_1 -> P_0 -> X -> 0 whose first prefix_length terms are projective.
struct InitiallyProjectiveResolution {
  ModulePresentation target;
  std::vector<ModulePresentation> terms;
  Matrix augmentation;               // P_0 -> X
  std::vector<Matrix> differentials;  // P_i -> P_{i-1}, entry i-1
  unsigned projective_prefix_length = 0;
};

class InexactSequence : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Checks exactness, module maps and the recorded prefix; throws InexactSequence.
void check_initially_projective(const InitiallyProjectiveResolution& r);

struct InitiallyProjectiveExt {
  std::vector<std::size_t> hom_cohomology;  // H^i Hom_A(P_., Y)
  std::vector<std::size_t> true_ext;         // Ext^i_A(X, Y)
  /// The map H^i -> Ext^i induced by a lift of a free resolution is bijective.
  std::vector<bool> comparison_iso;
  bool matches_within_prefix = false;
};
/// Degrees 0..n; needs n + 1 differentials.
InitiallyProjectiveExt ext_via_initially_projective(const InitiallyProjectiveResolution& r, const ModulePresentation& y,
                                                    unsigned n);

/// k[x]/(x^2) with 0 -> 0 -> k -> A -> A -> k; projective in degrees 0, 1 only.
InitiallyProjectiveResolution degraded_dual_numbers_resolution(const FieldSpec& field);
/// The minimal free resolution of x as an initially projective one (prefix = length).
InitiallyProjectiveResolution as_initially_projective(const FreeResolution& r);

struct Ext1FaithfulnessReport {
  std::size_t cocycles = 0;
  std::size_t module_ext1 = 0;
  std::size_t comodule_ext1 = 0;
  bool all_rational = false;
  bool ok() const { return all_rational && module_ext1 == comodule_ext1; }
};
/// Every extension of modules 0 -> M -> E -> L -> 0 built from a cocycle basis
/// comes from a comodule structure on E.
Ext1FaithfulnessReport check_ext1_faithfulness(const Comodule& L, const Comodule& M);

}  // namespace cobarlab
