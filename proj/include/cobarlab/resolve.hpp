#pragma once

#include "cobarlab/comodule.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cobarlab {

class NotConilpotent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One step M_i -> J_i = C (x) V_i -> M_{i+1} = J_i / M_i.
struct CoresolutionStep {
  Comodule source;            // M_i
  Comodule cofree;            // J_i
  std::optional<std::vector<unsigned>> cogenerator_weights;
  Matrix retraction;          // dim V_i x dim M_i, identity on the socle basis
  Matrix embedding;           // dim J_i x dim M_i, (id (x) r) nu
  Matrix projection;          // dim M_{i+1} x dim J_i
  Matrix section;             // dim J_i x dim M_{i+1}
};

struct CoresolutionOptions {
  /// Randomize the retraction onto the socle with this seed.
  std::optional<std::uint64_t> seed;
  /// Keep only weights <= cap (graded base and target only).
  std::optional<unsigned> weight_cap;
};

/// 0 -> M -> J_0 -> J_1 -> ... -> J_n with J_i = C (x) V_i cofree.
class MinimalCoresolution {
 public:
  MinimalCoresolution(Comodule target, std::vector<CoresolutionStep> steps, std::vector<Matrix> differentials,
                      std::optional<unsigned> weight_cap);

  const Comodule& target() const { return target_; }
  const std::vector<CoresolutionStep>& steps() const { return steps_; }
  std::size_t length() const { return steps_.empty() ? 0 : steps_.size() - 1; }
  std::vector<std::size_t> cogenerator_dims() const;
  /// dim V_i split by cogenerator weight (graded case).
  std::map<std::pair<unsigned, unsigned>, std::size_t> cogenerator_cells() const;
  /// d_i : J_i -> J_{i+1}, for i < length().
  const std::vector<Matrix>& differentials() const { return differentials_; }
  std::optional<unsigned> weight_cap() const { return weight_cap_; }
  /// d_i vanishes on the socle g (x) V_i for every i.
  bool minimal() const { return minimal_; }

 private:
  Comodule target_;
  std::vector<CoresolutionStep> steps_;
  std::vector<Matrix> differentials_;
  std::optional<unsigned> weight_cap_;
  bool minimal_ = false;
};

/// Throws NotConilpotent for a non-conilpotent base.
MinimalCoresolution minimal_coresolution(const Comodule& m, unsigned length, const CoresolutionOptions& opts = {});

/// Cogenerator dims; throws when the resolution is not minimal.
std::vector<std::size_t> betti_dims(const MinimalCoresolution& r);

struct CoresolutionCheck {
  bool exact = false;
  bool minimal = false;
  bool embeddings_injective = false;
  bool socle_isomorphisms = false;
  bool ok() const { return exact && minimal && embeddings_injective && socle_isomorphisms; }
};
CoresolutionCheck check_coresolution(const MinimalCoresolution& r);

/// Dims of Ext^i_C(L, M) for 0 <= i <= n from Hom_C(L, J_i) = Hom_k(L, V_i);
/// the resolution of M must have length >= n + 1.
std::vector<std::size_t> comodule_ext(const Comodule& L, const MinimalCoresolution& resolution_of_m, unsigned n);
std::vector<std::size_t> comodule_ext(const Comodule& L, const Comodule& M, unsigned n);

/// Dual of a coresolution: free contramodules P_i = J_i^* with P_{i+1} -> P_i the
/// transposed differentials, augmented by P_0 -> M^*.
struct ContramoduleResolution {
  std::vector<std::size_t> cogenerator_dims;
  std::vector<std::size_t> term_dims;
  Matrix augmentation;               // dim M x dim J_0 (transpose of the embedding)
  std::vector<Matrix> differentials;  // P_{i+1} -> P_i
  /// Basis of Hom(P_i, k) as functionals on P_i, i.e. vectors of J_i (dim J_i x dim V_i).
  std::vector<Matrix> trivial_functionals;
};

ContramoduleResolution dualize_to_contramodule_resolution(const MinimalCoresolution& r);
bool is_exact(const ContramoduleResolution& r);
/// Ext^i_C(M^*, k) over contramodules from Hom(P_i, k) = V_i^*, for i < number of differentials.
std::vector<std::size_t> contramodule_ext_to_trivial(const ContramoduleResolution& r);

}  // namespace cobarlab
