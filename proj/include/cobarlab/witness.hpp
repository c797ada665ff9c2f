#pragma once

// Finite models of two phenomena that only exist over infinitely cogenerated
// coalgebras. C is modelled by k (+) V with V primitive and countably
// infinite-dimensional (basis e_0, e_1, ...); elements of C* are modelled by
// the subring k (+) S, S the eventually constant functionals on V.

#include "cobarlab/linalg.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace cobarlab {

inline constexpr std::uint64_t kDefaultWitnessSeed = 20240607;

/// chi(e_i) = overrides[i] when present, the limit otherwise.
struct EventuallyConstant {
  Scalar limit = 0;
  std::map<std::size_t, Scalar> overrides;

  Scalar at(std::size_t i) const;
  friend EventuallyConstant operator+(const EventuallyConstant& a, const EventuallyConstant& b);
  friend EventuallyConstant operator*(const Scalar& s, const EventuallyConstant& a);
  friend bool operator==(const EventuallyConstant& a, const EventuallyConstant& b);
};

/// Element of V**: tail * lim(chi) + sum_i corrections[i] chi(e_i).
class TaggedCofunctional {
 public:
  enum class Kind { from_vector, eventual_value };

  static TaggedCofunctional from_vector(const Vector& coords);
  static TaggedCofunctional eventual_value(Scalar tail, std::map<std::size_t, Scalar> corrections = {});

  Kind kind() const { return kind_; }
  const Scalar& tail() const { return tail_; }
  const std::map<std::size_t, Scalar>& corrections() const { return corrections_; }
  Scalar operator()(const EventuallyConstant& chi) const;
  std::string describe() const;

 private:
  Kind kind_ = Kind::from_vector;
  Scalar tail_ = 0;
  std::map<std::size_t, Scalar> corrections_;
};

/// True iff f is evaluation at a vector of V.
bool is_rational(const TaggedCofunctional& f);
/// The vector of V that f evaluates at, when there is one.
std::optional<std::map<std::size_t, Scalar>> representing_vector(const TaggedCofunctional& f);
/// A functional vanishing on e_0..e_{n-1} on which f is nonzero: no vector
/// supported below n can represent f. Nothing when f is rational.
std::optional<EventuallyConstant> support_obstruction(const TaggedCofunctional& f, std::size_t n);

/// a = (alpha, chi) with alpha = a(g) and chi = a restricted to V.
struct SubringElement {
  Scalar alpha = 0;
  EventuallyConstant chi;

  static SubringElement unit();
  static SubringElement random(std::mt19937_64& rng);
  /// (alpha, chi)(beta, psi) = (alpha beta, alpha psi + beta chi).
  friend SubringElement operator*(const SubringElement& a, const SubringElement& b);
};

/// a e_1 = alpha e_1, a e_2 = alpha e_2 + f(chi) e_1.
class TwoDimModule {
 public:
  explicit TwoDimModule(TaggedCofunctional f) : f_(std::move(f)) {}

  const TaggedCofunctional& functional() const { return f_; }
  /// Mutation hook for tests: adds f(chi) e_2 to a e_2.
  void corrupt() { corrupted_ = true; }
  bool corrupted() const { return corrupted_; }
  /// Coordinates in (e_1, e_2).
  std::pair<Scalar, Scalar> act(const SubringElement& a, const std::pair<Scalar, Scalar>& v) const;

 private:
  TaggedCofunctional f_;
  bool corrupted_ = false;
};

TwoDimModule build_nonrational_module(const TaggedCofunctional& f);
bool verify_module_axioms(const TwoDimModule& m, std::size_t samples, std::uint64_t seed = kDefaultWitnessSeed);
/// Whole space when f is rational, span(e_1) otherwise.
SubspaceBasis max_rational_submodule(const TwoDimModule& m);

/// Sparse vector of T, basis t_0, t_1, ...
using TVector = std::map<std::size_t, Scalar>;

/// diagonal * (e_i -> t_i) + sum_k chi_k (x) t_k. Finite rank iff diagonal == 0.
struct TaggedLinearMap {
  Scalar diagonal = 0;
  std::vector<std::pair<EventuallyConstant, TVector>> finite_terms;

  static TaggedLinearMap finite_rank(std::vector<std::pair<EventuallyConstant, TVector>> terms);
  static TaggedLinearMap diagonal_tail(Scalar tail, std::vector<std::pair<EventuallyConstant, TVector>> corrections = {});

  bool is_finite_rank() const { return diagonal == 0; }
  TVector apply(std::size_t i) const;
  friend TaggedLinearMap operator+(const TaggedLinearMap& a, const TaggedLinearMap& b);
  friend TaggedLinearMap operator*(const Scalar& s, const TaggedLinearMap& a);
};

/// Linear function on Hom(V, T) vanishing on V* (x) T: the diagonal coefficient.
Scalar phi(const TaggedLinearMap& m);

/// h : C = k (+) V -> Q = k (+) T.
struct HomCQ {
  Scalar at_g_k = 0;
  TVector at_g_t;
  EventuallyConstant on_v_k;
  TaggedLinearMap on_v_t;
};

/// Q = k (+) T with contraaction pi(h) = (h(g)_k + phi(h|_V,T), h(g)_T).
struct ContraWitness {
  HomCQ g0;  // the designated input with pi_{T,k}(g0) = 1
};

struct QElement {
  Scalar k = 0;
  TVector t;
  friend bool operator==(const QElement& a, const QElement& b);
};

QElement contraaction(const HomCQ& h);
/// C*-module structure induced by the contraaction: a . q = pi(c -> a(c) q).
QElement module_action(const SubringElement& a, const QElement& q);

struct ContraWitnessReport {
  bool module_trivial = false;
  bool contra_nontrivial = false;
  bool splitting_not_contra_linear = false;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool ok() const { return module_trivial && contra_nontrivial && splitting_not_contra_linear; }
};

ContraWitness build_contra_witness();
ContraWitnessReport verify_contra_witness(const ContraWitness& w, std::size_t samples = 10,
                                          std::uint64_t seed = kDefaultWitnessSeed);

}  // namespace cobarlab
