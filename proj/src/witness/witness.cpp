#include "cobarlab/witness.hpp"

#include <sstream>

namespace cobarlab {

namespace {

EventuallyConstant normalized(EventuallyConstant c) {
  for (auto it = c.overrides.begin(); it != c.overrides.end();)
    it = it->second == c.limit ? c.overrides.erase(it) : std::next(it);
  return c;
}

void add_into(TVector& acc, const TVector& v, const Scalar& s) {
  for (const auto& [i, x] : v) {
    auto& slot = acc[i];
    slot += s * x;
    if (slot == 0) acc.erase(i);
  }
}

EventuallyConstant random_functional(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> val(-3, 3), idx(0, 7), count(0, 3);
  EventuallyConstant c;
  c.limit = val(rng);
  for (long k = count(rng); k > 0; --k) c.overrides[idx(rng)] = val(rng);
  return normalized(c);
}

TVector random_tvector(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> val(-3, 3), idx(0, 5);
  TVector t;
  for (int k = 0; k < 2; ++k) {
    const long v = val(rng);
    if (v != 0) t[idx(rng)] = v;
  }
  return t;
}

}  // namespace

Scalar EventuallyConstant::at(std::size_t i) const {
  auto it = overrides.find(i);
  return it == overrides.end() ? limit : it->second;
}

EventuallyConstant operator+(const EventuallyConstant& a, const EventuallyConstant& b) {
  EventuallyConstant out;
  out.limit = a.limit + b.limit;
  for (const auto& [i, x] : a.overrides) out.overrides[i] = a.at(i) + b.at(i);
  for (const auto& [i, x] : b.overrides) out.overrides[i] = a.at(i) + b.at(i);
  return normalized(out);
}

EventuallyConstant operator*(const Scalar& s, const EventuallyConstant& a) {
  EventuallyConstant out;
  out.limit = s * a.limit;
  for (const auto& [i, x] : a.overrides) out.overrides[i] = s * x;
  return normalized(out);
}

bool operator==(const EventuallyConstant& a, const EventuallyConstant& b) {
  return normalized(a).overrides == normalized(b).overrides && a.limit == b.limit;
}

TaggedCofunctional TaggedCofunctional::from_vector(const Vector& coords) {
  TaggedCofunctional f;
  f.kind_ = Kind::from_vector;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0) f.corrections_[i] = coords[i];
  return f;
}

TaggedCofunctional TaggedCofunctional::eventual_value(Scalar tail, std::map<std::size_t, Scalar> corrections) {
  TaggedCofunctional f;
  f.kind_ = Kind::eventual_value;
  f.tail_ = std::move(tail);
  for (auto& [i, x] : corrections)
    if (x != 0) f.corrections_[i] = x;
  return f;
}

Scalar TaggedCofunctional::operator()(const EventuallyConstant& chi) const {
  Scalar out = tail_ * chi.limit;
  for (const auto& [i, x] : corrections_) out += x * chi.at(i);
  return out;
}

std::string TaggedCofunctional::describe() const {
  std::ostringstream os;
  os << (kind_ == Kind::from_vector ? "FromVector(" : "EventualValue(tail=" + tail_.get_str() + ", ");
  os << "{";
  bool first = true;
  for (const auto& [i, x] : corrections_) {
    os << (first ? "" : ", ") << i << ": " << x.get_str();
    first = false;
  }
  os << "})";
  return os.str();
}

bool is_rational(const TaggedCofunctional& f) { return f.tail() == 0; }

std::optional<std::map<std::size_t, Scalar>> representing_vector(const TaggedCofunctional& f) {
  if (!is_rational(f)) return std::nullopt;
  return f.corrections();
}

std::optional<EventuallyConstant> support_obstruction(const TaggedCofunctional& f, std::size_t n) {
  if (is_rational(f)) return std::nullopt;
  EventuallyConstant chi;
  chi.limit = 1;
  for (std::size_t i = 0; i < n; ++i) chi.overrides[i] = 0;
  for (const auto& [i, x] : f.corrections()) chi.overrides[i] = 0;
  return chi;
}

SubringElement SubringElement::unit() { return {Scalar(1), {}}; }

SubringElement SubringElement::random(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> val(-4, 4);
  return {Scalar(val(rng)), random_functional(rng)};
}

SubringElement operator*(const SubringElement& a, const SubringElement& b) {
  return {a.alpha * b.alpha, a.alpha * b.chi + b.alpha * a.chi};
}

std::pair<Scalar, Scalar> TwoDimModule::act(const SubringElement& a, const std::pair<Scalar, Scalar>& v) const {
  const Scalar ft = f_(a.chi);
  std::pair<Scalar, Scalar> out{a.alpha * v.first + ft * v.second, a.alpha * v.second};
  if (corrupted_) out.second += ft * v.second;
  return out;
}

TwoDimModule build_nonrational_module(const TaggedCofunctional& f) { return TwoDimModule(f); }

bool verify_module_axioms(const TwoDimModule& m, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::pair<Scalar, Scalar> e1{1, 0}, e2{0, 1};
  for (const auto& e : {e1, e2})
    if (m.act(SubringElement::unit(), e) != e) return false;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto a = SubringElement::random(rng), b = SubringElement::random(rng);
    for (const auto& e : {e1, e2})
      if (m.act(a * b, e) != m.act(a, m.act(b, e))) return false;
  }
  return true;
}

SubspaceBasis max_rational_submodule(const TwoDimModule& m) {
  if (is_rational(m.functional())) return SubspaceBasis(2, {Vector{Scalar(1), Scalar(0)}, Vector{Scalar(0), Scalar(1)}});
  return SubspaceBasis(2, {Vector{Scalar(1), Scalar(0)}});
}

TaggedLinearMap TaggedLinearMap::finite_rank(std::vector<std::pair<EventuallyConstant, TVector>> terms) {
  return {Scalar(0), std::move(terms)};
}

TaggedLinearMap TaggedLinearMap::diagonal_tail(Scalar tail, std::vector<std::pair<EventuallyConstant, TVector>> corrections) {
  return {std::move(tail), std::move(corrections)};
}

TVector TaggedLinearMap::apply(std::size_t i) const {
  TVector out;
  if (diagonal != 0) out[i] = diagonal;
  for (const auto& [chi, t] : finite_terms) add_into(out, t, chi.at(i));
  return out;
}

TaggedLinearMap operator+(const TaggedLinearMap& a, const TaggedLinearMap& b) {
  TaggedLinearMap out{a.diagonal + b.diagonal, a.finite_terms};
  out.finite_terms.insert(out.finite_terms.end(), b.finite_terms.begin(), b.finite_terms.end());
  return out;
}

TaggedLinearMap operator*(const Scalar& s, const TaggedLinearMap& a) {
  TaggedLinearMap out{s * a.diagonal, {}};
  for (const auto& [chi, t] : a.finite_terms) out.finite_terms.emplace_back(s * chi, t);
  return out;
}

// Hom(V, T) contains span(id) (+) V* (x) T; phi reads the first coordinate.
Scalar phi(const TaggedLinearMap& m) { return m.diagonal; }

bool operator==(const QElement& a, const QElement& b) { return a.k == b.k && a.t == b.t; }

QElement contraaction(const HomCQ& h) { return {h.at_g_k + phi(h.on_v_t), h.at_g_t}; }

QElement module_action(const SubringElement& a, const QElement& q) {
  HomCQ h;
  h.at_g_k = a.alpha * q.k;
  add_into(h.at_g_t, q.t, a.alpha);
  h.on_v_k = q.k * a.chi;
  if (!q.t.empty()) h.on_v_t = TaggedLinearMap::finite_rank({{a.chi, q.t}});
  return contraaction(h);
}

ContraWitness build_contra_witness() {
  ContraWitness w;
  w.g0.on_v_t = TaggedLinearMap::diagonal_tail(1);
  return w;
}

ContraWitnessReport verify_contra_witness(const ContraWitness& w, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ContraWitnessReport r;
  r.samples = samples;
  r.seed = seed;

  // finite-rank inputs never reach k from T, and k, T are C*-submodules
  r.module_trivial = true;
  std::uniform_int_distribution<long> val(-3, 3), terms(1, 3);
  for (std::size_t s = 0; s < samples; ++s) {
    HomCQ h;
    h.at_g_k = val(rng);
    h.at_g_t = random_tvector(rng);
    h.on_v_k = random_functional(rng);
    std::vector<std::pair<EventuallyConstant, TVector>> fr;
    for (long k = terms(rng); k > 0; --k) fr.emplace_back(random_functional(rng), random_tvector(rng));
    h.on_v_t = TaggedLinearMap::finite_rank(std::move(fr));
    const auto q = contraaction(h);
    if (q.k != h.at_g_k || q.t != h.at_g_t) r.module_trivial = false;

    const auto a = SubringElement::random(rng);
    const QElement in_k{Scalar(val(rng)), {}}, in_t{Scalar(0), random_tvector(rng)};
    const auto ak = module_action(a, in_k), at = module_action(a, in_t);
    if (!ak.t.empty() || ak.k != a.alpha * in_k.k) r.module_trivial = false;
    if (at.k != 0) r.module_trivial = false;
  }

  r.contra_nontrivial = phi(w.g0.on_v_t) == 1;
  // q o pi against pi_k o Hom(C, q), q : Q -> k the module splitting
  const Scalar lhs = contraaction(w.g0).k;
  const Scalar rhs = w.g0.at_g_k;
  r.splitting_not_contra_linear = lhs != rhs;
  return r;
}

}  // namespace cobarlab
