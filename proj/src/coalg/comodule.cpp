#include "cobarlab/comodule.hpp"

#include <map>
#include <tuple>

namespace cobarlab {

namespace {

TermList normalize_terms(const FieldSpec& field, const TermList& terms) {
  std::map<std::pair<std::size_t, std::size_t>, Scalar> acc;
  for (const auto& t : terms) acc[{t.left, t.right}] += t.coeff;
  TermList out;
  for (auto& [key, v] : acc) {
    Scalar w = field.normalize(v);
    if (w != 0) out.push_back({key.first, key.second, std::move(w)});
  }
  return out;
}

// Weight of a homogeneous vector, or nothing for zero / mixed vectors.
std::optional<unsigned> homogeneous_weight(const Comodule& m, const Vector& v) {
  std::optional<unsigned> w;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (w && *w != m.weight(i)) return std::nullopt;
    w = m.weight(i);
  }
  return w;
}

}  // namespace

Comodule::Comodule(CoalgebraPtr base, std::size_t dim, std::vector<TermList> coaction,
                   std::optional<std::vector<unsigned>> weights)
    : base_(std::move(base)), dim_(dim), coaction_(std::move(coaction)), weights_(std::move(weights)) {
  if (!base_) throw PresentationError("comodule without a base coalgebra");
  if (coaction_.size() != dim_)
    throw PresentationError("coaction lists " + std::to_string(coaction_.size()) +
                            " basis vectors, expected " + std::to_string(dim_));
  if (weights_ && weights_->size() != dim_)
    throw PresentationError("comodule weights have the wrong length");
  for (std::size_t t = 0; t < dim_; ++t) {
    for (const auto& term : coaction_[t])
      if (term.left >= base_->dim() || term.right >= dim_)
        throw PresentationError("coaction of basis vector " + std::to_string(t) +
                                " refers to an index out of range");
    coaction_[t] = normalize_terms(base_->field(), coaction_[t]);
  }
}

Comodule Comodule::trivial(CoalgebraPtr base) {
  const auto g = base->grouplike();
  std::optional<std::vector<unsigned>> w;
  if (base->is_graded()) w = std::vector<unsigned>{0};
  return Comodule(std::move(base), 1, {{{g, 0, Scalar(1)}}}, std::move(w));
}

Comodule Comodule::regular(CoalgebraPtr base) { return cofree(std::move(base), 1); }

Comodule Comodule::cofree(CoalgebraPtr base, std::size_t n,
                          std::optional<std::vector<unsigned>> v_weights) {
  const auto& c = *base;
  std::vector<TermList> coaction(c.dim() * n);
  for (std::size_t e = 0; e < c.dim(); ++e)
    for (std::size_t v = 0; v < n; ++v)
      for (const auto& [a, b, x] : c.comul(e)) coaction[e * n + v].push_back({a, b * n + v, x});
  std::optional<std::vector<unsigned>> w;
  if (c.is_graded()) {
    if (v_weights && v_weights->size() != n)
      throw PresentationError("cogenerator weights have the wrong length");
    w.emplace();
    for (std::size_t e = 0; e < c.dim(); ++e)
      for (std::size_t v = 0; v < n; ++v) w->push_back(c.weight(e) + (v_weights ? (*v_weights)[v] : 0));
  }
  return Comodule(std::move(base), c.dim() * n, std::move(coaction), std::move(w));
}

Matrix Comodule::coaction_matrix() const {
  std::vector<Triplet> t;
  for (std::size_t m = 0; m < dim_; ++m)
    for (const auto& [c, m2, x] : coaction_[m]) t.push_back({c * dim_ + m2, m, x});
  return Matrix::from_triplets(base_->field(), base_->dim() * dim_, dim_, std::move(t));
}

Matrix Comodule::reduced_coaction_matrix() const {
  const auto reduced = base_->reduced_basis();
  std::vector<std::ptrdiff_t> pos(base_->dim(), -1);
  for (std::size_t k = 0; k < reduced.size(); ++k) pos[reduced[k]] = static_cast<std::ptrdiff_t>(k);
  std::vector<Triplet> t;
  for (std::size_t m = 0; m < dim_; ++m)
    for (const auto& [c, m2, x] : coaction_[m])
      if (pos[c] >= 0) t.push_back({static_cast<std::size_t>(pos[c]) * dim_ + m2, m, x});
  return Matrix::from_triplets(base_->field(), reduced.size() * dim_, dim_, std::move(t));
}

ComoduleReport validate(const Comodule& m) {
  using Triple = std::tuple<std::size_t, std::size_t, std::size_t>;
  const auto& c = m.base();
  const auto& f = c.field();
  ComoduleReport r;
  r.coassociative = true;
  r.counital = true;
  for (std::size_t t = 0; t < m.dim(); ++t) {
    std::map<Triple, Scalar> lhs, rhs;
    Vector unit = f.zeros(m.dim());
    for (const auto& [e, m2, x] : m.coaction(t)) {
      for (const auto& [a, b, y] : c.comul(e)) lhs[{a, b, m2}] += x * y;
      for (const auto& [a, m3, y] : m.coaction(m2)) rhs[{e, a, m3}] += x * y;
      unit[m2] += c.counit()[e] * x;
      if (m.is_graded() && c.weight(e) + m.weight(m2) != m.weight(t)) r.grading_compatible = false;
    }
    auto clean = [&](std::map<Triple, Scalar> in) {
      std::map<Triple, Scalar> out;
      for (auto& [k, v] : in)
        if (Scalar w = f.normalize(v); w != 0) out.emplace(k, w);
      return out;
    };
    if (clean(std::move(lhs)) != clean(std::move(rhs))) r.coassociative = false;
    for (auto& v : unit) v = f.normalize(v);
    if (unit != f.unit_vector(m.dim(), t)) r.counital = false;
  }
  return r;
}

SubspaceBasis socle(const Comodule& m) { return kernel_basis(m.reduced_coaction_matrix()); }

Comodule direct_sum(const Comodule& a, const Comodule& b) {
  if (a.shared_base() != b.shared_base() && !(a.base() == b.base()))
    throw PresentationError("direct sum of comodules over different coalgebras");
  std::vector<TermList> coaction;
  for (std::size_t t = 0; t < a.dim(); ++t) coaction.push_back(a.coaction(t));
  for (std::size_t t = 0; t < b.dim(); ++t) {
    TermList terms;
    for (const auto& [c, m, x] : b.coaction(t)) terms.push_back({c, m + a.dim(), x});
    coaction.push_back(std::move(terms));
  }
  std::optional<std::vector<unsigned>> w;
  if (a.is_graded() && b.is_graded()) {
    w = *a.weights();
    w->insert(w->end(), b.weights()->begin(), b.weights()->end());
  }
  return Comodule(a.shared_base(), a.dim() + b.dim(), std::move(coaction), std::move(w));
}

Comodule subcomodule(const Comodule& m, const SubspaceBasis& sub) {
  const auto& c = m.base();
  const auto& f = c.field();
  const Matrix basis = sub.as_columns(f);
  const Matrix nu = m.coaction_matrix();
  // component (c, .) of nu(s_k), for every c and k
  std::vector<Vector> rhs;
  for (std::size_t k = 0; k < sub.dim(); ++k) {
    Vector img = nu.apply(sub[k]);
    for (std::size_t e = 0; e < c.dim(); ++e)
      rhs.emplace_back(img.begin() + static_cast<std::ptrdiff_t>(e * m.dim()),
                       img.begin() + static_cast<std::ptrdiff_t>((e + 1) * m.dim()));
  }
  auto coords = solve_many(basis, rhs);
  std::vector<TermList> coaction(sub.dim());
  for (std::size_t k = 0; k < sub.dim(); ++k)
    for (std::size_t e = 0; e < c.dim(); ++e) {
      const auto& y = coords[k * c.dim() + e];
      if (!y) throw PresentationError("subspace is not a subcomodule");
      for (std::size_t l = 0; l < sub.dim(); ++l)
        if ((*y)[l] != 0) coaction[k].push_back({e, l, (*y)[l]});
    }
  std::optional<std::vector<unsigned>> w;
  if (m.is_graded()) {
    w.emplace();
    for (const auto& v : sub.vectors()) {
      auto hw = homogeneous_weight(m, v);
      if (!hw) {
        w.reset();
        break;
      }
      w->push_back(*hw);
    }
  }
  return Comodule(m.shared_base(), sub.dim(), std::move(coaction), std::move(w));
}

Comodule quotient_comodule(const Comodule& m, const SubspaceBasis& sub) {
  const auto& c = m.base();
  const auto& f = c.field();
  Quotient q(f, m.dim(), sub.vectors());
  const auto& proj = q.projection();
  std::vector<TermList> coaction(q.dim());
  for (std::size_t k = 0; k < q.dim(); ++k) {
    const auto src = q.complement()[k];
    for (const auto& [e, m2, x] : m.coaction(src))
      for (const auto& pe : proj.column(m2)) coaction[k].push_back({e, pe.row, x * pe.value});
  }
  // weights descend only along a homogeneous subspace
  bool homogeneous = m.is_graded();
  for (const auto& v : sub.vectors())
    if (homogeneous && !homogeneous_weight(m, v)) homogeneous = false;
  std::optional<std::vector<unsigned>> w;
  if (homogeneous) {
    w.emplace();
    for (auto idx : q.complement()) w->push_back(m.weight(idx));
  }
  return Comodule(m.shared_base(), q.dim(), std::move(coaction), std::move(w));
}

Comodule change_basis(const Comodule& m, const Matrix& basis) {
  const auto& f = m.base().field();
  const std::size_t n = m.dim();
  if (basis.rows() != n || basis.cols() != n || rank(basis) != n)
    throw DimensionError("change of basis must be an invertible square matrix");
  std::vector<Vector> units;
  for (std::size_t i = 0; i < n; ++i) units.push_back(f.unit_vector(n, i));
  auto inv_cols = solve_many(basis, units);
  std::vector<Vector> cols;
  for (auto& v : inv_cols) cols.push_back(*v);
  const Matrix inverse = Matrix::from_columns(f, n, cols);
  std::vector<TermList> coaction(n);
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& be : basis.column(k))
      for (const auto& [e, m2, x] : m.coaction(be.row))
        for (const auto& ie : inverse.column(m2)) coaction[k].push_back({e, ie.row, be.value * x * ie.value});
  return Comodule(m.shared_base(), n, std::move(coaction));
}

namespace {

Matrix morphism_equations(const Comodule& from, const Comodule& to) {
  const auto& c = from.base();
  const std::size_t dm = from.dim(), dn = to.dim(), dc = c.dim();
  std::vector<Triplet> t;
  // unknown F[n, m] at column n * dm + m; equation (m, c, n') at row (m * dc + c) * dn + n'
  for (std::size_t m = 0; m < dm; ++m) {
    for (std::size_t n = 0; n < dn; ++n)
      for (const auto& [e, n2, x] : to.coaction(n)) t.push_back({(m * dc + e) * dn + n2, n * dm + m, x});
    for (const auto& [e, m2, y] : from.coaction(m))
      for (std::size_t n2 = 0; n2 < dn; ++n2) t.push_back({(m * dc + e) * dn + n2, n2 * dm + m2, -y});
  }
  return Matrix::from_triplets(c.field(), dm * dc * dn, dn * dm, std::move(t));
}

}  // namespace

bool is_comodule_morphism(const Comodule& from, const Comodule& to, const Matrix& f) {
  if (f.rows() != to.dim() || f.cols() != from.dim()) throw DimensionError("morphism has the wrong shape");
  Vector flat = f.field().zeros(to.dim() * from.dim());
  for (const auto& e : f.triplets()) flat[e.row * from.dim() + e.col] = e.value;
  return is_zero(morphism_equations(from, to).apply(flat));
}

std::vector<Matrix> comodule_hom_basis(const Comodule& from, const Comodule& to) {
  const auto& field = from.base().field();
  auto ker = kernel_basis(morphism_equations(from, to));
  std::vector<Matrix> out;
  for (const auto& v : ker.vectors()) {
    std::vector<Triplet> t;
    for (std::size_t idx = 0; idx < v.size(); ++idx)
      if (v[idx] != 0) t.push_back({idx / from.dim(), idx % from.dim(), v[idx]});
    out.push_back(Matrix::from_triplets(field, to.dim(), from.dim(), std::move(t)));
  }
  return out;
}

SubspaceBasis primitives(const Coalgebra& c) {
  const auto n = c.dim(), g = c.grouplike();
  std::vector<Triplet> t;
  for (std::size_t e = 0; e < n; ++e) {
    for (const auto& [i, j, x] : c.comul(e)) t.push_back({i * n + j, e, x});
    t.push_back({g * n + e, e, Scalar(-1)});
    t.push_back({e * n + g, e, Scalar(-1)});
  }
  return kernel_basis(Matrix::from_triplets(c.field(), n * n, n, std::move(t)));
}

Comodule two_dim_extension(CoalgebraPtr base, const Vector& v) {
  const auto g = base->grouplike();
  TermList second{{g, 1, Scalar(1)}};
  for (std::size_t e = 0; e < v.size(); ++e)
    if (v[e] != 0) second.push_back({e, 0, v[e]});
  return Comodule(std::move(base), 2, {{{g, 0, Scalar(1)}}, std::move(second)});
}

Comodule random_two_dim_comodule(CoalgebraPtr base, std::mt19937_64& rng) {
  const auto& f = base->field();
  auto prim = primitives(*base);
  std::uniform_int_distribution<long> coeff(-3, 3);
  Vector v = f.zeros(base->dim());
  while (prim.dim() > 0 && is_zero(v)) {
    v = f.zeros(base->dim());
    for (const auto& p : prim.vectors()) {
      Scalar a = f.from_int(coeff(rng));
      for (std::size_t e = 0; e < v.size(); ++e) v[e] = f.add(v[e], f.mul(a, p[e]));
    }
  }
  auto ext = two_dim_extension(base, v);
  while (true) {
    std::vector<Vector> cols{{f.from_int(coeff(rng)), f.from_int(coeff(rng))},
                             {f.from_int(coeff(rng)), f.from_int(coeff(rng))}};
    auto p = Matrix::from_columns(f, 2, cols);
    if (rank(p) == 2) return change_basis(ext, p);
  }
}

}  // namespace cobarlab
