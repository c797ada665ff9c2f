#include "cobarlab/modules.hpp"

#include "cobarlab/resolve.hpp"

#include <chrono>

namespace cobarlab {

namespace {

// Row-major flattening, index r * cols + c.
Vector vec(const Matrix& m) {
  Vector out(m.rows() * m.cols(), Scalar(0));
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& e : m.column(c)) out[e.row * m.cols() + c] = e.value;
  return out;
}

Matrix unvec(const FieldSpec& f, std::size_t rows, std::size_t cols, const Vector& v) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) t.push_back({i / cols, i % cols, v[i]});
  return Matrix::from_triplets(f, rows, cols, std::move(t));
}

Matrix combine(const FieldSpec& f, std::size_t rows, std::size_t cols, const std::vector<Matrix>& basis,
               const Vector& coeffs) {
  Matrix out(f, rows, cols);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (coeffs[k] != 0) out = add(out, scale(basis[k], coeffs[k]));
  return out;
}

// The free module generated by the unit placed in block s.
Vector free_generator(const Algebra& a, std::size_t g, std::size_t s) {
  Vector v = a.field().zeros(g * a.dim());
  for (std::size_t t = 0; t < a.dim(); ++t) v[s * a.dim() + t] = a.unit()[t];
  return v;
}

// A^g -> X sending the unit of block s to gens[s].
Matrix cover_matrix(const ModulePresentation& x, const std::vector<Vector>& gens) {
  const auto n = x.algebra().dim();
  std::vector<Vector> cols;
  for (const auto& v : gens)
    for (std::size_t t = 0; t < n; ++t) cols.push_back(x.action(t).apply(v));
  return Matrix::from_columns(x.algebra().field(), x.dim(), cols);
}

// Complement of A_+ X, extended until it generates.
std::vector<Vector> generators(const ModulePresentation& x) {
  const auto& a = x.algebra();
  const auto& f = a.field();
  std::vector<Vector> span;
  if (a.augmentation()) {
    auto ideal = kernel_basis(Matrix::from_rows(f, a.dim(), {*a.augmentation()}));
    for (const auto& u : ideal.vectors()) {
      const Matrix act = x.action_of(u);
      for (std::size_t c = 0; c < act.cols(); ++c) span.push_back(act.column_vector(c));
    }
  }
  Quotient q(f, x.dim(), span);
  std::vector<Vector> gens;
  for (auto c : q.complement()) gens.push_back(f.unit_vector(x.dim(), c));
  std::size_t r = rank(cover_matrix(x, gens));
  for (std::size_t c = 0; c < x.dim() && r < x.dim(); ++c) {
    gens.push_back(f.unit_vector(x.dim(), c));
    const auto r2 = rank(cover_matrix(x, gens));
    if (r2 == r)
      gens.pop_back();
    else
      r = r2;
  }
  return gens;
}

// Columns vec(F_k o d) for a Hom basis F_k.
Matrix precompose_matrix(const FieldSpec& f, const std::vector<Matrix>& homs, const Matrix& d, std::size_t ydim) {
  std::vector<Vector> cols;
  for (const auto& h : homs) cols.push_back(vec(multiply(h, d)));
  return Matrix::from_columns(f, ydim * d.cols(), cols);
}

std::vector<std::size_t> cohomology(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& ranks,
                                    unsigned n) {
  std::vector<std::size_t> out;
  for (unsigned i = 0; i <= n; ++i) out.push_back(dims[i] - ranks[i] - (i ? ranks[i - 1] : 0));
  return out;
}

}  // namespace

ModulePresentation::ModulePresentation(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> action)
    : algebra_(std::move(algebra)), dim_(dim), action_(std::move(action)) {
  if (action_.size() != algebra_->dim()) throw PresentationError("need one action matrix per algebra basis element");
  for (const auto& m : action_)
    if (m.rows() != dim_ || m.cols() != dim_) throw PresentationError("action matrix has the wrong shape");
}

ModulePresentation ModulePresentation::trivial(AlgebraPtr a) {
  if (!a->augmentation()) throw std::invalid_argument("the trivial module needs an augmentation");
  std::vector<Matrix> act;
  for (std::size_t t = 0; t < a->dim(); ++t)
    act.push_back(Matrix::from_triplets(a->field(), 1, 1, {{0, 0, (*a->augmentation())[t]}}));
  return ModulePresentation(std::move(a), 1, std::move(act));
}

ModulePresentation ModulePresentation::regular(AlgebraPtr a) { return free(std::move(a), 1); }

ModulePresentation ModulePresentation::free(AlgebraPtr a, std::size_t g) {
  const auto n = a->dim();
  std::vector<Matrix> act;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<Triplet> t;
    for (std::size_t s = 0; s < g; ++s)
      for (std::size_t b = 0; b < n; ++b)
        for (const auto& e : a->mult().column(x * n + b)) t.push_back({s * n + e.row, s * n + b, e.value});
    act.push_back(Matrix::from_triplets(a->field(), g * n, g * n, std::move(t)));
  }
  return ModulePresentation(std::move(a), g * n, std::move(act));
}

Matrix ModulePresentation::action_of(const Vector& x) const {
  Matrix out(algebra_->field(), dim_, dim_);
  for (std::size_t t = 0; t < x.size(); ++t)
    if (x[t] != 0) out = add(out, scale(action_[t], x[t]));
  return out;
}

ModuleReport validate(const ModulePresentation& m) {
  const auto& a = m.algebra();
  ModuleReport r;
  r.associative = true;
  for (std::size_t x = 0; x < a.dim() && r.associative; ++x)
    for (std::size_t y = 0; y < a.dim(); ++y)
      if (!(multiply(m.action(x), m.action(y)) == m.action_of(a.product(x, y)))) {
        r.associative = false;
        break;
      }
  r.unital = m.action_of(a.unit()) == Matrix::identity(a.field(), m.dim());
  return r;
}

ModulePresentation direct_sum(const ModulePresentation& a, const ModulePresentation& b) {
  if (a.shared_algebra() != b.shared_algebra() && !(a.algebra() == b.algebra()))
    throw std::invalid_argument("modules over different algebras");
  const auto& f = a.algebra().field();
  std::vector<Matrix> act;
  for (std::size_t t = 0; t < a.algebra().dim(); ++t) {
    auto top = hstack(a.action(t), Matrix(f, a.dim(), b.dim()));
    auto bottom = hstack(Matrix(f, b.dim(), a.dim()), b.action(t));
    act.push_back(vstack(top, bottom));
  }
  return ModulePresentation(a.shared_algebra(), a.dim() + b.dim(), std::move(act));
}

ModulePresentation submodule(const ModulePresentation& m, const SubspaceBasis& sub) {
  const auto& f = m.algebra().field();
  const Matrix s = sub.as_columns(f);
  std::vector<Matrix> act;
  for (std::size_t t = 0; t < m.algebra().dim(); ++t) {
    const Matrix img = multiply(m.action(t), s);
    std::vector<Vector> rhs;
    for (std::size_t c = 0; c < img.cols(); ++c) rhs.push_back(img.column_vector(c));
    std::vector<Vector> cols;
    for (auto& x : solve_many(s, rhs)) {
      if (!x) throw PresentationError("subspace is not a submodule");
      cols.push_back(std::move(*x));
    }
    act.push_back(Matrix::from_columns(f, sub.dim(), cols));
  }
  return ModulePresentation(m.shared_algebra(), sub.dim(), std::move(act));
}

bool is_module_morphism(const ModulePresentation& from, const ModulePresentation& to, const Matrix& f) {
  if (f.rows() != to.dim() || f.cols() != from.dim()) return false;
  for (std::size_t t = 0; t < from.algebra().dim(); ++t)
    if (!(multiply(f, from.action(t)) == multiply(to.action(t), f))) return false;
  return true;
}

std::vector<Matrix> module_hom_basis(const ModulePresentation& from, const ModulePresentation& to) {
  const auto& f = from.algebra().field();
  const auto dp = from.dim(), dy = to.dim(), n = from.algebra().dim();
  // unknown F[y, p] at y * dp + p; equation (a, y, p) of F rho_P(a) - rho_Y(a) F
  std::vector<Triplet> t;
  for (std::size_t a = 0; a < n; ++a) {
    const auto base = a * dy * dp;
    for (std::size_t p = 0; p < dp; ++p)
      for (const auto& e : from.action(a).column(p))
        for (std::size_t y = 0; y < dy; ++y) t.push_back({base + y * dp + p, y * dp + e.row, e.value});
    for (std::size_t z = 0; z < dy; ++z)
      for (const auto& e : to.action(a).column(z))
        for (std::size_t p = 0; p < dp; ++p) t.push_back({base + e.row * dp + p, z * dp + p, -e.value});
  }
  auto ker = kernel_basis(Matrix::from_triplets(f, n * dy * dp, dy * dp, std::move(t)));
  std::vector<Matrix> out;
  for (const auto& v : ker.vectors()) out.push_back(unvec(f, dy, dp, v));
  return out;
}

ModulePresentation comodule_to_module(const Comodule& m, AlgebraPtr dual) {
  const auto n = m.base().dim();
  if (dual->dim() != n) throw std::invalid_argument("algebra is not the dual of the comodule's coalgebra");
  std::vector<std::vector<Triplet>> t(n);
  for (std::size_t x = 0; x < m.dim(); ++x)
    for (const auto& [c, y, v] : m.coaction(x)) t[c].push_back({y, x, v});
  std::vector<Matrix> act;
  for (auto& tc : t) act.push_back(Matrix::from_triplets(m.base().field(), m.dim(), m.dim(), std::move(tc)));
  return ModulePresentation(std::move(dual), m.dim(), std::move(act));
}

ModulePresentation comodule_to_module(const Comodule& m) {
  return comodule_to_module(m, std::make_shared<const Algebra>(dual_algebra(m.base())));
}

Comodule module_to_comodule(const ModulePresentation& m, CoalgebraPtr base) {
  if (base->dim() != m.algebra().dim()) throw std::invalid_argument("coalgebra does not match the module's algebra");
  std::vector<TermList> coaction(m.dim());
  for (std::size_t c = 0; c < base->dim(); ++c)
    for (std::size_t x = 0; x < m.dim(); ++x)
      for (const auto& e : m.action(c).column(x)) coaction[x].push_back({c, e.row, e.value});
  return Comodule(std::move(base), m.dim(), std::move(coaction));
}

FreeResolution free_resolution(const ModulePresentation& x, unsigned length) {
  const auto& a = x.algebra();
  const auto& f = a.field();
  FreeResolution r{x, {}, Matrix(f, x.dim(), 0), {}};
  ModulePresentation current = x;
  Matrix inclusion = Matrix::identity(f, x.dim());  // current -> previous free module (or x)
  for (unsigned i = 0; i <= length; ++i) {
    auto gens = generators(current);
    const Matrix cover = cover_matrix(current, gens);
    r.ranks.push_back(gens.size());
    if (i == 0)
      r.augmentation = cover;
    else
      r.differentials.push_back(multiply(inclusion, cover));
    auto ker = kernel_basis(cover);
    auto free = ModulePresentation::free(x.shared_algebra(), gens.size());
    current = submodule(free, ker);
    inclusion = ker.as_columns(f);
  }
  return r;
}

std::vector<std::size_t> module_ext(const ModulePresentation& L, const ModulePresentation& M, unsigned n) {
  const auto& a = L.algebra();
  const auto& f = a.field();
  const auto res = free_resolution(L, n + 1);
  const auto dm = M.dim();
  // Hom_A(A^g, M) = M^g; delta_i has block (s', s) = rho_M(block s of d_{i+1}(1_{s'}))
  std::vector<std::size_t> dims, ranks;
  for (unsigned i = 0; i <= n; ++i) {
    const auto g = res.ranks[i], g2 = res.ranks[i + 1];
    const auto& d = res.differentials[i];
    std::vector<Triplet> t;
    for (std::size_t s2 = 0; s2 < g2; ++s2) {
      const Vector img = d.apply(free_generator(a, g2, s2));
      for (std::size_t s = 0; s < g; ++s) {
        Vector block(img.begin() + s * a.dim(), img.begin() + (s + 1) * a.dim());
        if (is_zero(block)) continue;
        const Matrix act = M.action_of(block);
        for (std::size_t c = 0; c < dm; ++c)
          for (const auto& e : act.column(c)) t.push_back({s2 * dm + e.row, s * dm + c, e.value});
      }
    }
    dims.push_back(g * dm);
    ranks.push_back(rank(Matrix::from_triplets(f, g2 * dm, g * dm, std::move(t))));
  }
  return cohomology(dims, ranks, n);
}

ComparisonReport compare_theorem1(const Comodule& L, const Comodule& M, unsigned n) {
  if (L.shared_base() != M.shared_base() && !(L.base() == M.base()))
    throw std::invalid_argument("comodules over different coalgebras");
  const auto start = std::chrono::steady_clock::now();
  ComparisonReport r;
  r.comodule_side = comodule_ext(L, M, n);
  auto dual = std::make_shared<const Algebra>(dual_algebra(L.base()));
  r.module_side = module_ext(comodule_to_module(L, dual), comodule_to_module(M, dual), n);
  r.verdict = true;
  for (unsigned i = 0; i <= n; ++i) {
    r.equal.push_back(r.comodule_side[i] == r.module_side[i]);
    r.verdict = r.verdict && r.equal.back();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

bool is_projective(const ModulePresentation& p) {
  const auto& f = p.algebra().field();
  if (p.dim() == 0) return true;
  const auto gens = generators(p);
  const Matrix pi = cover_matrix(p, gens);
  const auto homs = module_hom_basis(p, ModulePresentation::free(p.shared_algebra(), gens.size()));
  std::vector<Vector> cols;
  for (const auto& h : homs) cols.push_back(vec(multiply(pi, h)));
  return solve(Matrix::from_columns(f, p.dim() * p.dim(), cols), vec(Matrix::identity(f, p.dim()))).has_value();
}

void check_initially_projective(const InitiallyProjectiveResolution& r) {
  const auto& terms = r.terms;
  if (terms.empty()) throw InexactSequence("no terms");
  if (r.differentials.size() + 1 != terms.size()) throw InexactSequence("need one differential per term after P_0");
  if (r.projective_prefix_length > terms.size()) throw InexactSequence("prefix longer than the sequence");
  if (!is_module_morphism(terms[0], r.target, r.augmentation)) throw InexactSequence("augmentation is not A-linear");
  if (rank(r.augmentation) != r.target.dim()) throw InexactSequence("augmentation is not onto");
  std::size_t prev_rank = r.target.dim();
  const Matrix* prev = &r.augmentation;
  for (std::size_t i = 0; i < r.differentials.size(); ++i) {
    const auto& d = r.differentials[i];
    if (!is_module_morphism(terms[i + 1], terms[i], d))
      throw InexactSequence("differential " + std::to_string(i + 1) + " is not A-linear");
    if (!multiply(*prev, d).is_zero()) throw InexactSequence("consecutive maps do not compose to zero");
    const auto rk = rank(d);
    if (rk != terms[i].dim() - prev_rank) throw InexactSequence("not exact at P_" + std::to_string(i));
    prev_rank = rk;
    prev = &d;
  }
  for (unsigned i = 0; i < r.projective_prefix_length; ++i)
    if (!is_projective(terms[i])) throw InexactSequence("P_" + std::to_string(i) + " is not projective");
}

InitiallyProjectiveExt ext_via_initially_projective(const InitiallyProjectiveResolution& r, const ModulePresentation& y,
                                                    unsigned n) {
  check_initially_projective(r);
  if (r.differentials.size() < n + 1) throw std::invalid_argument("sequence too short for the requested degree");
  const auto& a = r.target.algebra();
  const auto& f = a.field();
  const auto q = free_resolution(r.target, n + 1);
  std::vector<ModulePresentation> qterms;
  for (auto g : q.ranks) qterms.push_back(ModulePresentation::free(r.target.shared_algebra(), g));

  // Hom complexes into y, both as spans inside Hom_k(-, y)
  auto hom_complex = [&](const std::vector<ModulePresentation>& terms, const std::vector<Matrix>& diffs,
                         std::vector<std::vector<Matrix>>& homs, std::vector<Matrix>& deltas) {
    std::vector<std::size_t> dims, ranks;
    for (unsigned i = 0; i <= n + 1; ++i) homs.push_back(module_hom_basis(terms[i], y));
    for (unsigned i = 0; i <= n; ++i) {
      deltas.push_back(precompose_matrix(f, homs[i], diffs[i], y.dim()));
      dims.push_back(homs[i].size());
      ranks.push_back(rank(deltas.back()));
    }
    return cohomology(dims, ranks, n);
  };
  std::vector<std::vector<Matrix>> hp, hq;
  std::vector<Matrix> dp, dq;
  InitiallyProjectiveExt out;
  out.hom_cohomology = hom_complex(r.terms, r.differentials, hp, dp);
  out.true_ext = hom_complex(qterms, q.differentials, hq, dq);

  // chain lift f_i : Q_i -> P_i over the identity of the target
  std::vector<Matrix> lift;
  for (unsigned i = 0; i <= n; ++i) {
    const auto g = q.ranks[i];
    const Matrix& dP = i == 0 ? r.augmentation : r.differentials[i - 1];
    std::vector<Vector> rhs;
    for (std::size_t s = 0; s < g; ++s) {
      const Vector gen = free_generator(a, g, s);
      rhs.push_back(i == 0 ? q.augmentation.apply(gen) : lift[i - 1].apply(q.differentials[i - 1].apply(gen)));
    }
    std::vector<Vector> images;
    for (auto& p : solve_many(dP, rhs)) {
      if (!p) throw std::logic_error("chain lift failed");
      images.push_back(std::move(*p));
    }
    lift.push_back(cover_matrix(r.terms[i], images));
  }

  out.matches_within_prefix = true;
  for (unsigned i = 0; i <= n; ++i) {
    // cocycles of Hom(P, y) pulled back along f_i, against coboundaries of Hom(Q, y)
    auto z = kernel_basis(dp[i]);
    std::vector<Vector> cols;
    for (const auto& c : z.vectors())
      cols.push_back(vec(multiply(combine(f, y.dim(), r.terms[i].dim(), hp[i], c), lift[i])));
    const auto qdim = y.dim() * qterms[i].dim();
    Matrix bq = i ? dq[i - 1] : Matrix(f, qdim, 0);
    const auto rb = rank(bq);
    const auto induced = rank(hstack(Matrix::from_columns(f, qdim, cols), bq)) - rb;
    const bool iso = out.hom_cohomology[i] == out.true_ext[i] && induced == out.true_ext[i];
    out.comparison_iso.push_back(iso);
    if (i <= r.projective_prefix_length && !iso) out.matches_within_prefix = false;
  }
  return out;
}

InitiallyProjectiveResolution degraded_dual_numbers_resolution(const FieldSpec& field) {
  // basis 1, x
  auto a = std::make_shared<const Algebra>(
      field, 2, field.unit_vector(2, 0),
      Matrix::from_triplets(field, 2, 4, {{0, 0, Scalar(1)}, {1, 1, Scalar(1)}, {1, 2, Scalar(1)}}),
      field.unit_vector(2, 0), std::vector<unsigned>{0, 1});
  auto k = ModulePresentation::trivial(a);
  auto reg = ModulePresentation::regular(a);
  ModulePresentation zero(a, 0, {Matrix(field, 0, 0), Matrix(field, 0, 0)});
  InitiallyProjectiveResolution r{k, {reg, reg, k, zero, zero}, Matrix::from_triplets(field, 1, 2, {{0, 0, Scalar(1)}}), {}, 2};
  r.differentials.push_back(Matrix::from_triplets(field, 2, 2, {{1, 0, Scalar(1)}}));  // 1 -> x
  r.differentials.push_back(Matrix::from_triplets(field, 2, 1, {{1, 0, Scalar(1)}}));  // k -> xA
  r.differentials.push_back(Matrix(field, 1, 0));
  r.differentials.push_back(Matrix(field, 0, 0));
  return r;
}

InitiallyProjectiveResolution as_initially_projective(const FreeResolution& r) {
  InitiallyProjectiveResolution out{r.target, {}, r.augmentation, r.differentials, 0};
  for (auto g : r.ranks) out.terms.push_back(ModulePresentation::free(r.target.shared_algebra(), g));
  out.projective_prefix_length = static_cast<unsigned>(out.terms.size());
  return out;
}

Ext1FaithfulnessReport check_ext1_faithfulness(const Comodule& L, const Comodule& M) {
  const auto& c = L.base();
  const auto& f = c.field();
  auto dual = std::make_shared<const Algebra>(dual_algebra(c));
  const auto lm = comodule_to_module(L, dual), mm = comodule_to_module(M, dual);
  const auto n = dual->dim(), dl = L.dim(), dmd = M.dim();
  const auto blk = dmd * dl;
  // beta(a) in Hom_k(L, M) at a * blk + y * dl + l:
  // beta(ab) - rho_M(a) beta(b) - beta(a) rho_L(b) = 0 and beta(1) = 0
  std::vector<Triplet> t;
  std::size_t row = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y, row += blk) {
      for (const auto& e : dual->mult().column(x * n + y))
        for (std::size_t k = 0; k < blk; ++k) t.push_back({row + k, e.row * blk + k, e.value});
      for (std::size_t z = 0; z < dmd; ++z)
        for (const auto& e : mm.action(x).column(z))
          for (std::size_t l = 0; l < dl; ++l) t.push_back({row + e.row * dl + l, y * blk + z * dl + l, -e.value});
      for (std::size_t l = 0; l < dl; ++l)
        for (const auto& e : lm.action(y).column(l))
          for (std::size_t z = 0; z < dmd; ++z) t.push_back({row + z * dl + l, x * blk + z * dl + e.row, -e.value});
    }
  for (std::size_t s = 0; s < n; ++s)
    if (dual->unit()[s] != 0)
      for (std::size_t k = 0; k < blk; ++k) t.push_back({row + k, s * blk + k, dual->unit()[s]});
  row += blk;
  auto z = kernel_basis(Matrix::from_triplets(f, row, n * blk, std::move(t)));

  std::vector<Vector> bound;
  for (std::size_t idx = 0; idx < blk; ++idx) {
    const Matrix h = unvec(f, dmd, dl, f.unit_vector(blk, idx));
    Vector b;
    for (std::size_t x = 0; x < n; ++x) {
      auto v = vec(add(multiply(mm.action(x), h), scale(multiply(h, lm.action(x)), Scalar(-1))));
      b.insert(b.end(), v.begin(), v.end());
    }
    bound.push_back(std::move(b));
  }

  Ext1FaithfulnessReport rep;
  rep.cocycles = z.dim();
  rep.module_ext1 = z.dim() - rank(Matrix::from_columns(f, n * blk, bound));
  rep.comodule_ext1 = comodule_ext(L, M, 1)[1];
  rep.all_rational = true;
  for (const auto& beta : z.vectors()) {
    std::vector<Matrix> act;
    for (std::size_t x = 0; x < n; ++x) {
      Vector part(beta.begin() + x * blk, beta.begin() + (x + 1) * blk);
      auto top = hstack(mm.action(x), unvec(f, dmd, dl, part));
      auto bottom = hstack(Matrix(f, dl, dmd), lm.action(x));
      act.push_back(vstack(top, bottom));
    }
    ModulePresentation e(dual, dmd + dl, std::move(act));
    if (!validate(e).ok() || !validate(module_to_comodule(e, L.shared_base())).ok()) rep.all_rational = false;
  }
  return rep;
}

}  // namespace cobarlab
