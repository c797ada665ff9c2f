#include "cobarlab/resolve.hpp"

#include <random>

namespace cobarlab {

namespace {

Comodule strip_weights(const Comodule& m) {
  std::vector<TermList> coaction;
  for (std::size_t t = 0; t < m.dim(); ++t) coaction.push_back(m.coaction(t));
  return Comodule(m.shared_base(), m.dim(), std::move(coaction));
}

SubspaceBasis units(const FieldSpec& f, std::size_t ambient, const std::vector<std::size_t>& idx) {
  std::vector<Vector> v;
  for (auto i : idx) v.push_back(f.unit_vector(ambient, i));
  return SubspaceBasis(ambient, std::move(v));
}

std::vector<std::size_t> weights_at_most(const Comodule& m, unsigned cap) {
  std::vector<std::size_t> keep;
  for (std::size_t t = 0; t < m.dim(); ++t)
    if (m.weight(t) <= cap) keep.push_back(t);
  return keep;
}

std::vector<Vector> columns_of(const Matrix& m) {
  std::vector<Vector> out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.column_vector(c));
  return out;
}

}  // namespace

MinimalCoresolution::MinimalCoresolution(Comodule target, std::vector<CoresolutionStep> steps,
                                         std::vector<Matrix> differentials, std::optional<unsigned> weight_cap)
    : target_(std::move(target)),
      steps_(std::move(steps)),
      differentials_(std::move(differentials)),
      weight_cap_(weight_cap) {
  minimal_ = true;
  for (std::size_t i = 0; i < differentials_.size(); ++i) {
    auto soc = socle(steps_[i].cofree);
    if (!multiply(differentials_[i], soc.as_columns(target_.base().field())).is_zero()) minimal_ = false;
  }
}

std::vector<std::size_t> MinimalCoresolution::cogenerator_dims() const {
  std::vector<std::size_t> out;
  for (const auto& s : steps_) out.push_back(s.retraction.rows());
  return out;
}

std::map<std::pair<unsigned, unsigned>, std::size_t> MinimalCoresolution::cogenerator_cells() const {
  std::map<std::pair<unsigned, unsigned>, std::size_t> out;
  for (unsigned i = 0; i < steps_.size(); ++i) {
    const auto& s = steps_[i];
    if (s.cogenerator_weights)
      for (auto w : *s.cogenerator_weights) ++out[{i, w}];
    else if (s.retraction.rows())
      out[{i, 0}] += s.retraction.rows();
  }
  return out;
}

MinimalCoresolution minimal_coresolution(const Comodule& m, unsigned length, const CoresolutionOptions& opts) {
  const auto& base = m.base();
  const auto& f = base.field();
  if (!coaugmentation_filtration(base).exhaustive)
    throw NotConilpotent("minimal coresolutions need a conilpotent coalgebra");
  const bool graded = base.is_graded() && m.is_graded();
  if (opts.weight_cap && !graded) throw std::invalid_argument("a weight cap needs a graded coalgebra and comodule");

  Comodule current = opts.weight_cap ? subcomodule(m, units(f, m.dim(), weights_at_most(m, *opts.weight_cap))) : m;
  if (!graded && current.is_graded()) current = strip_weights(current);
  const Comodule target = current;
  std::optional<std::mt19937_64> rng;
  if (opts.seed) rng.emplace(*opts.seed);
  std::uniform_int_distribution<long> coeff(-3, 3);

  std::vector<CoresolutionStep> steps;
  for (unsigned i = 0; i <= length; ++i) {
    const std::size_t n = current.dim();
    // socle in reduced echelon form: row k has a 1 at pivot p_k and 0 at the other pivots
    auto ech = row_reduce(f, n, socle(current).vectors());
    const std::size_t s = ech.rows.size();
    std::optional<std::vector<unsigned>> vweights;
    if (graded) {
      vweights.emplace();
      for (auto p : ech.pivot_columns) vweights->push_back(current.weight(p));
    }
    std::vector<Triplet> rt;
    for (std::size_t k = 0; k < s; ++k) rt.push_back({k, ech.pivot_columns[k], Scalar(1)});
    Matrix r = Matrix::from_triplets(f, s, n, std::move(rt));
    if (rng && s > 0) {
      // r + R (I - S r) is another retraction; R respects weights
      std::vector<Triplet> rand;
      for (std::size_t k = 0; k < s; ++k)
        for (std::size_t t = 0; t < n; ++t)
          if (!graded || current.weight(t) == (*vweights)[k]) rand.push_back({k, t, f.from_int(coeff(*rng))});
      Matrix R = Matrix::from_triplets(f, s, n, std::move(rand));
      Matrix S = Matrix::from_columns(f, n, ech.rows);
      Matrix proj_off = add(Matrix::identity(f, n), scale(multiply(S, r), Scalar(-1)));
      r = add(r, multiply(R, proj_off));
    }

    // e = (id (x) r) nu : M -> C (x) V
    std::vector<Triplet> et;
    for (std::size_t t = 0; t < n; ++t)
      for (const auto& [c, m2, x] : current.coaction(t))
        for (const auto& re : r.column(m2)) et.push_back({c * s + re.row, t, x * re.value});
    Matrix e = Matrix::from_triplets(f, base.dim() * s, n, std::move(et));

    Comodule cof = Comodule::cofree(current.shared_base(), s, vweights);
    if (!graded && cof.is_graded()) cof = strip_weights(cof);
    if (opts.weight_cap) {
      auto keep = weights_at_most(cof, *opts.weight_cap);
      cof = subcomodule(cof, units(f, cof.dim(), keep));
      e = select_rows(e, keep);
    }
    if (rank(e) != n) throw std::logic_error("cofree embedding is not injective");
    SubspaceBasis image(cof.dim(), columns_of(e));
    Quotient q(f, cof.dim(), image.vectors());
    Comodule next = quotient_comodule(cof, image);
    steps.push_back({current, cof, vweights, r, e, q.projection(), q.section()});
    current = std::move(next);
  }
  std::vector<Matrix> diffs;
  for (std::size_t i = 0; i + 1 < steps.size(); ++i)
    diffs.push_back(multiply(steps[i + 1].embedding, steps[i].projection));
  return MinimalCoresolution(target, std::move(steps), std::move(diffs), opts.weight_cap);
}

std::vector<std::size_t> betti_dims(const MinimalCoresolution& r) {
  if (!r.minimal()) throw std::invalid_argument("coresolution is not minimal");
  return r.cogenerator_dims();
}

CoresolutionCheck check_coresolution(const MinimalCoresolution& r) {
  CoresolutionCheck out;
  const auto& f = r.target().base().field();
  const auto& steps = r.steps();
  const auto& d = r.differentials();
  out.minimal = r.minimal();
  out.embeddings_injective = true;
  out.socle_isomorphisms = true;
  for (const auto& s : steps) {
    if (rank(s.embedding) != s.source.dim()) out.embeddings_injective = false;
    auto sm = socle(s.source);
    auto sj = socle(s.cofree);
    const auto v = s.retraction.rows();
    if (sm.dim() != v || sj.dim() != v) {
      out.socle_isomorphisms = false;
      continue;
    }
    auto img = multiply(s.embedding, sm.as_columns(f));
    if (rank(img) != v) out.socle_isomorphisms = false;
    for (std::size_t c = 0; c < img.cols(); ++c)
      if (!sj.contains(f, img.column_vector(c))) out.socle_isomorphisms = false;
  }
  out.exact = !steps.empty();
  if (out.exact) {
    const auto& e0 = steps[0].embedding;
    out.exact = rank(e0) == r.target().dim();
    std::size_t prev_rank = rank(e0);
    const Matrix* prev = &e0;
    for (const auto& di : d) {
      if (!multiply(di, *prev).is_zero()) out.exact = false;
      const auto rk = rank(di);
      if (rk != di.cols() - prev_rank) out.exact = false;
      prev_rank = rk;
      prev = &di;
    }
  }
  return out;
}

std::vector<std::size_t> comodule_ext(const Comodule& L, const MinimalCoresolution& res, unsigned n) {
  if (res.weight_cap()) throw std::invalid_argument("comodule Ext needs an uncapped coresolution");
  if (res.length() < n + 1) throw std::invalid_argument("coresolution too short for the requested degree");
  const auto& c = L.base();
  const auto& f = c.field();
  const std::size_t dl = L.dim(), dc = c.dim();
  auto vdim = res.cogenerator_dims();
  // T_i : Hom_k(L, V_i) -> Hom_k(L, V_{i+1}), f -> (eps (x) id) d_i (id (x) f) nu_L
  std::vector<std::size_t> ranks;
  for (unsigned i = 0; i <= n; ++i) {
    const auto s = vdim[i], s2 = vdim[i + 1];
    const auto& d = res.differentials()[i];
    std::vector<Triplet> tt;
    for (std::size_t k = 0; k < s; ++k)
      for (std::size_t l = 0; l < dl; ++l) {
        std::vector<Triplet> ft;
        for (std::size_t m = 0; m < dl; ++m)
          for (const auto& [e, l2, x] : L.coaction(m))
            if (l2 == l) ft.push_back({e * s + k, m, x});
        Matrix F = Matrix::from_triplets(f, dc * s, dl, std::move(ft));
        Matrix G = multiply(d, F);
        for (std::size_t m = 0; m < dl; ++m)
          for (const auto& ge : G.column(m)) {
            const auto e = ge.row / s2, k2 = ge.row % s2;
            if (c.counit()[e] != 0) tt.push_back({k2 * dl + m, k * dl + l, c.counit()[e] * ge.value});
          }
      }
    ranks.push_back(rank(Matrix::from_triplets(f, s2 * dl, s * dl, std::move(tt))));
  }
  std::vector<std::size_t> out;
  for (unsigned i = 0; i <= n; ++i) out.push_back(vdim[i] * dl - ranks[i] - (i ? ranks[i - 1] : 0));
  return out;
}

std::vector<std::size_t> comodule_ext(const Comodule& L, const Comodule& M, unsigned n) {
  return comodule_ext(L, minimal_coresolution(M, n + 1), n);
}

ContramoduleResolution dualize_to_contramodule_resolution(const MinimalCoresolution& r) {
  ContramoduleResolution out;
  const auto& f = r.target().base().field();
  out.cogenerator_dims = r.cogenerator_dims();
  for (const auto& s : r.steps()) {
    out.term_dims.push_back(s.cofree.dim());
    out.trivial_functionals.push_back(socle(s.cofree).as_columns(f));
  }
  out.augmentation = r.steps().front().embedding.transpose();
  for (const auto& d : r.differentials()) out.differentials.push_back(d.transpose());
  return out;
}

bool is_exact(const ContramoduleResolution& r) {
  // P_0 -> M^* onto, then exact at every P_i
  const auto& aug = r.augmentation;
  if (rank(aug) != aug.rows()) return false;
  std::size_t prev_rank = aug.rows();
  const Matrix* prev = &aug;
  for (const auto& d : r.differentials) {
    if (!multiply(*prev, d).is_zero()) return false;
    const auto rk = rank(d);
    if (rk != d.rows() - prev_rank) return false;
    prev_rank = rk;
    prev = &d;
  }
  return true;
}

std::vector<std::size_t> contramodule_ext_to_trivial(const ContramoduleResolution& r) {
  // lambda in Hom(P_i, k) maps to lambda o d_i^T, i.e. (d_i^T)^T lambda
  std::vector<std::size_t> ranks;
  for (std::size_t i = 0; i < r.differentials.size(); ++i)
    ranks.push_back(rank(multiply(r.differentials[i].transpose(), r.trivial_functionals[i])));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < r.differentials.size(); ++i)
    out.push_back(r.cogenerator_dims[i] - ranks[i] - (i ? ranks[i - 1] : 0));
  return out;
}

}  // namespace cobarlab
