#include "cobarlab/cobar.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace cobarlab {

namespace {

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t k = next++; k < n; k = next++) fn(k);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

CobarComplex::CobarComplex(const Coalgebra& c, unsigned imax, std::optional<unsigned> jmax)
    : coalgebra_(c), imax_(imax) {
  build(jmax);
}

CobarComplex::CobarComplex(const GradedCoalgebra& g, unsigned imax, unsigned jmax)
    : coalgebra_([&] {
        if (jmax > g.bound())
          throw TruncationError("internal degree " + std::to_string(jmax) + " exceeds the truncation bound " +
                                std::to_string(g.bound()));
        return flatten(g);
      }()),
      imax_(imax) {
  build(jmax);
}

CobarComplex::CobarComplex(const Comodule& m, unsigned imax, std::optional<unsigned> jmax)
    : coalgebra_(m.base()), module_(m), imax_(imax) {
  build(jmax);
}

std::uint64_t CobarComplex::encode(const Word& w) const {
  const std::uint64_t r = std::max<std::size_t>(reduced_.size(), 1);
  std::uint64_t code = 0, scale = 1;
  for (auto x : w) {
    code += x * scale;
    scale *= r;
  }
  return code;
}

void CobarComplex::build(std::optional<unsigned> jmax_request) {
  const auto& c = coalgebra_;
  reduced_ = c.reduced_basis();
  pos_.assign(c.dim(), -1);
  for (std::size_t k = 0; k < reduced_.size(); ++k) pos_[reduced_[k]] = static_cast<std::ptrdiff_t>(k);
  reduced_comul_.resize(reduced_.size());
  for (std::size_t k = 0; k < reduced_.size(); ++k)
    for (const auto& [a, b, x] : c.comul(reduced_[k]))
      if (pos_[a] >= 0 && pos_[b] >= 0)
        reduced_comul_[k].emplace_back(static_cast<std::uint32_t>(pos_[a]), static_cast<std::uint32_t>(pos_[b]), x);

  const std::size_t mdim = module_ ? module_->dim() : 1;
  graded_ = c.is_graded() && (!module_ || module_->is_graded());
  unsigned maxw = 0, modw = 0;
  for (auto e : reduced_) maxw = std::max(maxw, c.weight(e));
  if (module_ && graded_)
    for (std::size_t m = 0; m < mdim; ++m) modw = std::max(modw, module_->weight(m));
  const unsigned needed = imax_ * maxw + modw;

  if (graded_) {
    jmax_ = jmax_request ? *jmax_request : needed;
    window_complete_ = jmax_ >= needed;
  } else {
    jmax_ = 0;
    window_complete_ = true;
  }

  // code range check: r^(imax+1) * dim M must fit
  {
    long double bound = static_cast<long double>(mdim);
    for (unsigned i = 0; i <= imax_; ++i) bound *= static_cast<long double>(std::max<std::size_t>(reduced_.size(), 1));
    if (bound > 1.8e19L) throw std::length_error("cobar complex too large to index");
  }

  if (!graded_) {
    note_ = "no internal grading; one cell per cohomological degree";
  } else if (c.truncation_bound() && jmax_ > *c.truncation_bound()) {
    note_ = "entries with j > " + std::to_string(*c.truncation_bound()) +
            " describe the truncated coalgebra, not the untruncated one";
  } else if (c.truncation_bound()) {
    note_ = "entries with j <= " + std::to_string(*c.truncation_bound()) +
            " agree with the untruncated graded coalgebra";
  } else if (!window_complete_) {
    note_ = "window j <= " + std::to_string(jmax_) + " omits nonzero internal degrees; totals are partial";
  } else {
    note_ = "window covers all internal degrees";
  }

  // enumerate words degree by degree
  const std::size_t r = reduced_.size();
  for (unsigned i = 0; i <= imax_ + 1; ++i) {
    Word w(i + (module_ ? 1 : 0));
    auto place = [&](const Word& word, unsigned j) {
      if (graded_ && j > jmax_) return;
      auto& cell = cells_[{i, graded_ ? j : 0}];
      std::uint64_t code = encode(word);
      cell.index.emplace(code, cell.words.size());
      cell.words.push_back(word);
    };
    // depth-first, slot 0 most significant, pruned by the weight window
    auto rec = [&](auto&& self, unsigned slot, unsigned weight) -> void {
      if (graded_ && weight > jmax_) return;
      if (slot == i) {
        if (!module_) {
          place(w, weight);
          return;
        }
        for (std::size_t m = 0; m < mdim; ++m) {
          w[i] = static_cast<std::uint32_t>(m);
          place(w, weight + (graded_ ? module_->weight(m) : 0));
        }
        return;
      }
      for (std::size_t k = 0; k < r; ++k) {
        w[slot] = static_cast<std::uint32_t>(k);
        self(self, slot + 1, weight + (graded_ ? c.weight(reduced_[k]) : 0));
      }
    };
    rec(rec, 0, 0);
  }
}

const CobarComplex::Cell* CobarComplex::cell(unsigned i, unsigned j) const {
  auto it = cells_.find({i, j});
  return it == cells_.end() ? nullptr : &it->second;
}

std::size_t CobarComplex::term_dim(unsigned i, unsigned j) const {
  const auto* cl = cell(i, j);
  return cl ? cl->words.size() : 0;
}

const std::vector<Word>& CobarComplex::term_basis(unsigned i, unsigned j) const {
  static const std::vector<Word> empty;
  const auto* cl = cell(i, j);
  return cl ? cl->words : empty;
}

std::optional<std::size_t> CobarComplex::index_of(unsigned i, unsigned j, const Word& w) const {
  const auto* cl = cell(i, j);
  if (!cl || w.size() != i + (module_ ? 1u : 0u)) return std::nullopt;
  auto it = cl->index.find(encode(w));
  if (it == cl->index.end()) return std::nullopt;
  return it->second;
}

std::vector<unsigned> CobarComplex::internal_degrees() const {
  std::vector<unsigned> out;
  for (unsigned j = 0; j <= jmax_; ++j) out.push_back(j);
  return out;
}

Matrix CobarComplex::differential(unsigned i, unsigned j) const {
  if (i > imax_) throw std::out_of_range("differential beyond imax");
  const auto& src = term_basis(i, j);
  const auto* tgt = cell(i + 1, j);
  const std::size_t rows = tgt ? tgt->words.size() : 0;
  std::vector<Triplet> t;
  auto row_of = [&](const Word& w) {
    auto it = tgt ? tgt->index.find(encode(w)) : decltype(tgt->index.end()){};
    if (!tgt || it == tgt->index.end())
      throw std::logic_error("cobar differential leaves its internal degree; grading is inconsistent");
    return it->second;
  };
  Word nw(i + 1 + (module_ ? 1 : 0));
  for (std::size_t col = 0; col < src.size(); ++col) {
    const Word& w = src[col];
    for (unsigned s = 0; s < i; ++s) {
      const bool negative = s % 2 == 1;
      for (const auto& [a, b, x] : reduced_comul_[w[s]]) {
        std::copy(w.begin(), w.begin() + s, nw.begin());
        nw[s] = a;
        nw[s + 1] = b;
        std::copy(w.begin() + s + 1, w.end(), nw.begin() + s + 2);
        t.push_back({row_of(nw), col, negative ? Scalar(-x) : x});
      }
    }
    if (module_) {
      const bool negative = i % 2 == 1;
      std::copy(w.begin(), w.begin() + i, nw.begin());
      for (const auto& [e, m2, x] : module_->coaction(w[i])) {
        if (pos_[e] < 0) continue;
        nw[i] = static_cast<std::uint32_t>(pos_[e]);
        nw[i + 1] = static_cast<std::uint32_t>(m2);
        t.push_back({row_of(nw), col, negative ? Scalar(-x) : x});
      }
    }
  }
  return Matrix::from_triplets(field(), rows, src.size(), std::move(t));
}

std::size_t ExtTable::at(unsigned i, unsigned j) const {
  auto it = cells.find({i, j});
  return it == cells.end() ? 0 : it->second;
}

std::vector<std::size_t> ExtTable::totals() const {
  std::vector<std::size_t> out(imax + 1, 0);
  for (const auto& [key, d] : cells)
    if (key.first <= imax) out[key.first] += d;
  return out;
}

ExtTable ExtTable::restricted(unsigned i_max, unsigned j_max) const {
  ExtTable out = *this;
  out.imax = std::min(imax, i_max);
  out.jmax = std::min(jmax, j_max);
  out.cells.clear();
  for (const auto& [key, d] : cells)
    if (key.first <= out.imax && key.second <= out.jmax) out.cells.emplace(key, d);
  if (out.jmax < jmax) out.totals_complete = false;
  return out;
}

bool operator==(const ExtTable& a, const ExtTable& b) {
  if (a.graded != b.graded || a.imax != b.imax || a.jmax != b.jmax) return false;
  auto nonzero = [](const ExtTable& t) {
    std::map<std::pair<unsigned, unsigned>, std::size_t> out;
    for (const auto& [k, d] : t.cells)
      if (d) out.emplace(k, d);
    return out;
  };
  return nonzero(a) == nonzero(b);
}

ExtTable ext_table(const CobarComplex& cx, unsigned threads) {
  std::vector<std::pair<unsigned, unsigned>> tasks;
  for (unsigned j : cx.internal_degrees())
    for (unsigned i = 0; i <= cx.imax(); ++i) tasks.emplace_back(i, j);
  std::vector<std::size_t> ranks(tasks.size());
  parallel_for(tasks.size(), threads,
               [&](std::size_t k) { ranks[k] = rank(cx.differential(tasks[k].first, tasks[k].second)); });
  std::map<std::pair<unsigned, unsigned>, std::size_t> out_rank;
  for (std::size_t k = 0; k < tasks.size(); ++k) out_rank[tasks[k]] = ranks[k];

  ExtTable t;
  t.graded = cx.graded();
  t.imax = cx.imax();
  t.jmax = cx.jmax();
  t.totals_complete = cx.window_complete();
  t.truncation_note = cx.truncation_note();
  for (const auto& [i, j] : tasks) {
    const std::size_t dim = cx.term_dim(i, j);
    if (dim == 0) continue;
    const std::size_t in = i > 0 ? out_rank[{i - 1, j}] : 0;
    t.cells[{i, j}] = dim - out_rank[{i, j}] - in;
  }
  return t;
}

std::vector<std::size_t> cobar_with_coefficients(const Comodule& m, unsigned imax, unsigned threads) {
  CobarComplex cx(m, imax);
  return ext_table(cx, threads).totals();
}

ExtAlgebra::ExtAlgebra(std::shared_ptr<const CobarComplex> cx, unsigned threads) : cx_(std::move(cx)) {
  if (cx_->has_coefficients()) throw std::invalid_argument("Ext algebra needs a complex without coefficients");
  const auto& f = cx_->field();
  std::vector<std::pair<unsigned, unsigned>> keys;
  for (unsigned j : cx_->internal_degrees())
    for (unsigned i = 0; i <= cx_->imax(); ++i) keys.emplace_back(i, j);
  std::vector<CellData> results(keys.size());
  parallel_for(keys.size(), threads, [&](std::size_t k) {
    const auto [i, j] = keys[k];
    const std::size_t n = cx_->term_dim(i, j);
    CellData d;
    d.out = cx_->differential(i, j);
    auto z = kernel_basis(d.out);
    std::vector<Vector> bdry;
    if (i > 0) bdry = image_basis(cx_->differential(i - 1, j)).vectors();
    Quotient q(f, n, bdry);
    // columns of the projected cycles; pivots pick an independent subset
    std::vector<Vector> rows(q.dim(), f.zeros(z.dim()));
    for (std::size_t c = 0; c < z.dim(); ++c) {
      auto img = q.projection().apply(z[c]);
      for (std::size_t r = 0; r < q.dim(); ++r) rows[r][c] = img[r];
    }
    auto ech = row_reduce(f, z.dim(), rows);
    for (auto c : ech.pivot_columns) d.reps.push_back(z[c]);
    std::vector<Vector> cols = d.reps;
    cols.insert(cols.end(), bdry.begin(), bdry.end());
    d.reps_and_bdry = Matrix::from_columns(f, n, cols);
    results[k] = std::move(d);
  });
  for (std::size_t k = 0; k < keys.size(); ++k) data_.emplace(keys[k], std::move(results[k]));
}

const ExtAlgebra::CellData& ExtAlgebra::data(unsigned i, unsigned j) const {
  auto it = data_.find({i, j});
  if (it == data_.end())
    throw TruncationError("cell (" + std::to_string(i) + "," + std::to_string(j) +
                          ") lies outside the computed window");
  return it->second;
}

std::size_t ExtAlgebra::dim(unsigned i, unsigned j) const { return data(i, j).reps.size(); }

const std::vector<Vector>& ExtAlgebra::representatives(unsigned i, unsigned j) const { return data(i, j).reps; }

CobarClass ExtAlgebra::basis_class(unsigned i, unsigned j, std::size_t k) const {
  return {i, j, representatives(i, j).at(k)};
}

Vector ExtAlgebra::class_coordinates(unsigned i, unsigned j, const Vector& cocycle) const {
  const auto& d = data(i, j);
  if (cocycle.size() != d.out.cols()) throw DimensionError("cochain has the wrong length for its cell");
  if (!is_zero(d.out.apply(cocycle)))
    throw NotACocycle("cochain in degree (" + std::to_string(i) + "," + std::to_string(j) + ") is not a cocycle");
  auto y = solve(d.reps_and_bdry, cocycle);
  if (!y) throw std::logic_error("cocycle outside span of representatives and coboundaries");
  return Vector(y->begin(), y->begin() + static_cast<std::ptrdiff_t>(d.reps.size()));
}

CobarClass ExtAlgebra::product(const CobarClass& a, const CobarClass& b) const {
  class_coordinates(a.i, a.j, a.cocycle);
  class_coordinates(b.i, b.j, b.cocycle);
  const unsigned i = a.i + b.i, j = a.j + b.j;
  const auto& f = cx_->field();
  const auto& da = cx_->term_basis(a.i, a.j);
  const auto& db = cx_->term_basis(b.i, b.j);
  Vector prod = f.zeros(cx_->term_dim(i, j));
  if (i > cx_->imax() || (cx_->graded() && j > cx_->jmax()))
    throw TruncationError("product degree lies outside the computed window");
  Word w;
  for (std::size_t p = 0; p < da.size(); ++p) {
    if (a.cocycle[p] == 0) continue;
    for (std::size_t q = 0; q < db.size(); ++q) {
      if (b.cocycle[q] == 0) continue;
      w = da[p];
      w.insert(w.end(), db[q].begin(), db[q].end());
      auto idx = cx_->index_of(i, j, w);
      if (!idx) throw std::logic_error("concatenated word missing from its cell");
      prod[*idx] = f.add(prod[*idx], f.mul(a.cocycle[p], b.cocycle[q]));
    }
  }
  auto coords = class_coordinates(i, j, prod);
  const auto& reps = representatives(i, j);
  Vector out = f.zeros(prod.size());
  for (std::size_t k = 0; k < reps.size(); ++k)
    for (std::size_t e = 0; e < out.size(); ++e)
      if (coords[k] != 0 && reps[k][e] != 0) out[e] = f.add(out[e], f.mul(coords[k], reps[k][e]));
  return {i, j, std::move(out)};
}

Matrix ExtAlgebra::multiplication(unsigned ia, unsigned ja, unsigned ib, unsigned jb) const {
  const auto na = dim(ia, ja), nb = dim(ib, jb), nc = dim(ia + ib, ja + jb);
  std::vector<Vector> cols;
  for (std::size_t ka = 0; ka < na; ++ka)
    for (std::size_t kb = 0; kb < nb; ++kb) {
      auto p = product(basis_class(ia, ja, ka), basis_class(ib, jb, kb));
      cols.push_back(class_coordinates(p.i, p.j, p.cocycle));
    }
  return Matrix::from_columns(cx_->field(), nc, cols);
}

CobarClass ext_product(const ExtAlgebra& ext, const CobarClass& a, const CobarClass& b) {
  return ext.product(a, b);
}

Vector reverse_words(const CobarComplex& from, const CobarComplex& to, unsigned i, unsigned j, const Vector& v) {
  const auto& words = from.term_basis(i, j);
  Vector out = to.field().zeros(to.term_dim(i, j));
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (v[k] == 0) continue;
    Word w(words[k].rbegin(), words[k].rend());
    auto idx = to.index_of(i, j, w);
    if (!idx) throw std::logic_error("reversed word missing from the opposite complex");
    out[*idx] = v[k];
  }
  return out;
}

Matrix reversal_matching(const ExtAlgebra& ext, const ExtAlgebra& ext_op, unsigned i, unsigned j) {
  std::vector<Vector> cols;
  for (const auto& rep : ext.representatives(i, j))
    cols.push_back(ext_op.class_coordinates(i, j, reverse_words(ext.complex(), ext_op.complex(), i, j, rep)));
  return Matrix::from_columns(ext.complex().field(), ext_op.dim(i, j), cols);
}

AntiIsomorphismReport check_anti_isomorphism(const ExtAlgebra& ext, const ExtAlgebra& ext_op, unsigned max_degree) {
  AntiIsomorphismReport rep;
  const auto& cx = ext.complex();
  const auto& cxo = ext_op.complex();
  const unsigned jm = cx.jmax();
  for (unsigned ia = 0; ia <= max_degree; ++ia)
    for (unsigned ib = 0; ia + ib <= max_degree; ++ib)
      for (unsigned ja = 0; ja <= jm; ++ja)
        for (unsigned jb = 0; ja + jb <= jm; ++jb) {
          const auto na = ext.dim(ia, ja), nb = ext.dim(ib, jb);
          if (na == 0 || nb == 0) continue;
          auto match = reversal_matching(ext, ext_op, ia + ib, ja + jb);
          auto table = ext.multiplication(ia, ja, ib, jb);
          for (std::size_t ka = 0; ka < na; ++ka)
            for (std::size_t kb = 0; kb < nb; ++kb) {
              auto ra = reverse_words(cx, cxo, ia, ja, ext.representatives(ia, ja)[ka]);
              auto rb = reverse_words(cx, cxo, ib, jb, ext.representatives(ib, jb)[kb]);
              auto p = ext_op.product({ib, jb, rb}, {ia, ja, ra});
              auto lhs = match.apply(table.column_vector(ka * nb + kb));
              auto rhs = ext_op.class_coordinates(p.i, p.j, p.cocycle);
              ++rep.products_checked;
              if (lhs != rhs) {
                rep.holds = false;
                rep.failures.push_back("(" + std::to_string(ia) + "," + std::to_string(ja) + ")x(" +
                                       std::to_string(ib) + "," + std::to_string(jb) + ") basis pair " +
                                       std::to_string(ka) + "," + std::to_string(kb));
              }
            }
        }
  return rep;
}

}  // namespace cobarlab
