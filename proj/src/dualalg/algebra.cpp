#include "cobarlab/algebra.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace cobarlab {

Algebra::Algebra(FieldSpec field, std::size_t dim, Vector unit, Matrix mult, std::optional<Vector> augmentation,
                 std::optional<std::vector<unsigned>> weights)
    : field_(std::move(field)),
      dim_(dim),
      unit_(std::move(unit)),
      mult_(std::move(mult)),
      augmentation_(std::move(augmentation)),
      weights_(std::move(weights)) {
  if (dim_ == 0) throw PresentationError("an algebra must have positive dimension");
  if (unit_.size() != dim_) throw PresentationError("unit vector has the wrong length");
  if (mult_.rows() != dim_ || mult_.cols() != dim_ * dim_)
    throw PresentationError("multiplication table must be dim x dim^2");
  if (augmentation_ && augmentation_->size() != dim_) throw PresentationError("augmentation has the wrong length");
  if (weights_ && weights_->size() != dim_) throw PresentationError("weights have the wrong length");
  for (auto& x : unit_) x = field_.normalize(x);
  if (augmentation_)
    for (auto& x : *augmentation_) x = field_.normalize(x);
}

Vector Algebra::multiply(const Vector& x, const Vector& y) const {
  Vector xy = field_.zeros(dim_ * dim_);
  for (std::size_t a = 0; a < dim_; ++a)
    if (x[a] != 0)
      for (std::size_t b = 0; b < dim_; ++b)
        if (y[b] != 0) xy[a * dim_ + b] = field_.mul(x[a], y[b]);
  return mult_.apply(xy);
}

bool operator==(const Algebra& a, const Algebra& b) {
  return a.field_ == b.field_ && a.dim_ == b.dim_ && a.unit_ == b.unit_ && a.mult_ == b.mult_ &&
         a.augmentation_ == b.augmentation_ && a.weights_ == b.weights_;
}

AlgebraReport validate(const Algebra& a) {
  const auto& f = a.field();
  const auto n = a.dim();
  const Matrix id = Matrix::identity(f, n);
  AlgebraReport r;
  r.associative = multiply(a.mult(), kronecker(a.mult(), id)) == multiply(a.mult(), kronecker(id, a.mult()));
  const Matrix u = Matrix::from_columns(f, n, {a.unit()});
  r.unital = multiply(a.mult(), kronecker(u, id)) == id && multiply(a.mult(), kronecker(id, u)) == id;
  if (a.augmentation()) {
    const Matrix eps = Matrix::from_rows(f, n, {*a.augmentation()});
    r.augmentation_multiplicative =
        multiply(eps, a.mult()) == kronecker(eps, eps) && eps.apply(a.unit()) == Vector{Scalar(1)};
  }
  return r;
}

Algebra opposite(const Algebra& a) {
  const auto n = a.dim();
  std::vector<Triplet> t;
  for (std::size_t col = 0; col < n * n; ++col)
    for (const auto& e : a.mult().column(col)) t.push_back({e.row, (col % n) * n + col / n, e.value});
  return Algebra(a.field(), n, a.unit(), Matrix::from_triplets(a.field(), n, n * n, std::move(t)), a.augmentation(),
                 a.weights());
}

Algebra dual_algebra(const Coalgebra& c) {
  const auto n = c.dim();
  std::vector<Triplet> t;
  // e^a e^b = sum_t <mu(e_t), e_b (x) e_a> e^t
  for (std::size_t s = 0; s < n; ++s)
    for (const auto& [l, r, x] : c.comul(s)) t.push_back({s, r * n + l, x});
  return Algebra(c.field(), n, c.counit(), Matrix::from_triplets(c.field(), n, n * n, std::move(t)),
                 c.field().unit_vector(n, c.grouplike()), c.grading());
}

GradedAlgebra::GradedAlgebra(FieldSpec field, unsigned bound, std::vector<std::size_t> dims,
                             std::map<Key, Matrix> components)
    : field_(std::move(field)), bound_(bound), dims_(std::move(dims)), components_(std::move(components)) {
  if (dims_.size() != bound_ + 1u)
    throw PresentationError("graded algebra with bound " + std::to_string(bound_) + " needs " +
                            std::to_string(bound_ + 1) + " component dimensions");
  if (dims_[0] != 1) throw PresentationError("degree-0 component must be one-dimensional");
  for (const auto& [key, m] : components_) {
    auto [p, q] = key;
    if (p + q > bound_)
      throw PresentationError("invalid component (" + std::to_string(p) + "," + std::to_string(q) + ")");
    if (m.rows() != dims_[p + q] || m.cols() != dims_[p] * dims_[q])
      throw PresentationError("component (" + std::to_string(p) + "," + std::to_string(q) + ") has the wrong shape");
  }
  // products with the degree-0 unit are forced
  for (unsigned q = 0; q <= bound_; ++q) {
    if (!components_.count({0, q})) components_.emplace(Key{0, q}, Matrix::identity(field_, dims_[q]));
    if (!components_.count({q, 0})) components_.emplace(Key{q, 0}, Matrix::identity(field_, dims_[q]));
  }
}

Matrix GradedAlgebra::component(unsigned p, unsigned q) const {
  auto it = components_.find({p, q});
  if (it != components_.end()) return it->second;
  return Matrix(field_, dims_.at(p + q), dims_.at(p) * dims_.at(q));
}

bool operator==(const GradedAlgebra& a, const GradedAlgebra& b) {
  if (!(a.field_ == b.field_) || a.bound_ != b.bound_ || a.dims_ != b.dims_) return false;
  for (unsigned p = 0; p <= a.bound_; ++p)
    for (unsigned q = 0; p + q <= a.bound_; ++q)
      if (!(a.component(p, q) == b.component(p, q))) return false;
  return true;
}

Algebra flatten(const GradedAlgebra& a) {
  const auto& dims = a.dims();
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  std::vector<unsigned> weights;
  for (unsigned j = 0; j < dims.size(); ++j) {
    offset.push_back(total);
    total += dims[j];
    weights.insert(weights.end(), dims[j], j);
  }
  std::vector<Triplet> t;
  for (const auto& [key, m] : a.components()) {
    auto [p, q] = key;
    for (std::size_t col = 0; col < m.cols(); ++col)
      for (const auto& e : m.column(col))
        t.push_back({offset[p + q] + e.row, (offset[p] + col / dims[q]) * total + offset[q] + col % dims[q], e.value});
  }
  return Algebra(a.field(), total, a.field().unit_vector(total, 0),
                 Matrix::from_triplets(a.field(), total, total * total, std::move(t)),
                 a.field().unit_vector(total, 0), std::move(weights));
}

AlgebraReport validate(const GradedAlgebra& a) { return validate(flatten(a)); }

GradedAlgebra graded_dual(const GradedCoalgebra& c) {
  const auto& dims = c.dims();
  std::map<GradedAlgebra::Key, Matrix> comp;
  for (unsigned p = 0; p <= c.bound(); ++p)
    for (unsigned q = 0; p + q <= c.bound(); ++q) {
      // mult_{p,q}[t, a*d_q + b] = comul_{p+q,q,p}[b*d_p + a, t]
      const Matrix src = c.component(p + q, q, p);
      std::vector<Triplet> t;
      for (std::size_t col = 0; col < src.cols(); ++col)
        for (const auto& e : src.column(col)) {
          const auto b = e.row / dims[p], aa = e.row % dims[p];
          t.push_back({col, aa * dims[q] + b, e.value});
        }
      comp.emplace(GradedAlgebra::Key{p, q},
                   Matrix::from_triplets(c.field(), dims[p + q], dims[p] * dims[q], std::move(t)));
    }
  return GradedAlgebra(c.field(), c.bound(), dims, std::move(comp));
}

GradedCoalgebra graded_dual(const GradedAlgebra& a) {
  const auto& dims = a.dims();
  std::map<GradedCoalgebra::Key, Matrix> comp;
  for (unsigned p = 0; p <= a.bound(); ++p)
    for (unsigned q = 0; p + q <= a.bound(); ++q) {
      const Matrix src = a.component(p, q);
      std::vector<Triplet> t;
      for (std::size_t col = 0; col < src.cols(); ++col) {
        const auto aa = col / dims[q], b = col % dims[q];
        for (const auto& e : src.column(col)) t.push_back({b * dims[p] + aa, e.row, e.value});
      }
      comp.emplace(GradedCoalgebra::Key{p + q, q, p},
                   Matrix::from_triplets(a.field(), dims[q] * dims[p], dims[p + q], std::move(t)));
    }
  return GradedCoalgebra(a.field(), a.bound(), dims, std::move(comp));
}

GradedAlgebra free_algebra(unsigned m, unsigned D, const FieldSpec& field) {
  std::vector<std::size_t> dims;
  std::size_t d = 1;
  for (unsigned j = 0; j <= D; ++j, d *= m) dims.push_back(d);
  std::map<GradedAlgebra::Key, Matrix> comp;
  for (unsigned p = 0; p <= D; ++p)
    for (unsigned q = 0; p + q <= D; ++q) comp.emplace(GradedAlgebra::Key{p, q}, Matrix::identity(field, dims[p + q]));
  return GradedAlgebra(field, D, std::move(dims), std::move(comp));
}

GradedAlgebra quadratic_algebra(unsigned m, const std::vector<Vector>& relations, unsigned D, const FieldSpec& field) {
  for (const auto& r : relations)
    if (r.size() != std::size_t{m} * m) throw PresentationError("relations must lie in degree 2");
  std::vector<std::size_t> pw{1};
  for (unsigned j = 1; j <= D; ++j) pw.push_back(pw.back() * m);
  std::vector<Quotient> quo;
  for (unsigned j = 0; j <= D; ++j) {
    std::vector<Vector> span;
    if (j >= 2)
      for (unsigned a = 0; a + 2 <= j; ++a) {
        const unsigned b = j - 2 - a;
        for (std::size_t u = 0; u < pw[a]; ++u)
          for (std::size_t v = 0; v < pw[b]; ++v)
            for (const auto& r : relations) {
              Vector w = field.zeros(pw[j]);
              for (std::size_t x = 0; x < r.size(); ++x)
                if (r[x] != 0) w[(u * pw[2] + x) * pw[b] + v] = r[x];
              span.push_back(std::move(w));
            }
      }
    quo.emplace_back(field, pw[j], span);
  }
  std::vector<std::size_t> dims;
  for (const auto& q : quo) dims.push_back(q.dim());
  std::map<GradedAlgebra::Key, Matrix> comp;
  for (unsigned p = 0; p <= D; ++p)
    for (unsigned q = 0; p + q <= D; ++q) {
      std::vector<Triplet> t;
      const auto& proj = quo[p + q].projection();
      for (std::size_t a = 0; a < dims[p]; ++a)
        for (std::size_t b = 0; b < dims[q]; ++b) {
          const auto word = quo[p].complement()[a] * pw[q] + quo[q].complement()[b];
          for (const auto& e : proj.column(word)) t.push_back({e.row, a * dims[q] + b, e.value});
        }
      comp.emplace(GradedAlgebra::Key{p, q}, Matrix::from_triplets(field, dims[p + q], dims[p] * dims[q], std::move(t)));
    }
  return GradedAlgebra(field, D, std::move(dims), std::move(comp));
}

namespace {

// Reduced bar complex: words over a basis of the augmentation ideal, split by weight.
class BarComplex {
 public:
  BarComplex(const Algebra& a, unsigned imax, std::optional<unsigned> jmax) : field_(a.field()), imax_(imax) {
    if (!a.augmentation()) throw std::invalid_argument("the bar complex needs an augmented algebra");
    const auto& aug = *a.augmentation();
    const auto n = a.dim();
    std::optional<std::size_t> g;
    std::size_t nonzero = 0;
    for (std::size_t t = 0; t < n; ++t)
      if (aug[t] != 0) {
        ++nonzero;
        g = t;
      }
    const bool coordinate = nonzero == 1 && aug[*g] == 1;
    graded_ = coordinate && a.is_graded();
    if (coordinate) {
      for (std::size_t t = 0; t < n; ++t)
        if (t != *g) {
          letters_.push_back(t);
          letter_weight_.push_back(graded_ ? a.weight(t) : 0);
        }
      std::vector<std::ptrdiff_t> pos(n, -1);
      for (std::size_t k = 0; k < letters_.size(); ++k) pos[letters_[k]] = static_cast<std::ptrdiff_t>(k);
      prod_.resize(letters_.size() * letters_.size());
      for (std::size_t x = 0; x < letters_.size(); ++x)
        for (std::size_t y = 0; y < letters_.size(); ++y)
          for (const auto& e : a.mult().column(letters_[x] * n + letters_[y]))
            if (pos[e.row] >= 0) prod_[x * letters_.size() + y].emplace_back(pos[e.row], e.value);
    } else {
      auto ker = kernel_basis(Matrix::from_rows(field_, n, {aug}));
      const auto r = ker.dim();
      letter_weight_.assign(r, 0);
      prod_.resize(r * r);
      for (std::size_t x = 0; x < r; ++x)
        for (std::size_t y = 0; y < r; ++y) {
          auto coords = ker.coordinates(field_, a.multiply(ker[x], ker[y]));
          if (!coords) throw std::invalid_argument("augmentation is not multiplicative");
          for (std::size_t k = 0; k < r; ++k)
            if ((*coords)[k] != 0) prod_[x * r + y].emplace_back(k, (*coords)[k]);
        }
      letters_.resize(r);
    }
    unsigned maxw = 0;
    for (auto w : letter_weight_) maxw = std::max(maxw, w);
    jmax_ = graded_ ? (jmax ? *jmax : imax * maxw) : 0;
    complete_ = !graded_ || jmax_ >= imax * maxw;

    const std::size_t r = letters_.size();
    for (unsigned i = 0; i <= imax + 1; ++i) {
      std::vector<std::size_t> w(i);
      auto rec = [&](auto&& self, unsigned slot, unsigned weight) -> void {
        if (graded_ && weight > jmax_) return;
        if (slot == i) {
          auto& cell = cells_[{i, weight}];
          cell.index.emplace(w, cell.words.size());
          cell.words.push_back(w);
          return;
        }
        for (std::size_t k = 0; k < r; ++k) {
          w[slot] = k;
          self(self, slot + 1, weight + letter_weight_[k]);
        }
      };
      rec(rec, 0, 0);
    }
  }

  bool graded() const { return graded_; }
  unsigned jmax() const { return jmax_; }
  bool complete() const { return complete_; }

  std::size_t dim(unsigned i, unsigned j) const {
    auto it = cells_.find({i, j});
    return it == cells_.end() ? 0 : it->second.words.size();
  }

  // d_i : B_i -> B_{i-1}, (a_1|...|a_i) -> sum_t (-1)^t (...|a_t a_{t+1}|...)
  Matrix boundary(unsigned i, unsigned j) const {
    auto src = cells_.find({i, j});
    auto tgt = i > 0 ? cells_.find({i - 1, j}) : cells_.end();
    const std::size_t cols = src == cells_.end() ? 0 : src->second.words.size();
    const std::size_t rows = tgt == cells_.end() ? 0 : tgt->second.words.size();
    std::vector<Triplet> t;
    const std::size_t r = letters_.size();
    for (std::size_t col = 0; col < cols; ++col) {
      const auto& w = src->second.words[col];
      for (unsigned s = 0; s + 1 < i; ++s) {
        const bool negative = s % 2 == 0;
        for (const auto& [k, x] : prod_[w[s] * r + w[s + 1]]) {
          std::vector<std::size_t> nw(w.begin(), w.begin() + s);
          nw.push_back(k);
          nw.insert(nw.end(), w.begin() + s + 2, w.end());
          auto it = tgt->second.index.find(nw);
          if (it == tgt->second.index.end()) throw std::logic_error("bar product leaves its weight");
          t.push_back({it->second, col, negative ? Scalar(-x) : x});
        }
      }
    }
    return Matrix::from_triplets(field_, rows, cols, std::move(t));
  }

 private:
  struct Cell {
    std::vector<std::vector<std::size_t>> words;
    std::map<std::vector<std::size_t>, std::size_t> index;
  };
  FieldSpec field_;
  unsigned imax_;
  unsigned jmax_ = 0;
  bool graded_ = false;
  bool complete_ = true;
  std::vector<std::size_t> letters_;
  std::vector<unsigned> letter_weight_;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> prod_;
  std::map<std::pair<unsigned, unsigned>, Cell> cells_;
};

}  // namespace

ExtTable bar_ext_table(const Algebra& a, unsigned imax, std::optional<unsigned> jmax, unsigned threads) {
  BarComplex bar(a, imax, jmax);
  std::vector<std::pair<unsigned, unsigned>> tasks;
  for (unsigned j = 0; j <= bar.jmax(); ++j)
    for (unsigned i = 1; i <= imax + 1; ++i) tasks.emplace_back(i, j);
  std::vector<std::size_t> ranks(tasks.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) ranks[k] = rank(bar.boundary(tasks[k].first, tasks[k].second));
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(threads, tasks.size()); ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  std::map<std::pair<unsigned, unsigned>, std::size_t> rk;
  for (std::size_t k = 0; k < tasks.size(); ++k) rk[tasks[k]] = ranks[k];

  ExtTable t;
  t.graded = bar.graded();
  t.imax = imax;
  t.jmax = bar.jmax();
  t.totals_complete = bar.complete();
  t.truncation_note = bar.graded() ? "bar complex split by weight" : "no internal grading; one cell per degree";
  for (unsigned j = 0; j <= bar.jmax(); ++j)
    for (unsigned i = 0; i <= imax; ++i) {
      const auto d = bar.dim(i, j);
      if (d == 0) continue;
      const std::size_t out = i > 0 ? rk[{i, j}] : 0;
      t.cells[{i, j}] = d - out - rk[{i + 1, j}];
    }
  return t;
}

ExtTable bar_ext_table(const GradedAlgebra& a, unsigned imax, unsigned jmax, unsigned threads) {
  if (jmax > a.bound())
    throw TruncationError("internal degree " + std::to_string(jmax) + " exceeds the truncation bound " +
                          std::to_string(a.bound()));
  auto t = bar_ext_table(flatten(a), imax, jmax, threads);
  t.truncation_note = "entries with j <= " + std::to_string(a.bound()) + " agree with the untruncated graded algebra";
  return t;
}

}  // namespace cobarlab
