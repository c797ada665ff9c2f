#include "cobarlab/coalgebra.hpp"

#include <algorithm>
#include <map>

namespace cobarlab {

namespace {

TermList normalize_terms(const FieldSpec& field, TermList terms) {
  std::map<std::pair<std::size_t, std::size_t>, Scalar> acc;
  for (auto& t : terms) acc[{t.left, t.right}] += t.coeff;
  TermList out;
  for (auto& [key, v] : acc) {
    Scalar w = field.normalize(v);
    if (w != 0) out.push_back({key.first, key.second, std::move(w)});
  }
  return out;
}

using Triple = std::tuple<std::size_t, std::size_t, std::size_t>;

std::map<Triple, Scalar> clean(const FieldSpec& f, std::map<Triple, Scalar> m) {
  std::map<Triple, Scalar> out;
  for (auto& [k, v] : m) {
    Scalar w = f.normalize(v);
    if (w != 0) out.emplace(k, std::move(w));
  }
  return out;
}

}  // namespace

Coalgebra::Coalgebra(FieldSpec field, std::size_t dim, std::size_t grouplike, Vector counit,
                     std::vector<TermList> comul, std::optional<std::vector<unsigned>> grading,
                     std::optional<unsigned> truncation_bound)
    : field_(field),
      dim_(dim),
      grouplike_(grouplike),
      counit_(std::move(counit)),
      comul_(std::move(comul)),
      grading_(std::move(grading)),
      truncation_bound_(truncation_bound) {
  if (dim_ == 0) throw PresentationError("a coalgebra must have positive dimension");
  if (grouplike_ >= dim_)
    throw PresentationError("grouplike index " + std::to_string(grouplike_) + " out of range");
  if (counit_.size() != dim_)
    throw PresentationError("counit has length " + std::to_string(counit_.size()) +
                            ", expected " + std::to_string(dim_));
  if (comul_.size() != dim_)
    throw PresentationError("comultiplication lists " + std::to_string(comul_.size()) +
                            " basis vectors, expected " + std::to_string(dim_));
  if (grading_ && grading_->size() != dim_)
    throw PresentationError("grading has length " + std::to_string(grading_->size()) +
                            ", expected " + std::to_string(dim_));
  for (auto& x : counit_) x = field_.normalize(x);
  for (std::size_t t = 0; t < dim_; ++t) {
    for (const auto& term : comul_[t])
      if (term.left >= dim_ || term.right >= dim_)
        throw PresentationError("comultiplication of basis vector " + std::to_string(t) +
                                " refers to index outside 0.." + std::to_string(dim_ - 1));
    comul_[t] = normalize_terms(field_, std::move(comul_[t]));
  }
}

unsigned Coalgebra::max_weight() const {
  if (!grading_) return 0;
  return *std::max_element(grading_->begin(), grading_->end());
}

std::vector<std::size_t> Coalgebra::reduced_basis() const {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < dim_; ++t)
    if (t != grouplike_) out.push_back(t);
  return out;
}

Matrix Coalgebra::comul_matrix() const {
  std::vector<Triplet> t;
  for (std::size_t c = 0; c < dim_; ++c)
    for (const auto& term : comul_[c]) t.push_back({term.left * dim_ + term.right, c, term.coeff});
  return Matrix::from_triplets(field_, dim_ * dim_, dim_, std::move(t));
}

bool operator==(const Coalgebra& a, const Coalgebra& b) {
  if (!(a.field_ == b.field_) || a.dim_ != b.dim_ || a.grouplike_ != b.grouplike_ ||
      a.counit_ != b.counit_ || a.grading_ != b.grading_)
    return false;
  for (std::size_t t = 0; t < a.dim_; ++t) {
    const auto& x = a.comul_[t];
    const auto& y = b.comul_[t];
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k].left != y[k].left || x[k].right != y[k].right || x[k].coeff != y[k].coeff)
        return false;
  }
  return true;
}

GradedCoalgebra::GradedCoalgebra(FieldSpec field, unsigned bound, std::vector<std::size_t> dims,
                                 std::map<Key, Matrix> components)
    : field_(field), bound_(bound), dims_(std::move(dims)), components_(std::move(components)) {
  if (dims_.size() != bound_ + 1u)
    throw PresentationError("graded coalgebra with bound " + std::to_string(bound_) + " needs " +
                            std::to_string(bound_ + 1) + " component dimensions");
  if (dims_[0] != 1) throw PresentationError("degree-0 component must be one-dimensional");
  for (const auto& [key, m] : components_) {
    auto [j, p, q] = key;
    if (j > bound_ || p + q != j)
      throw PresentationError("invalid component (" + std::to_string(j) + "," + std::to_string(p) +
                              "," + std::to_string(q) + ")");
    if (m.rows() != dims_[p] * dims_[q] || m.cols() != dims_[j])
      throw PresentationError("component (" + std::to_string(j) + "," + std::to_string(p) + "," +
                              std::to_string(q) + ") has the wrong shape");
    if (!(m.field() == field_)) throw PresentationError("component over a different field");
  }
}

std::size_t GradedCoalgebra::total_dim() const {
  std::size_t n = 0;
  for (auto d : dims_) n += d;
  return n;
}

Matrix GradedCoalgebra::component(unsigned j, unsigned p, unsigned q) const {
  auto it = components_.find({j, p, q});
  if (it != components_.end()) return it->second;
  return Matrix(field_, dims_.at(p) * dims_.at(q), dims_.at(j));
}

bool operator==(const GradedCoalgebra& a, const GradedCoalgebra& b) {
  if (!(a.field_ == b.field_) || a.bound_ != b.bound_ || a.dims_ != b.dims_) return false;
  for (unsigned j = 0; j <= a.bound_; ++j)
    for (unsigned p = 0; p <= j; ++p)
      if (!(a.component(j, p, j - p) == b.component(j, p, j - p))) return false;
  return true;
}

ValidationReport validate(const Coalgebra& c) {
  ValidationReport r;
  const auto& f = c.field();
  const std::size_t n = c.dim();

  r.coassociative = true;
  for (std::size_t t = 0; t < n && r.coassociative; ++t) {
    std::map<Triple, Scalar> lhs, rhs;
    for (const auto& [i, j, x] : c.comul(t)) {
      for (const auto& [a, b, y] : c.comul(i)) lhs[{a, b, j}] += x * y;
      for (const auto& [a, b, y] : c.comul(j)) rhs[{i, a, b}] += x * y;
    }
    if (clean(f, std::move(lhs)) != clean(f, std::move(rhs))) {
      r.coassociative = false;
      r.problems.push_back("coassociativity fails on basis vector " + std::to_string(t));
    }
  }

  r.counital = true;
  for (std::size_t t = 0; t < n && r.counital; ++t) {
    Vector left = f.zeros(n), right = f.zeros(n);
    for (const auto& [i, j, x] : c.comul(t)) {
      left[j] += c.counit()[i] * x;
      right[i] += c.counit()[j] * x;
    }
    for (auto& v : left) v = f.normalize(v);
    for (auto& v : right) v = f.normalize(v);
    auto e = f.unit_vector(n, t);
    if (left != e || right != e) {
      r.counital = false;
      r.problems.push_back("counitality fails on basis vector " + std::to_string(t));
    }
  }

  const auto g = c.grouplike();
  const auto& mg = c.comul(g);
  r.coaugmented = c.counit()[g] == 1 && mg.size() == 1 && mg[0].left == g && mg[0].right == g &&
                  mg[0].coeff == 1;
  if (!r.coaugmented) r.problems.push_back("basis vector " + std::to_string(g) + " is not grouplike");

  r.cocommutative = true;
  for (std::size_t t = 0; t < n && r.cocommutative; ++t) {
    std::map<std::pair<std::size_t, std::size_t>, Scalar> terms;
    for (const auto& [i, j, x] : c.comul(t)) terms[{i, j}] = x;
    for (const auto& [i, j, x] : c.comul(t)) {
      auto it = terms.find({j, i});
      if (it == terms.end() || it->second != x) r.cocommutative = false;
    }
  }

  if (c.is_graded()) {
    for (std::size_t t = 0; t < n; ++t) {
      const bool weight_ok = (t == g) ? c.weight(t) == 0 : c.weight(t) > 0;
      if (!weight_ok) r.grading_compatible = false;
      if (c.weight(t) > 0 && c.counit()[t] != 0) r.grading_compatible = false;
      for (const auto& [i, j, x] : c.comul(t))
        if (c.weight(i) + c.weight(j) != c.weight(t)) r.grading_compatible = false;
    }
    if (!r.grading_compatible) r.problems.push_back("grading is not compatible with the structure");
  }

  if (r.coaugmented && r.counital && r.coassociative) {
    r.conilpotent = coaugmentation_filtration(c).exhaustive;
    if (!r.conilpotent) r.problems.push_back("coaugmentation filtration is not exhaustive");
  }
  return r;
}

ValidationReport validate(const GradedCoalgebra& g) { return validate(flatten(g)); }

FiltrationChain coaugmentation_filtration(const Coalgebra& c) {
  const auto& f = c.field();
  const auto g = c.grouplike();
  if (!(c.counit()[g] == 1 && c.comul(g).size() == 1 && c.comul(g)[0].left == g &&
        c.comul(g)[0].right == g && c.comul(g)[0].coeff == 1))
    throw PresentationError("coalgebra is not coaugmented at basis vector " + std::to_string(g));

  const auto reduced = c.reduced_basis();
  const std::size_t n = reduced.size();
  std::vector<std::ptrdiff_t> pos(c.dim(), -1);
  for (std::size_t k = 0; k < n; ++k) pos[reduced[k]] = static_cast<std::ptrdiff_t>(k);

  // reduced comultiplication C_+ -> C_+ (x) C_+
  std::vector<Triplet> mt;
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& [i, j, x] : c.comul(reduced[k]))
      if (pos[i] >= 0 && pos[j] >= 0)
        mt.push_back({static_cast<std::size_t>(pos[i]) * n + static_cast<std::size_t>(pos[j]), k, x});
  const Matrix reduced_comul = Matrix::from_triplets(f, n * n, n, std::move(mt));

  auto lift = [&](const SubspaceBasis& bar) {
    std::vector<Vector> v{f.unit_vector(c.dim(), g)};
    for (const auto& w : bar.vectors()) {
      Vector full = f.zeros(c.dim());
      for (std::size_t k = 0; k < n; ++k) full[reduced[k]] = w[k];
      v.push_back(std::move(full));
    }
    return SubspaceBasis(c.dim(), std::move(v));
  };

  FiltrationChain chain;
  SubspaceBasis bar(n, {});
  chain.subspaces.push_back(lift(bar));
  const Matrix id = Matrix::identity(f, n);
  while (true) {
    if (bar.dim() == n) {
      chain.exhaustive = true;
      break;
    }
    Quotient quo(f, n, bar.vectors());
    SubspaceBasis next = kernel_basis(multiply(kronecker(quo.projection(), id), reduced_comul));
    if (next.dim() == bar.dim()) break;
    bar = std::move(next);
    chain.subspaces.push_back(lift(bar));
  }
  return chain;
}

GradedCoalgebra tensor_coalgebra(unsigned m, unsigned D, const FieldSpec& field) {
  std::vector<std::size_t> dims;
  std::size_t d = 1;
  for (unsigned j = 0; j <= D; ++j) {
    dims.push_back(d);
    d *= m;
  }
  std::map<GradedCoalgebra::Key, Matrix> comp;
  for (unsigned j = 0; j <= D; ++j) {
    if (dims[j] == 0) continue;
    // row index prefix * m^q + suffix is the word itself
    for (unsigned p = 0; p <= j; ++p) comp.emplace(GradedCoalgebra::Key{j, p, j - p}, Matrix::identity(field, dims[j]));
  }
  return GradedCoalgebra(field, D, std::move(dims), std::move(comp));
}

std::vector<std::vector<unsigned>> monomial_basis(unsigned m, unsigned j) {
  std::vector<std::vector<unsigned>> out;
  if (m == 0) {
    if (j == 0) out.emplace_back();
    return out;
  }
  std::vector<unsigned> a(m, 0);
  // lexicographically decreasing exponent vectors
  auto rec = [&](auto&& self, unsigned idx, unsigned left) -> void {
    if (idx + 1 == m) {
      a[idx] = left;
      out.push_back(a);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      a[idx] = e;
      self(self, idx + 1, left - e);
    }
  };
  rec(rec, 0, j);
  return out;
}

GradedCoalgebra symmetric_coalgebra(unsigned m, unsigned D, const FieldSpec& field) {
  if (field.is_prime() && field.characteristic() <= D)
    throw UnsupportedCharacteristic("symmetric coalgebra up to degree " + std::to_string(D) +
                                    " needs characteristic 0 or above " + std::to_string(D) +
                                    ", got " + field.name());
  std::vector<std::vector<std::vector<unsigned>>> basis;
  std::vector<std::map<std::vector<unsigned>, std::size_t>> index(D + 1);
  std::vector<std::size_t> dims;
  for (unsigned j = 0; j <= D; ++j) {
    basis.push_back(monomial_basis(m, j));
    for (std::size_t k = 0; k < basis[j].size(); ++k) index[j][basis[j][k]] = k;
    dims.push_back(basis[j].size());
  }
  std::map<GradedCoalgebra::Key, std::vector<Triplet>> triplets;
  for (unsigned j = 0; j <= D; ++j)
    for (std::size_t k = 0; k < dims[j]; ++k) {
      const auto& a = basis[j][k];
      std::vector<unsigned> b(m, 0);
      // enumerate all b <= a componentwise
      auto rec = [&](auto&& self, unsigned idx, unsigned deg) -> void {
        if (idx == m) {
          std::vector<unsigned> rest(m);
          for (unsigned t = 0; t < m; ++t) rest[t] = a[t] - b[t];
          const unsigned q = j - deg;
          const auto row = index[deg].at(b) * dims[q] + index[q].at(rest);
          triplets[{j, deg, q}].push_back({row, k, Scalar(1)});
          return;
        }
        for (unsigned e = 0; e <= a[idx]; ++e) {
          b[idx] = e;
          self(self, idx + 1, deg + e);
        }
      };
      rec(rec, 0, 0);
    }
  std::map<GradedCoalgebra::Key, Matrix> comp;
  for (auto& [key, t] : triplets) {
    auto [j, p, q] = key;
    comp.emplace(key, Matrix::from_triplets(field, dims[p] * dims[q], dims[j], std::move(t)));
  }
  return GradedCoalgebra(field, D, std::move(dims), std::move(comp));
}

std::vector<Matrix> symmetric_inclusion(unsigned m, unsigned D, const FieldSpec& field) {
  std::vector<Matrix> out;
  std::size_t words = 1;
  for (unsigned j = 0; j <= D; ++j) {
    auto mons = monomial_basis(m, j);
    std::map<std::vector<unsigned>, std::size_t> index;
    for (std::size_t k = 0; k < mons.size(); ++k) index[mons[k]] = k;
    std::vector<Triplet> t;
    for (std::size_t w = 0; w < words; ++w) {
      std::vector<unsigned> content(m, 0);
      std::size_t x = w;
      for (unsigned s = 0; s < j; ++s) {
        ++content[x % m];
        x /= m;
      }
      t.push_back({w, index.at(content), Scalar(1)});
    }
    out.push_back(Matrix::from_triplets(field, words, mons.size(), std::move(t)));
    words *= m;
  }
  return out;
}

Coalgebra opposite(const Coalgebra& c) {
  std::vector<TermList> comul;
  for (std::size_t t = 0; t < c.dim(); ++t) {
    TermList terms;
    for (const auto& [i, j, x] : c.comul(t)) terms.push_back({j, i, x});
    comul.push_back(std::move(terms));
  }
  return Coalgebra(c.field(), c.dim(), c.grouplike(), c.counit(), std::move(comul), c.grading(),
                   c.truncation_bound());
}

GradedCoalgebra opposite(const GradedCoalgebra& g) {
  std::map<GradedCoalgebra::Key, Matrix> comp;
  const auto& dims = g.dims();
  for (const auto& [key, m] : g.components()) {
    auto [j, p, q] = key;
    std::vector<Triplet> t;
    for (auto& e : m.triplets()) {
      const auto a = e.row / dims[q], b = e.row % dims[q];
      t.push_back({b * dims[p] + a, e.col, e.value});
    }
    comp.emplace(GradedCoalgebra::Key{j, q, p},
                 Matrix::from_triplets(g.field(), m.rows(), m.cols(), std::move(t)));
  }
  return GradedCoalgebra(g.field(), g.bound(), dims, std::move(comp));
}

Coalgebra flatten(const GradedCoalgebra& g) {
  const auto& dims = g.dims();
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  std::vector<unsigned> grading;
  for (unsigned j = 0; j < dims.size(); ++j) {
    offset.push_back(total);
    total += dims[j];
    grading.insert(grading.end(), dims[j], j);
  }
  std::vector<TermList> comul(total);
  for (const auto& [key, m] : g.components()) {
    auto [j, p, q] = key;
    for (std::size_t col = 0; col < m.cols(); ++col)
      for (const auto& e : m.column(col))
        comul[offset[j] + col].push_back(
            {offset[p] + e.row / dims[q], offset[q] + e.row % dims[q], e.value});
  }
  Vector counit = g.field().zeros(total);
  counit[0] = 1;
  return Coalgebra(g.field(), total, 0, std::move(counit), std::move(comul), std::move(grading),
                   g.bound());
}

}  // namespace cobarlab
