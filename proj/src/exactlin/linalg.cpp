#include "cobarlab/linalg.hpp"

#include "eliminate.hpp"

#include <string>

namespace cobarlab {

namespace {

using detail::Eliminator;
using detail::PrimeOps;
using detail::RationalOps;

template <class Fn>
decltype(auto) with_ops(const FieldSpec& field, Fn&& fn) {
  if (field.is_prime()) return fn(PrimeOps{field.characteristic()});
  return fn(RationalOps{});
}

template <class Ops>
std::vector<typename Eliminator<Ops>::Row> rows_of(const Ops& ops, const Matrix& m) {
  std::vector<typename Eliminator<Ops>::Row> rows(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& e : m.column(c))
      rows[e.row].push_back({static_cast<std::uint32_t>(c), ops.from_scalar(e.value)});
  return rows;
}

template <class Ops>
std::vector<typename Eliminator<Ops>::Row> columns_as_rows(const Ops& ops, const Matrix& m) {
  std::vector<typename Eliminator<Ops>::Row> rows(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& e : m.column(c))
      rows[c].push_back({static_cast<std::uint32_t>(e.row), ops.from_scalar(e.value)});
  return rows;
}

template <class Ops>
std::vector<typename Eliminator<Ops>::Row> dense_as_rows(const Ops& ops,
                                                          const std::vector<Vector>& vectors) {
  std::vector<typename Eliminator<Ops>::Row> rows(vectors.size());
  for (std::size_t r = 0; r < vectors.size(); ++r)
    for (std::size_t c = 0; c < vectors[r].size(); ++c)
      if (vectors[r][c] != 0)
        rows[r].push_back({static_cast<std::uint32_t>(c), ops.from_scalar(vectors[r][c])});
  return rows;
}

}  // namespace

SubspaceBasis::SubspaceBasis(std::size_t ambient_dim, std::vector<Vector> vectors)
    : ambient_dim_(ambient_dim), vectors_(std::move(vectors)) {
  for (const auto& v : vectors_)
    if (v.size() != ambient_dim_)
      throw DimensionError("basis vector of length " + std::to_string(v.size()) +
                           " in ambient dimension " + std::to_string(ambient_dim_));
}

SubspaceBasis SubspaceBasis::span_of(const FieldSpec& field, std::size_t ambient_dim,
                                     const std::vector<Vector>& vectors) {
  std::vector<Vector> kept;
  std::size_t r = 0;
  for (const auto& v : vectors) {
    kept.push_back(v);
    auto m = Matrix::from_columns(field, ambient_dim, kept);
    std::size_t nr = rank(m);
    if (nr == r)
      kept.pop_back();
    else
      r = nr;
  }
  return SubspaceBasis(ambient_dim, std::move(kept));
}

SubspaceBasis SubspaceBasis::whole(const FieldSpec& field, std::size_t ambient_dim) {
  std::vector<Vector> v;
  for (std::size_t i = 0; i < ambient_dim; ++i) v.push_back(field.unit_vector(ambient_dim, i));
  return SubspaceBasis(ambient_dim, std::move(v));
}

Matrix SubspaceBasis::as_columns(const FieldSpec& field) const {
  return Matrix::from_columns(field, ambient_dim_, vectors_);
}

bool SubspaceBasis::contains(const FieldSpec& field, const Vector& v) const {
  return coordinates(field, v).has_value();
}

std::optional<Vector> SubspaceBasis::coordinates(const FieldSpec& field, const Vector& v) const {
  return solve(as_columns(field), v);
}

std::size_t rank(const Matrix& m) {
  return with_ops(m.field(), [&](auto ops) -> std::size_t {
    using Ops = decltype(ops);
    if (m.rows() <= m.cols()) {
      Eliminator<Ops> e(ops, m.cols(), m.cols(), rows_of(ops, m), false);
      e.run();
      return e.rank();
    }
    Eliminator<Ops> e(ops, m.rows(), m.rows(), columns_as_rows(ops, m), false);
    e.run();
    return e.rank();
  });
}

SubspaceBasis kernel_basis(const Matrix& m) {
  const auto& field = m.field();
  return with_ops(field, [&](auto ops) {
    using Ops = decltype(ops);
    const std::size_t n = m.cols();
    Eliminator<Ops> e(ops, n, n, rows_of(ops, m), true);
    e.run();
    std::vector<int> pivot_row(n, -1);
    for (const auto& [c, r] : e.pivots()) pivot_row[c] = static_cast<int>(r);
    std::vector<std::ptrdiff_t> free_index(n, -1);
    std::vector<Vector> basis;
    for (std::size_t c = 0; c < n; ++c) {
      if (pivot_row[c] >= 0) continue;
      free_index[c] = static_cast<std::ptrdiff_t>(basis.size());
      basis.push_back(field.unit_vector(n, c));
    }
    for (const auto& [c, r] : e.pivots())
      for (const auto& [col, v] : e.row(r)) {
        if (col == c) continue;
        basis[static_cast<std::size_t>(free_index[col])][c] = field.neg(e.ops().to_scalar(v));
      }
    return SubspaceBasis(n, std::move(basis));
  });
}

std::vector<std::optional<Vector>> solve_many(const Matrix& m, const std::vector<Vector>& rhs) {
  const auto& field = m.field();
  for (const auto& b : rhs)
    if (b.size() != m.rows())
      throw DimensionError("right-hand side of length " + std::to_string(b.size()) +
                           " for a system with " + std::to_string(m.rows()) + " equations");
  return with_ops(field, [&](auto ops) {
    using Ops = decltype(ops);
    const std::size_t n = m.cols();
    auto rows = rows_of(ops, m);
    for (std::size_t t = 0; t < rhs.size(); ++t)
      for (std::size_t r = 0; r < m.rows(); ++r)
        if (rhs[t][r] != 0)
          rows[r].push_back({static_cast<std::uint32_t>(n + t), ops.from_scalar(rhs[t][r])});
    Eliminator<Ops> e(ops, n, n + rhs.size(), std::move(rows), true);
    e.run();
    std::vector<bool> consistent(rhs.size(), true);
    for (std::size_t r = 0; r < e.row_count(); ++r) {
      if (!e.is_dead(r)) continue;
      for (const auto& [col, v] : e.row(r)) consistent[col - n] = false;
    }
    std::vector<std::optional<Vector>> out(rhs.size());
    for (std::size_t t = 0; t < rhs.size(); ++t)
      if (consistent[t]) out[t] = field.zeros(n);
    for (const auto& [c, r] : e.pivots())
      for (const auto& [col, v] : e.row(r))
        if (col >= n && out[col - n]) (*out[col - n])[c] = e.ops().to_scalar(v);
    return out;
  });
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  return solve_many(m, {b}).front();
}

RowEchelon row_reduce(const FieldSpec& field, std::size_t ambient_dim,
                      const std::vector<Vector>& vectors) {
  for (const auto& v : vectors)
    if (v.size() != ambient_dim) throw DimensionError("vector length differs from ambient dimension");
  return with_ops(field, [&](auto ops) {
    using Ops = decltype(ops);
    Eliminator<Ops> e(ops, ambient_dim, ambient_dim, dense_as_rows(ops, vectors), true);
    e.run();
    auto pivots = e.pivots();
    std::sort(pivots.begin(), pivots.end());
    RowEchelon out;
    out.ambient_dim = ambient_dim;
    for (const auto& [c, r] : pivots) {
      out.pivot_columns.push_back(c);
      Vector row = field.zeros(ambient_dim);
      for (const auto& [col, v] : e.row(r)) row[col] = e.ops().to_scalar(v);
      out.rows.push_back(std::move(row));
    }
    return out;
  });
}

SubspaceBasis image_basis(const Matrix& m) {
  std::vector<Vector> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column_vector(c));
  auto ech = row_reduce(m.field(), m.rows(), cols);
  return SubspaceBasis(m.rows(), std::move(ech.rows));
}

Quotient::Quotient(const FieldSpec& field, std::size_t ambient_dim,
                   const std::vector<Vector>& spanning)
    : ambient_dim_(ambient_dim), echelon_(row_reduce(field, ambient_dim, spanning)) {
  std::vector<int> pivot_of(ambient_dim, -1);
  for (std::size_t k = 0; k < echelon_.pivot_columns.size(); ++k)
    pivot_of[echelon_.pivot_columns[k]] = static_cast<int>(k);
  std::vector<std::ptrdiff_t> position(ambient_dim, -1);
  for (std::size_t j = 0; j < ambient_dim; ++j)
    if (pivot_of[j] < 0) {
      position[j] = static_cast<std::ptrdiff_t>(complement_.size());
      complement_.push_back(j);
    }
  std::vector<Triplet> proj, sec;
  for (std::size_t j = 0; j < ambient_dim; ++j) {
    if (pivot_of[j] < 0) {
      auto q = static_cast<std::size_t>(position[j]);
      proj.push_back({q, j, Scalar(1)});
      sec.push_back({j, q, Scalar(1)});
    } else {
      const auto& row = echelon_.rows[static_cast<std::size_t>(pivot_of[j])];
      for (std::size_t q = 0; q < complement_.size(); ++q)
        if (row[complement_[q]] != 0) proj.push_back({q, j, -row[complement_[q]]});
    }
  }
  projection_ = Matrix::from_triplets(field, complement_.size(), ambient_dim, std::move(proj));
  section_ = Matrix::from_triplets(field, ambient_dim, complement_.size(), std::move(sec));
}

}  // namespace cobarlab
