#pragma once

// Sparse Gaussian elimination over a field given by an Ops policy.
//
// Pivot order is Markowitz-style: the active row with the fewest entries is
// taken first (ties: lowest row index); inside it the column with the fewest
// active occurrences (ties: lowest column index). Columns with index
// >= pivotable_cols are carried along (right-hand sides) but never pivoted.

#include "cobarlab/field.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

namespace cobarlab::detail {

struct RationalOps {
  using value_type = mpq_class;
  static value_type from_scalar(const Scalar& s) { return s; }
  static Scalar to_scalar(const value_type& v) { return v; }
  static bool is_zero(const value_type& v) { return sgn(v) == 0; }
  static value_type inv(const value_type& v) { return value_type(1) / v; }
  static value_type mul(const value_type& a, const value_type& b) { return a * b; }
  static value_type neg(const value_type& a) { return -a; }
  // x - f * y
  static value_type sub_mul(const value_type& x, const value_type& f, const value_type& y) {
    return x - f * y;
  }
};

struct PrimeOps {
  using value_type = std::uint32_t;
  std::uint32_t p;

  value_type from_scalar(const Scalar& s) const {
    return static_cast<value_type>(mpz_class(s.get_num() % p).get_ui());
  }
  Scalar to_scalar(value_type v) const { return Scalar(static_cast<unsigned long>(v)); }
  static bool is_zero(value_type v) { return v == 0; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((std::uint64_t{a} * b) % p);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type inv(value_type a) const {
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<value_type>(result);
  }
  value_type sub_mul(value_type x, value_type f, value_type y) const {
    std::uint64_t prod = std::uint64_t{f} * y % p;
    return static_cast<value_type>((x + p - prod) % p);
  }
};

template <class Ops>
class Eliminator {
 public:
  using T = typename Ops::value_type;
  using Row = std::vector<std::pair<std::uint32_t, T>>;

  Eliminator(Ops ops, std::size_t pivotable_cols, std::size_t total_cols, std::vector<Row> rows,
             bool gauss_jordan)
      : ops_(std::move(ops)),
        pivotable_(pivotable_cols),
        rows_(std::move(rows)),
        gauss_jordan_(gauss_jordan),
        col_rows_(total_cols),
        col_count_(total_cols, 0),
        state_(rows_.size(), State::active),
        pivot_col_(rows_.size(), -1) {
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      for (const auto& [c, v] : rows_[r]) {
        col_rows_[c].push_back(r);
        ++col_count_[c];
      }
      heap_.push({rows_[r].size(), r});
    }
  }

  void run() {
    while (!heap_.empty()) {
      auto [n, r] = heap_.top();
      heap_.pop();
      if (state_[r] != State::active || n != rows_[r].size()) continue;
      int best = -1;
      for (const auto& [c, v] : rows_[r]) {
        if (c >= pivotable_) break;
        if (best < 0 || col_count_[c] < col_count_[static_cast<std::size_t>(best)])
          best = static_cast<int>(c);
      }
      if (best < 0) {
        state_[r] = State::dead;
        for (const auto& [c, v] : rows_[r]) --col_count_[c];
        continue;
      }
      pivot_on(r, static_cast<std::uint32_t>(best));
    }
  }

  std::size_t rank() const { return pivots_.size(); }
  /// (column, row) in pivot order.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pivots() const { return pivots_; }
  const Row& row(std::size_t r) const { return rows_[r]; }
  bool is_dead(std::size_t r) const { return state_[r] == State::dead; }
  std::size_t row_count() const { return rows_.size(); }
  const Ops& ops() const { return ops_; }

 private:
  enum class State : std::uint8_t { active, pivot, dead };

  static const T* find(const Row& row, std::uint32_t c) {
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::uint32_t col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? &it->second : nullptr;
  }

  void pivot_on(std::uint32_t r, std::uint32_t c) {
    Row& prow = rows_[r];
    const T inv = ops_.inv(*find(prow, c));
    for (auto& [col, v] : prow) v = ops_.mul(v, inv);

    state_[r] = State::pivot;
    pivot_col_[r] = static_cast<int>(c);
    pivots_.push_back({c, r});
    for (const auto& [col, v] : prow) --col_count_[col];

    std::vector<std::uint32_t> targets;
    targets.swap(col_rows_[c]);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (std::uint32_t r2 : targets) {
      if (r2 == r) continue;
      if (state_[r2] == State::dead) continue;
      if (state_[r2] == State::pivot && !gauss_jordan_) continue;
      const T* f = find(rows_[r2], c);
      if (!f) continue;
      eliminate(r2, *f, prow);
    }
    col_rows_[c] = {r};
  }

  // rows_[target] -= factor * pivot_row
  void eliminate(std::uint32_t target, T factor, const Row& prow) {
    Row& trow = rows_[target];
    const bool counted = state_[target] == State::active;
    Row out;
    out.reserve(trow.size() + prow.size());
    std::size_t i = 0, j = 0;
    while (i < trow.size() || j < prow.size()) {
      if (j == prow.size() || (i < trow.size() && trow[i].first < prow[j].first)) {
        out.push_back(std::move(trow[i]));
        ++i;
      } else if (i == trow.size() || prow[j].first < trow[i].first) {
        T v = ops_.neg(ops_.mul(factor, prow[j].second));
        const auto col = prow[j].first;
        col_rows_[col].push_back(target);
        if (counted) ++col_count_[col];
        out.push_back({col, std::move(v)});
        ++j;
      } else {
        T v = ops_.sub_mul(trow[i].second, factor, prow[j].second);
        if (Ops::is_zero(v)) {
          if (counted) --col_count_[trow[i].first];
        } else {
          out.push_back({trow[i].first, std::move(v)});
        }
        ++i;
        ++j;
      }
    }
    trow.swap(out);
    if (counted) heap_.push({trow.size(), target});
  }

  struct HeapItem {
    std::size_t nnz;
    std::uint32_t row;
    bool operator>(const HeapItem& o) const {
      return nnz != o.nnz ? nnz > o.nnz : row > o.row;
    }
  };

  Ops ops_;
  std::size_t pivotable_;
  std::vector<Row> rows_;
  bool gauss_jordan_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::size_t> col_count_;
  std::vector<State> state_;
  std::vector<int> pivot_col_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pivots_;
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap_;
};

}  // namespace cobarlab::detail
