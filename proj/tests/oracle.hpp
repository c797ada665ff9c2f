#pragma once

// Test-only oracles. Everything here is deliberately naive and dense and
// shares nothing with the sparse elimination code it is used to check.

#include "cobarlab/field.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using cobarlab::FieldSpec;
using cobarlab::Scalar;
using Dense = std::vector<std::vector<Scalar>>;  // row-major

inline Scalar reduce(const FieldSpec& f, Scalar x) {
  x.canonicalize();
  if (!f.is_prime()) return x;
  const long p = f.characteristic();
  mpz_class n = x.get_num() % p, d = x.get_den() % p;
  if (n < 0) n += p;
  // d is invertible mod p by construction of the inputs
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), mpz_class(p).get_mpz_t());
  mpz_class r = (n * inv) % p;
  return Scalar(r);
}

/// Textbook row reduction with leftmost pivots; returns rank and leaves the
/// matrix in reduced row echelon form.
inline std::size_t rref(const FieldSpec& f, Dense& a, std::vector<std::size_t>* pivots = nullptr) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && reduce(f, a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Scalar inv = reduce(f, Scalar(1) / reduce(f, a[r][c]));
    for (auto& x : a[r]) x = reduce(f, x * inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      Scalar factor = reduce(f, a[i][c]);
      if (factor == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = reduce(f, a[i][j] - factor * a[r][j]);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

inline std::size_t rank(const FieldSpec& f, Dense a) { return rref(f, a); }

/// Null space by back substitution from the reduced echelon form.
inline Dense nullspace(const FieldSpec& f, Dense a, std::size_t cols) {
  std::vector<std::size_t> piv;
  rref(f, a, &piv);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : piv) is_pivot[c] = true;
  Dense out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols, Scalar(0));
    v[free] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = reduce(f, -a[k][free]);
    out.push_back(std::move(v));
  }
  return out;
}

/// Rank over GF(p) by enumerating every vector of the row space (tiny inputs only).
inline std::size_t brute_rank_mod_p(std::uint32_t p, const std::vector<std::vector<std::uint32_t>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t cols = n ? rows[0].size() : 0;
  std::vector<std::uint32_t> coeff(n, 0);
  std::vector<std::vector<std::uint32_t>> space;
  while (true) {
    std::vector<std::uint32_t> v(cols, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < cols; ++j) v[j] = (v[j] + coeff[i] * rows[i][j]) % p;
    bool dup = false;
    for (const auto& s : space)
      if (s == v) { dup = true; break; }
    if (!dup) space.push_back(v);
    std::size_t k = 0;
    while (k < n && ++coeff[k] == p) coeff[k++] = 0;
    if (k == n) break;
  }
  const std::size_t count = space.size();
  std::size_t r = 0;
  for (std::size_t s = 1; s < count; s *= p) ++r;
  return r;
}

inline Dense kron(const FieldSpec& f, const Dense& a, const Dense& b) {
  const std::size_t ra = a.size(), ca = ra ? a[0].size() : 0;
  const std::size_t rb = b.size(), cb = rb ? b[0].size() : 0;
  Dense out(ra * rb, std::vector<Scalar>(ca * cb, Scalar(0)));
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ca; ++j)
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l) out[i * rb + k][j * cb + l] = reduce(f, a[i][j] * b[k][l]);
  return out;
}

inline Dense matmul(const FieldSpec& f, const Dense& a, const Dense& b) {
  const std::size_t n = a.size(), m = b.size(), k = m ? b[0].size() : 0;
  Dense out(n, std::vector<Scalar>(k, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < m; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < k; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  for (auto& row : out)
    for (auto& x : row) x = reduce(f, x);
  return out;
}

inline Dense identity(std::size_t n) {
  Dense out(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

inline Dense zeros(std::size_t r, std::size_t c) {
  return Dense(r, std::vector<Scalar>(c, Scalar(0)));
}

inline Dense add(const FieldSpec& f, const Dense& a, const Dense& b) {
  Dense out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] = reduce(f, a[i][j] + b[i][j]);
  return out;
}

/// Random sparse-ish dense matrix with small entries.
inline Dense random_dense(const FieldSpec& f, std::size_t r, std::size_t c, std::mt19937_64& rng,
                          double density = 0.4) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> val(-3, 3);
  Dense out = zeros(r, c);
  for (auto& row : out)
    for (auto& x : row)
      if (coin(rng) < density) x = reduce(f, Scalar(val(rng)));
  return out;
}

inline std::size_t ipow(std::size_t b, unsigned e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

/// Ext^i dims, i <= imax, of the cobar complex C_+^{(x) i} (x) N with
/// d = sum_t (-1)^{t+1} I (x) mubar (x) I + (-1)^i I (x) nubar, built densely
/// from Kronecker products. mubar is r^2 x r; nubar is (r n) x n. Without
/// coefficients pass n = 1 and an all-zero nubar.
inline std::vector<std::size_t> cobar_totals(const FieldSpec& f, std::size_t r, const Dense& mubar,
                                             std::size_t n, const Dense& nubar, unsigned imax) {
  std::vector<std::size_t> out_rank(imax + 1, 0), dims(imax + 1);
  for (unsigned i = 0; i <= imax; ++i) {
    dims[i] = ipow(r, i) * n;
    if (r == 0) continue;
    Dense d = zeros(ipow(r, i + 1) * n, dims[i]);
    for (unsigned t = 0; t < i; ++t) {
      Dense term = kron(f, identity(ipow(r, t)), kron(f, mubar, identity(ipow(r, i - 1 - t) * n)));
      if (t % 2 == 1)
        for (auto& row : term)
          for (auto& x : row) x = reduce(f, -x);
      d = add(f, d, term);
    }
    Dense coef = kron(f, identity(ipow(r, i)), nubar);
    if (i % 2 == 1)
      for (auto& row : coef)
        for (auto& x : row) x = reduce(f, -x);
    d = add(f, d, coef);
    out_rank[i] = rank(f, d);
  }
  std::vector<std::size_t> ext(imax + 1);
  for (unsigned i = 0; i <= imax; ++i) ext[i] = dims[i] - out_rank[i] - (i ? out_rank[i - 1] : 0);
  return ext;
}

}  // namespace oracle
