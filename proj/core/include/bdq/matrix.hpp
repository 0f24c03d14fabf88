#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bdq/errors.hpp"

namespace bdq {

// Dense square matrices over an exact field (Scalar or RatFunc). Elimination
// picks the first nonzero pivot, which is exact for these coefficient types.
template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
Matrix<T> zero_matrix(std::size_t rows, std::size_t cols) {
  return Matrix<T>(rows, std::vector<T>(cols, T(0L)));
}

template <class T>
Matrix<T> identity_matrix(std::size_t n) {
  Matrix<T> m = zero_matrix<T>(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = T(1L);
  return m;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
  if (m.empty()) return m;
  Matrix<T> t = zero_matrix<T>(m[0].size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c = zero_matrix<T>(a.size(), b.empty() ? 0 : b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < c[i].size(); ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

template <class T>
T determinant(Matrix<T> m) {
  const std::size_t n = m.size();
  T det(1L);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return T(0L);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      T f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k)
        if (!m[c][k].is_zero()) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// Gauss-Jordan inverse; nullopt when singular.
template <class T>
std::optional<Matrix<T>> inverse(Matrix<T> m) {
  const std::size_t n = m.size();
  Matrix<T> inv = identity_matrix<T>(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    T piv = m[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      if (!m[c][k].is_zero()) m[c][k] /= piv;
      if (!inv[c][k].is_zero()) inv[c][k] /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      T f = m[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        if (!m[c][k].is_zero()) m[r][k] -= f * m[c][k];
        if (!inv[c][k].is_zero()) inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

template <class T>
Matrix<T> inverse_or_throw(const Matrix<T>& m, const char* what) {
  auto inv = inverse(m);
  if (!inv) throw Error("degenerate", std::string(what) + " is singular");
  return *inv;
}

// Leading principal minors, top-left first.
template <class T>
std::vector<T> leading_minors(const Matrix<T>& m) {
  std::vector<T> out;
  for (std::size_t k = 1; k <= m.size(); ++k) {
    Matrix<T> sub(k);
    for (std::size_t i = 0; i < k; ++i) sub[i].assign(m[i].begin(), m[i].begin() + long(k));
    out.push_back(determinant(sub));
  }
  return out;
}

}  // namespace bdq
