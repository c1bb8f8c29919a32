#pragma once

// Dense exact linear algebra over a field (Rational in practice).
// Matrices are small here (at most a few dozen rows), so plain
// row-major vectors of vectors with Gaussian elimination are enough.

#include "unitarity/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace unitarity {

template <class Field>
using BasicVector = std::vector<Field>;
template <class Field>
using BasicMatrix = std::vector<std::vector<Field>>;

using Vector = BasicVector<Rational>;
using Matrix = BasicMatrix<Rational>;

template <class Field>
Field dot(const BasicVector<Field>& a, const BasicVector<Field>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Field s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class Field>
BasicVector<Field> operator+(BasicVector<Field> a, const BasicVector<Field>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector add: dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class Field>
BasicVector<Field> operator-(BasicVector<Field> a, const BasicVector<Field>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector sub: dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class Field>
BasicVector<Field> operator*(const Field& c, BasicVector<Field> a) {
  for (auto& x : a) x *= c;
  return a;
}

template <class Field>
bool is_zero(const BasicVector<Field>& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

// Reduced row echelon form in place; returns the pivot columns.
template <class Field>
std::vector<std::size_t> row_reduce(BasicMatrix<Field>& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Field inv = Field(1) / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Field f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class Field>
std::size_t rank(BasicMatrix<Field> m) {
  return row_reduce(m).size();
}

// Rank of a family of vectors (rows).
template <class Field>
std::size_t span_dimension(const std::vector<BasicVector<Field>>& vectors) {
  if (vectors.empty()) return 0;
  return rank(BasicMatrix<Field>(vectors.begin(), vectors.end()));
}

// Basis of {x : m x = 0}; `cols` is needed when m has no rows.
template <class Field>
std::vector<BasicVector<Field>> nullspace(BasicMatrix<Field> m, std::size_t cols) {
  std::vector<BasicVector<Field>> basis;
  if (m.empty()) {
    for (std::size_t j = 0; j < cols; ++j) {
      BasicVector<Field> e(cols, Field(0));
      e[j] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  }
  auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    BasicVector<Field> x(cols, Field(0));
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

// Unique solution of a x = b, or nullopt when the system is singular or
// inconsistent. Rectangular systems are accepted if the solution is unique.
template <class Field>
std::optional<BasicVector<Field>> solve_unique(const BasicMatrix<Field>& a,
                                               const BasicVector<Field>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
  if (a.empty()) return std::nullopt;
  const std::size_t cols = a.front().size();
  BasicMatrix<Field> aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  if (pivots.size() != cols) return std::nullopt;
  BasicVector<Field> x(cols, Field(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return x;
}

struct SemidefiniteReport {
  bool positive_semidefinite = false;
  std::size_t rank = 0;
  std::size_t kernel_dimension = 0;
};

// Symmetric elimination with diagonal pivots. A symmetric matrix is PSD iff
// every pivot taken is positive and, whenever the remaining diagonal is
// zero, the remaining block vanishes as well.
inline SemidefiniteReport semidefinite_test(Matrix a) {
  const std::size_t n = a.size();
  SemidefiniteReport report;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (a[i][i] < 0) return report;
      if (a[i][i] > 0) {
        pivot = i;
        break;
      }
    }
    if (!pivot) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && a[i][j] != 0) return report;
      break;
    }
    const std::size_t p = *pivot;
    done[p] = true;
    ++report.rank;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a[i][p] == 0) continue;
      Rational f = a[i][p] / a[p][p];
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) a[i][j] -= f * a[p][j];
    }
  }
  report.positive_semidefinite = true;
  report.kernel_dimension = n - report.rank;
  return report;
}

}  // namespace unitarity
