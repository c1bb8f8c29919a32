#pragma once

// Closed-form last place and reduction level per classical family, written
// independently of the step-by-step classifier so the two can be compared.

#include "unitarity/classifier.hpp"

#include <optional>
#include <random>

namespace formulas {

using unitarity::Labels;
using unitarity::Rational;

struct Expected {
  Rational lambda0;
  int level = 0;
};

inline long long label(const Labels& l, int k) {
  auto it = l.find(k);
  return it == l.end() ? 0 : it->second;
}

// su(p,q): compact labels 1..q-1 on the q side, q..n-2 on the p side.
inline Expected su(int p, int q, const Labels& l) {
  const int n = p + q;
  int t = 0;
  for (int k = 1; k <= q - 1; ++k)
    if (label(l, k) != 0) t = k;
  int s = q - 1;
  for (int k = q; k <= n - 2; ++k)
    if (label(l, k) != 0) s = k;
  const int i = n - s - 1, j = q - t;
  return {Rational(q - t - s - 1), std::min(i, j)};
}

// sp(n,R) case I: labels 1..i-1 vanish and n_i >= 2 (i = n when all vanish).
// Case II: n_i = 1, labels i+1..i+j-1 vanish, n_{i+j} >= 1 (i+j = n if none).
inline std::optional<Expected> sp(int n, const Labels& l) {
  int i = 1;
  while (i < n && label(l, i) == 0) ++i;
  if (i == n || label(l, i) >= 2) return Expected{Rational(i - n), i};
  int next = i + 1;
  while (next < n && label(l, next) == 0) ++next;
  const int j = next - i;
  return Expected{Rational(i - n) + Rational(j) / 2, i};
}

// so*(2n): labels 1..i-1 vanish, n_i >= 2, i >= 2 (i = n when all vanish).
// Other patterns are outside the closed form.
inline std::optional<Expected> so_star(int n, const Labels& l) {
  int i = 1;
  while (i < n && label(l, i) == 0) ++i;
  if (i == n) return Expected{Rational(0), n / 2};
  if (i < 2 || label(l, i) < 2) return std::nullopt;
  return Expected{Rational(2 * (i - n)), i / 2};
}

inline std::optional<Expected> expected(const unitarity::Family& f, const Labels& l) {
  switch (f.tag) {
    case unitarity::FamilyTag::SU: return su(f.p, f.q, l);
    case unitarity::FamilyTag::SP: return sp(f.n, l);
    case unitarity::FamilyTag::SOstar: return so_star(f.n, l);
    default: return std::nullopt;
  }
}

// Random labels valid for the closed form of `f`; values in 0..3, sparse.
inline Labels random_labels(const unitarity::Family& f, std::mt19937& rng) {
  const unitarity::RootSystem rs(f);
  std::uniform_int_distribution<int> value(0, 3), coin(0, 2);
  Labels l;
  for (int k : rs.compact_labels())
    if (coin(rng) == 0) l[k] = value(rng);
  return l;
}

}  // namespace formulas
