#pragma once

// Root data of the hermitian symmetric pairs su(p,q), sp(n,R), so*(2n),
// so(2n-1,2), so(2n-2,2), e6(-14) and e7(-25), realized in the usual
// orthonormal (Bourbaki) coordinates with the Euclidean dot product.
//
// Simple roots are stored with the noncompact simple root beta first and the
// compact simple roots mu_i after it. Each mu carries its label number; for
// e6 the compact labels run 2..6, everywhere else 1..rank-1.

#include "unitarity/errors.hpp"
#include "unitarity/linalg.hpp"
#include "unitarity/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace unitarity {

// A vector in the ambient coordinate frame. Roots are weights that belong
// to the root system; the type is shared so the two mix freely.
struct Weight {
  Vector coords;

  Weight() = default;
  explicit Weight(std::size_t dim) : coords(dim, Rational(0)) {}
  explicit Weight(Vector c) : coords(std::move(c)) {}

  std::size_t dim() const { return coords.size(); }
  bool is_zero() const { return unitarity::is_zero(coords); }

  Weight& operator+=(const Weight& o) {
    coords = coords + o.coords;
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    coords = coords - o.coords;
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator-(Weight a) {
    for (auto& x : a.coords) x = -x;
    return a;
  }
  friend Weight operator*(const Rational& c, Weight a) {
    for (auto& x : a.coords) x *= c;
    return a;
  }
  friend bool operator==(const Weight&, const Weight&) = default;
  friend bool operator<(const Weight& a, const Weight& b) { return a.coords < b.coords; }
};

using Root = Weight;

inline Rational inner(const Weight& a, const Weight& b) { return dot(a.coords, b.coords); }

inline std::string to_string(const Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.coords.size(); ++i) {
    if (i) s += ",";
    s += to_string(w.coords[i]);
  }
  return s + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << to_string(w); }

inline Weight unit_vector(std::size_t dim, std::size_t i, Rational scale = 1) {
  Weight w(dim);
  w.coords.at(i) = scale;
  return w;
}

// <a, b> = 2(a,b)/(b,b).
inline Rational pairing(const Weight& a, const Root& b) {
  Rational bb = inner(b, b);
  if (bb == 0) throw DomainError("pairing against a zero root");
  return 2 * inner(a, b) / bb;
}

inline Weight weyl_reflect(const Weight& w, const Root& alpha) {
  return w - pairing(w, alpha) * alpha;
}

enum class FamilyTag { SU, SP, SOstar, SOodd, SOeven, E6, E7 };

struct Family {
  FamilyTag tag = FamilyTag::SU;
  int p = 0;  // SU only
  int q = 0;  // SU only
  int n = 0;  // SP, SOstar, SOodd, SOeven

  static Family su(int p, int q) { return {FamilyTag::SU, p, q, 0}; }
  static Family sp(int n) { return {FamilyTag::SP, 0, 0, n}; }
  static Family so_star(int n) { return {FamilyTag::SOstar, 0, 0, n}; }
  static Family so_odd(int n) { return {FamilyTag::SOodd, 0, 0, n}; }
  static Family so_even(int n) { return {FamilyTag::SOeven, 0, 0, n}; }
  static Family e6() { return {FamilyTag::E6, 0, 0, 0}; }
  static Family e7() { return {FamilyTag::E7, 0, 0, 0}; }

  void validate() const {
    switch (tag) {
      case FamilyTag::SU:
        if (p < 1 || q < 1) throw ParameterError("su(p,q) needs p >= 1 and q >= 1");
        break;
      case FamilyTag::SP:
        if (n < 2) throw ParameterError("sp(n,R) needs n >= 2");
        break;
      case FamilyTag::SOstar:
        if (n < 2) throw ParameterError("so*(2n) needs n >= 2");
        break;
      case FamilyTag::SOodd:
        if (n < 2) throw ParameterError("so(2n-1,2) needs n >= 2");
        break;
      case FamilyTag::SOeven:
        if (n < 3) throw ParameterError("so(2n-2,2) needs n >= 3");
        break;
      case FamilyTag::E6:
      case FamilyTag::E7:
        break;
    }
  }

  bool simply_laced() const {
    return tag != FamilyTag::SP && tag != FamilyTag::SOodd;
  }

  std::string name() const {
    switch (tag) {
      case FamilyTag::SU: return "su(" + std::to_string(p) + "," + std::to_string(q) + ")";
      case FamilyTag::SP: return "sp(" + std::to_string(n) + ",R)";
      case FamilyTag::SOstar: return "so*(" + std::to_string(2 * n) + ")";
      case FamilyTag::SOodd: return "so(" + std::to_string(2 * n - 1) + ",2)";
      case FamilyTag::SOeven: return "so(" + std::to_string(2 * n - 2) + ",2)";
      case FamilyTag::E6: return "e6";
      case FamilyTag::E7: return "e7";
    }
    return "?";
  }

  friend bool operator==(const Family&, const Family&) = default;
};

struct PositiveRoot {
  Root root;
  std::vector<int> coefficients;  // in the simple-root basis, beta first
  int height = 0;                 // sum of the coefficients
  bool compact = false;
};

// Coordinates times two as integers; every root lives in the half-integer
// lattice, so this is an exact lookup key. nullopt for anything else.
inline std::optional<std::vector<long long>> half_integer_key(const Weight& w) {
  std::vector<long long> key;
  key.reserve(w.coords.size());
  for (const auto& x : w.coords) {
    Rational d = 2 * x;
    if (!is_integer(d)) return std::nullopt;
    key.push_back(to_int64(d));
  }
  return key;
}

class RootSystem {
 public:
  explicit RootSystem(Family family) : family_(family) {
    family_.validate();
    build_simple_roots();
    build_coefficient_solver();
    build_positive_roots();
    build_distinguished_weights();
    check_invariants();
  }

  const Family& family() const { return family_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t rank() const { return simple_.size(); }

  // Simple roots, index 0 is beta, index k >= 1 is the compact root with
  // label compact_label(k).
  const std::vector<Root>& simple_roots() const { return simple_; }
  const Root& beta() const { return simple_.front(); }
  std::size_t compact_count() const { return simple_.size() - 1; }
  int compact_label(std::size_t k) const { return labels_.at(k); }
  const std::vector<int>& compact_labels() const { return compact_label_list_; }

  // Index into simple_roots() for the compact root with the given label.
  std::optional<std::size_t> simple_index_of_label(int label) const {
    for (std::size_t k = 1; k < labels_.size(); ++k)
      if (labels_[k] == label) return k;
    return std::nullopt;
  }

  std::string simple_name(std::size_t k) const {
    return k == 0 ? std::string("beta") : "mu" + std::to_string(labels_.at(k));
  }

  const std::vector<PositiveRoot>& positive_roots() const { return positive_; }
  const std::vector<std::size_t>& noncompact_indices() const { return noncompact_; }
  const std::vector<std::size_t>& compact_indices() const { return compact_; }

  std::vector<Root> noncompact_positive() const {
    std::vector<Root> out;
    for (auto i : noncompact_) out.push_back(positive_[i].root);
    return out;
  }

  const Root& gamma_r() const { return gamma_r_; }
  const Weight& rho() const { return rho_; }
  const Weight& epsilon() const { return epsilon_; }

  std::optional<std::size_t> find_positive(const Root& r) const {
    auto key = half_integer_key(r);
    if (!key) return std::nullopt;
    auto it = index_.find(*key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool is_noncompact_positive(const Root& r) const {
    auto i = find_positive(r);
    return i && !positive_[*i].compact;
  }
  bool is_root(const Root& r) const {
    return find_positive(r).has_value() || find_positive(-r).has_value();
  }

  const PositiveRoot& info(const Root& r) const {
    auto i = find_positive(r);
    if (!i) throw DomainError("not a positive root: " + to_string(r));
    return positive_[*i];
  }

  // Coefficients of w in the simple-root basis; throws if w is outside the span.
  Vector simple_coefficients(const Weight& w) const {
    Vector rhs(rank());
    for (std::size_t k = 0; k < rank(); ++k) rhs[k] = inner(simple_[k], w);
    const Matrix& inv = gram_inverse();
    Vector c(rank(), Rational(0));
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t k = 0; k < rank(); ++k) c[i] += inv[i][k] * rhs[k];
    if (from_simple_coefficients(c) != w)
      throw DomainError("weight outside the span of the roots: " + to_string(w));
    return c;
  }

  Weight from_simple_coefficients(const Vector& c) const {
    Weight w(ambient_dim_);
    for (std::size_t k = 0; k < rank(); ++k)
      if (c.at(k) != 0) w += c[k] * simple_[k];
    return w;
  }

  // Long in the sense of the maximal root length of the system.
  bool is_long(const Root& r) const { return inner(r, r) == max_length_squared_; }

  // The unique weight in the span of the roots with <w, mu_k> = targets[k-1]
  // for every compact simple root and <w, gamma_r> = gamma_target.
  Weight solve_weight(const std::vector<Rational>& compact_targets,
                      const Rational& gamma_target) const {
    if (compact_targets.size() != compact_count())
      throw ParameterError("one target per compact simple root is required");
    std::vector<Root> constraints(simple_.begin() + 1, simple_.end());
    constraints.push_back(gamma_r_);
    Vector rhs = compact_targets;
    rhs.push_back(gamma_target);
    // <alpha_k, c> from the integer Gram matrix; c is mu_1.. or gamma_r.
    std::vector<std::vector<int>> coeffs;
    for (std::size_t k = 1; k < rank(); ++k) {
      std::vector<int> c(rank(), 0);
      c[k] = 1;
      coeffs.push_back(std::move(c));
    }
    coeffs.push_back(positive_[gamma_index_].coefficients);
    Matrix a(rank(), Vector(rank()));
    for (std::size_t i = 0; i < rank(); ++i) {
      const long long norm = coefficient_inner(coeffs[i], coeffs[i]);
      for (std::size_t k = 0; k < rank(); ++k) {
        long long ip = 0;
        for (std::size_t j = 0; j < rank(); ++j) ip += simple_gram_[k][j] * coeffs[i][j];
        a[i][k] = make_rational(2 * ip, norm);
      }
    }
    auto x = solve_unique(a, rhs);
    if (!x) throw InvariantViolation("weight system is singular for " + family_.name());
    return from_simple_coefficients(*x);
  }

  // Lambda_0 from its compact labels <Lambda_0, mu_i> = n_i, normalized by
  // <Lambda_0, gamma_r> = 0. Missing labels count as zero.
  Weight resolve_weight(const std::map<int, long long>& labels) const {
    std::vector<Rational> targets(compact_count(), Rational(0));
    for (const auto& [label, value] : labels) {
      auto k = simple_index_of_label(label);
      if (!k) throw ParameterError("no compact simple root mu" + std::to_string(label) +
                                   " in " + family_.name());
      if (value < 0)
        throw ParameterError("label mu" + std::to_string(label) + " must be non-negative");
      targets[*k - 1] = Rational(value);
    }
    return solve_weight(targets, 0);
  }

  // (a, b) for weights given by integer simple-root coefficients.
  long long coefficient_inner(const std::vector<int>& a, const std::vector<int>& b) const {
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i])
        for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * simple_gram_[i][j] * b[j];
    return s;
  }

  // alpha >= base in the root order: alpha - base is a non-negative
  // integer combination of simple roots.
  bool dominates(const Root& alpha, const Root& base) const {
    auto a = find_positive(alpha), b = find_positive(base);
    if (a && b) {
      const auto& ca = positive_[*a].coefficients;
      const auto& cb = positive_[*b].coefficients;
      for (std::size_t k = 0; k < ca.size(); ++k)
        if (ca[k] < cb[k]) return false;
      return true;
    }
    Vector c = simple_coefficients(alpha - base);
    for (const auto& x : c)
      if (x < 0 || !is_integer(x)) return false;
    return true;
  }

 private:
  void build_simple_roots() {
    auto e = [this](std::size_t i) { return unit_vector(ambient_dim_, i); };
    const Rational half = make_rational(1, 2);
    switch (family_.tag) {
      case FamilyTag::SU: {
        const int p = family_.p, q = family_.q;
        ambient_dim_ = static_cast<std::size_t>(p + q);
        // 0-based: e(i) is e_{i+1}.
        simple_.push_back(e(p - 1) - e(p));
        labels_.push_back(0);
        for (int k = 1; k <= q - 1; ++k) {
          simple_.push_back(e(p + k - 1) - e(p + k));
          labels_.push_back(k);
        }
        for (int k = 1; k <= p - 1; ++k) {
          simple_.push_back(e(p - k - 1) - e(p - k));
          labels_.push_back(q - 1 + k);
        }
        break;
      }
      case FamilyTag::SP: {
        const int n = family_.n;
        ambient_dim_ = static_cast<std::size_t>(n);
        simple_.push_back(2 * e(n - 1));
        labels_.push_back(0);
        for (int i = 1; i <= n - 1; ++i) {
          simple_.push_back(e(i - 1) - e(i));
          labels_.push_back(i);
        }
        break;
      }
      case FamilyTag::SOstar: {
        const int n = family_.n;
        ambient_dim_ = static_cast<std::size_t>(n);
        simple_.push_back(e(n - 2) + e(n - 1));
        labels_.push_back(0);
        for (int i = 1; i <= n - 1; ++i) {
          simple_.push_back(e(i - 1) - e(i));
          labels_.push_back(i);
        }
        break;
      }
      case FamilyTag::SOodd: {
        const int n = family_.n;
        ambient_dim_ = static_cast<std::size_t>(n);
        simple_.push_back(e(0) - e(1));
        labels_.push_back(0);
        for (int i = 1; i <= n - 2; ++i) {
          simple_.push_back(e(i) - e(i + 1));
          labels_.push_back(i);
        }
        simple_.push_back(e(n - 1));
        labels_.push_back(n - 1);
        break;
      }
      case FamilyTag::SOeven: {
        const int n = family_.n;
        ambient_dim_ = static_cast<std::size_t>(n);
        simple_.push_back(e(0) - e(1));
        labels_.push_back(0);
        for (int i = 1; i <= n - 2; ++i) {
          simple_.push_back(e(i) - e(i + 1));
          labels_.push_back(i);
        }
        simple_.push_back(e(n - 2) + e(n - 1));
        labels_.push_back(n - 1);
        break;
      }
      case FamilyTag::E6:
      case FamilyTag::E7: {
        ambient_dim_ = 8;
        // Bourbaki simple roots alpha_1 .. alpha_7.
        Weight a1(8);
        for (std::size_t i = 0; i < 8; ++i) a1.coords[i] = (i == 0 || i == 7) ? half : -half;
        std::vector<Root> bourbaki = {a1, e(0) + e(1), e(1) - e(0), e(2) - e(1),
                                      e(3) - e(2), e(4) - e(3), e(5) - e(4)};
        if (family_.tag == FamilyTag::E6) {
          simple_.push_back(bourbaki[0]);
          labels_.push_back(0);
          for (int i = 2; i <= 6; ++i) {
            simple_.push_back(bourbaki[static_cast<std::size_t>(i - 1)]);
            labels_.push_back(i);
          }
        } else {
          simple_.push_back(bourbaki[6]);
          labels_.push_back(0);
          for (int i = 1; i <= 6; ++i) {
            simple_.push_back(bourbaki[static_cast<std::size_t>(i - 1)]);
            labels_.push_back(i);
          }
        }
        break;
      }
    }
    compact_label_list_.assign(labels_.begin() + 1, labels_.end());
  }

  void build_coefficient_solver() {
    const std::size_t r = simple_.size();
    simple_gram_.assign(r, std::vector<long long>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        Rational g = inner(simple_[i], simple_[j]);
        if (!is_integer(g)) throw InvariantViolation("simple roots with non-integer inner product");
        simple_gram_[i][j] = to_int64(g);
      }
  }

  // G^-1, built on first use: [G | I] -> [I | G^-1].
  const Matrix& gram_inverse() const {
    if (gram_inverse_) return *gram_inverse_;
    const std::size_t r = simple_.size();
    Matrix aug(r, Vector(2 * r, Rational(0)));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) aug[i][j] = simple_gram_[i][j];
      aug[i][r + i] = 1;
    }
    auto pivots = row_reduce(aug);
    if (pivots.size() != r || pivots.back() != r - 1) throw InvariantViolation("simple roots are linearly dependent");
    Matrix inv(r, Vector(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) inv[i][j] = aug[i][r + j];
    gram_inverse_ = std::move(inv);
    return *gram_inverse_;
  }

  // Root strings on integer simple-root coefficients: alpha + alpha_i is a
  // root iff q - <alpha, alpha_i^v> > 0, where q is how far alpha - k alpha_i
  // stays a root.
  void build_positive_roots() {
    const std::size_t r = simple_.size();
    std::vector<std::vector<long long>> cartan(r, std::vector<long long>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) cartan[i][j] = 2 * simple_gram_[i][j] / simple_gram_[j][j];
    std::vector<std::vector<long long>> doubled;
    for (const auto& a : simple_) doubled.push_back(*half_integer_key(a));

    std::set<std::vector<int>> known;
    std::vector<std::vector<int>> layer;
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<int> c(r, 0);
      c[i] = 1;
      known.insert(c);
      layer.push_back(c);
    }
    std::vector<std::vector<int>> all = layer;
    while (!layer.empty()) {
      std::set<std::vector<int>> next;
      for (const auto& c : layer)
        for (std::size_t i = 0; i < r; ++i) {
          long long q = 0;
          std::vector<int> down = c;
          while (down[i] > 0) {
            --down[i];
            if (!known.count(down)) break;
            ++q;
          }
          long long pair = 0;
          for (std::size_t j = 0; j < r; ++j) pair += c[j] * cartan[j][i];
          if (q - pair <= 0) continue;
          std::vector<int> up = c;
          ++up[i];
          next.insert(up);
        }
      layer.assign(next.begin(), next.end());
      for (const auto& c : layer) known.insert(c);
      all.insert(all.end(), layer.begin(), layer.end());
    }

    std::vector<PositiveRoot> pos;
    for (const auto& c : all) {
      PositiveRoot pr;
      pr.coefficients = c;
      std::vector<long long> twice(ambient_dim_, 0);
      for (std::size_t k = 0; k < r; ++k)
        if (c[k])
          for (std::size_t d = 0; d < ambient_dim_; ++d) twice[d] += c[k] * doubled[k][d];
      pr.root = Root(ambient_dim_);
      for (std::size_t d = 0; d < ambient_dim_; ++d)
        if (twice[d]) pr.root.coords[d] = make_rational(twice[d], 2);
      for (int x : c) pr.height += x;
      pr.compact = c.front() == 0;
      pos.push_back(std::move(pr));
    }
    // Deterministic order: height, then coordinates.
    std::sort(pos.begin(), pos.end(), [](const PositiveRoot& a, const PositiveRoot& b) {
      if (a.height != b.height) return a.height < b.height;
      return a.root.coords < b.root.coords;
    });
    positive_ = std::move(pos);
    for (std::size_t i = 0; i < positive_.size(); ++i) {
      index_.emplace(*half_integer_key(positive_[i].root), i);
      (positive_[i].compact ? compact_ : noncompact_).push_back(i);
      const auto& c = positive_[i].coefficients;
      max_length_squared_ = std::max(max_length_squared_, Rational(coefficient_inner(c, c)));
    }
  }

  void build_distinguished_weights() {
    // The top noncompact root: highest, and above every other one.
    std::size_t top = noncompact_.front();
    for (auto i : noncompact_)
      if (positive_[i].height > positive_[top].height) top = i;
    for (auto i : noncompact_)
      if (!dominates(positive_[top].root, positive_[i].root))
        throw InvariantViolation("noncompact positive roots have no single maximal element");
    gamma_r_ = positive_[top].root;
    gamma_index_ = top;

    rho_ = Weight(ambient_dim_);
    for (const auto& pr : positive_) rho_ += pr.root;
    rho_ = make_rational(1, 2) * rho_;

    epsilon_ = solve_weight(std::vector<Rational>(compact_count(), Rational(0)), 1);
  }

  void check_invariants() const {
    for (auto i : noncompact_)
      if (positive_[i].coefficients.front() != 1)
        throw InvariantViolation("beta coefficient differs from 1 in " + to_string(positive_[i].root));
    if (pairing(epsilon_, gamma_r_) != 1) throw InvariantViolation("<epsilon, gamma_r> != 1");
    for (std::size_t k = 1; k < simple_.size(); ++k)
      if (pairing(epsilon_, simple_[k]) != 0) throw InvariantViolation("<epsilon, mu> != 0");
  }

  Family family_;
  std::size_t ambient_dim_ = 0;
  std::vector<Root> simple_;
  std::vector<int> labels_;
  std::vector<int> compact_label_list_;
  mutable std::optional<Matrix> gram_inverse_;  // not thread-safe
  std::vector<std::vector<long long>> simple_gram_;
  std::vector<PositiveRoot> positive_;
  std::vector<std::size_t> noncompact_;
  std::vector<std::size_t> compact_;
  std::map<std::vector<long long>, std::size_t> index_;
  Rational max_length_squared_ = 0;
  Root gamma_r_;
  std::size_t gamma_index_ = 0;
  Weight rho_;
  Weight epsilon_;
};

inline RootSystem build_root_system(const Family& family) { return RootSystem(family); }

}  // namespace unitarity
