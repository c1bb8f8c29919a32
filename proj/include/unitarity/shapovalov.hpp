#pragma once

// Desk-scale check of unitarity: the contravariant form on low weight spaces
// of a Verma module for a small matrix Lie algebra, taken modulo the compact
// submodule so that what is tested is the generalized Verma module with
// k-type Lambda_0.
//
// Structure constants come from commutators of explicit matrices. Module
// elements are combinations of PBW monomials F^a v; the action of any basis
// element on a monomial is found by straightening, memoized.

#include "unitarity/classifier.hpp"
#include "unitarity/errors.hpp"
#include "unitarity/linalg.hpp"
#include "unitarity/root_system.hpp"

#include <boost/math/tools/polynomial.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace unitarity {

using Polynomial = boost::math::tools::polynomial<Rational>;
using PolyMatrix = BasicMatrix<Polynomial>;

inline bool is_zero_scalar(const Rational& x) { return x == 0; }
inline bool is_zero_scalar(const Polynomial& p) { return p.is_zero(); }

template <class Scalar>
Scalar scalar_from(const Rational& r);
template <>
inline Rational scalar_from<Rational>(const Rational& r) { return r; }
template <>
inline Polynomial scalar_from<Polynomial>(const Rational& r) {
  return r == 0 ? Polynomial() : Polynomial{r};
}

inline Matrix evaluate(const PolyMatrix& m, const Rational& x) {
  Matrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const auto& p : m[i]) out[i].push_back(p.is_zero() ? Rational(0) : p.evaluate(x));
  return out;
}

// ---------------------------------------------------------------------------
// Small algebras

class SmallAlgebra {
 public:
  using Combination = std::vector<std::pair<std::size_t, Rational>>;

  explicit SmallAlgebra(const Family& family) : rs_(family) {
    if (family.tag != FamilyTag::SU && family.tag != FamilyTag::SP)
      throw DomainError("no matrix realization for " + family.name());
    if (rs_.rank() > 3) throw ResourceError("oracle algebras are limited to rank 3");
    size_ = family.tag == FamilyTag::SU ? rs_.ambient_dim() : 2 * rs_.ambient_dim();
    const auto& pos = rs_.positive_roots();
    positive_ = pos.size();
    for (const auto& pr : pos) basis_.push_back(root_matrix(pr.root));
    for (std::size_t i = 0; i < positive_; ++i) basis_.push_back(transpose(basis_[i]));
    for (std::size_t k = 0; k < rs_.rank(); ++k) {
      auto idx = rs_.find_positive(rs_.simple_roots()[k]);
      basis_.push_back(commutator(basis_[*idx], basis_[positive_ + *idx]));
    }
    build_brackets();
    for (const auto& pr : pos) sign_.push_back(pr.compact ? 1 : -1);

    for (std::size_t i = 0; i < positive_; ++i) pbw_.push_back(i);
    std::sort(pbw_.begin(), pbw_.end(), [&](std::size_t a, std::size_t b) {
      int ha = root_height(a), hb = root_height(b);
      if (ha != hb) return ha < hb;
      return pos[a].root.coords < pos[b].root.coords;
    });
    position_.resize(positive_);
    for (std::size_t k = 0; k < positive_; ++k) position_[pbw_[k]] = k;
    check_jacobi();
    check_coroots();
  }

  const RootSystem& root_system() const { return rs_; }
  std::size_t dimension() const { return basis_.size(); }
  std::size_t positive_count() const { return positive_; }
  std::size_t matrix_size() const { return size_; }
  const Matrix& element(std::size_t x) const { return basis_.at(x); }

  std::size_t e(std::size_t root) const { return root; }
  std::size_t f(std::size_t root) const { return positive_ + root; }
  std::size_t h(std::size_t simple) const { return 2 * positive_ + simple; }
  bool is_raising(std::size_t x) const { return x < positive_; }
  bool is_lowering(std::size_t x) const { return x >= positive_ && x < 2 * positive_; }
  bool is_cartan(std::size_t x) const { return x >= 2 * positive_; }

  const Combination& bracket(std::size_t a, std::size_t b) const { return bracket_[a][b]; }
  // +1 on compact roots, -1 on noncompact ones: the adjoint of E_alpha is
  // sign * F_alpha for the real form.
  int adjoint_sign(std::size_t root) const { return sign_[root]; }

  // PBW position k -> positive root index, and back.
  std::size_t pbw_root(std::size_t k) const { return pbw_[k]; }
  std::size_t pbw_position(std::size_t root) const { return position_[root]; }

  int root_height(std::size_t root) const {
    int s = 0;
    for (const auto& c : rs_.positive_roots()[root].coefficients) s += c;
    return s;
  }

  std::string name() const { return rs_.family().name(); }

 private:
  static Matrix zero(std::size_t n) { return Matrix(n, Vector(n, Rational(0))); }
  static Matrix transpose(const Matrix& m) {
    Matrix t = zero(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) t[j][i] = m[i][j];
    return t;
  }
  static Matrix commutator(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size();
    Matrix c = zero(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (a[i][k] == 0 && b[i][k] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
      }
    return c;
  }

  // Root vector in the defining realization: E_ij for e_i - e_j in sl_n;
  // [[A, B], [0, -A^T]] blocks for sp(2n).
  Matrix root_matrix(const Root& r) const {
    Matrix m = zero(size_);
    std::vector<std::size_t> plus, minus;
    for (std::size_t i = 0; i < r.dim(); ++i) {
      if (r.coords[i] > 0) plus.push_back(i);
      if (r.coords[i] < 0) minus.push_back(i);
    }
    if (rs_.family().tag == FamilyTag::SU) {
      m[plus.at(0)][minus.at(0)] = 1;
      return m;
    }
    const std::size_t n = rs_.ambient_dim();
    if (plus.size() == 1 && minus.size() == 1) {  // e_i - e_j
      std::size_t i = plus[0], j = minus[0];
      m[i][j] = 1;
      m[n + j][n + i] = -1;
    } else if (plus.size() == 2) {  // e_i + e_j
      std::size_t i = plus[0], j = plus[1];
      m[i][n + j] = 1;
      m[j][n + i] = 1;
    } else {  // 2 e_i
      std::size_t i = plus.at(0);
      m[i][n + i] = 1;
    }
    return m;
  }

  Combination decompose(const Matrix& m) const {
    Matrix a;
    Vector b;
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = 0; j < size_; ++j) {
        Vector row;
        for (const auto& x : basis_) row.push_back(x[i][j]);
        a.push_back(std::move(row));
        b.push_back(m[i][j]);
      }
    Combination out;
    if (unitarity::is_zero(b)) return out;
    auto c = solve_unique(a, b);
    if (!c) throw InvariantViolation("commutator outside the algebra for " + name());
    for (std::size_t k = 0; k < c->size(); ++k)
      if ((*c)[k] != 0) out.emplace_back(k, (*c)[k]);
    return out;
  }

  void build_brackets() {
    const std::size_t d = basis_.size();
    bracket_.assign(d, std::vector<Combination>(d));
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a + 1; b < d; ++b) {
        bracket_[a][b] = decompose(commutator(basis_[a], basis_[b]));
        for (const auto& [k, c] : bracket_[a][b]) bracket_[b][a].emplace_back(k, -c);
      }
  }

  Vector apply(const Combination& x, std::size_t c) const {
    Vector out(basis_.size(), Rational(0));
    for (const auto& [k, a] : x)
      for (const auto& [j, b] : bracket_[k][c]) out[j] += a * b;
    return out;
  }

  void check_jacobi() const {
    const std::size_t d = basis_.size();
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a + 1; b < d; ++b)
        for (std::size_t c = b + 1; c < d; ++c) {
          Vector s = apply(bracket_[a][b], c) + apply(bracket_[b][c], a) + apply(bracket_[c][a], b);
          if (!unitarity::is_zero(s)) throw InvariantViolation("Jacobi identity fails in " + name());
        }
  }

  // [E_alpha, F_alpha] must act on any weight by its coroot pairing.
  void check_coroots() const {
    const auto& pos = rs_.positive_roots();
    std::vector<Weight> probes = {rs_.epsilon(), rs_.rho()};
    for (std::size_t i = 0; i < positive_; ++i) {
      const auto& comb = bracket_[e(i)][f(i)];
      for (const auto& w : probes) {
        Rational value = 0;
        for (const auto& [k, c] : comb) {
          if (!is_cartan(k)) throw InvariantViolation("[E,F] leaves the Cartan subalgebra");
          value += c * pairing(w, rs_.simple_roots()[k - 2 * positive_]);
        }
        if (value != pairing(w, pos[i].root)) throw InvariantViolation("[E,F] is not the coroot in " + name());
      }
    }
  }

  RootSystem rs_;
  std::size_t size_ = 0;
  std::size_t positive_ = 0;
  std::vector<Matrix> basis_;
  std::vector<std::vector<Combination>> bracket_;
  std::vector<int> sign_;
  std::vector<std::size_t> pbw_;
  std::vector<std::size_t> position_;
};

// "su11", "su21", "su22", "sp2".
inline Family oracle_family(const std::string& key) {
  if (key == "su11") return Family::su(1, 1);
  if (key == "su21") return Family::su(2, 1);
  if (key == "su22") return Family::su(2, 2);
  if (key == "sp2") return Family::sp(2);
  throw ParameterError("unknown oracle algebra '" + key + "' (expected su11, su21, su22 or sp2)");
}

// ---------------------------------------------------------------------------
// Verma module

using Monomial = std::vector<int>;  // exponents indexed by PBW position
using WeightKey = std::vector<int>;  // omega in simple-root coordinates

template <class Scalar>
class VermaModule {
 public:
  using Element = std::map<Monomial, Scalar>;

  // `highest[k]` is Lambda(H_k) on the k-th simple coroot.
  VermaModule(const SmallAlgebra& alg, std::vector<Scalar> highest)
      : alg_(&alg), highest_(std::move(highest)) {
    for (std::size_t k = 0; k < alg.positive_count(); ++k) {
      WeightKey w;
      for (int c : alg.root_system().positive_roots()[alg.pbw_root(k)].coefficients) w.push_back(c);
      root_weight_.push_back(std::move(w));
    }
  }

  const SmallAlgebra& algebra() const { return *alg_; }

  Monomial vacuum() const { return Monomial(alg_->positive_count(), 0); }

  WeightKey weight_of(const Monomial& m) const {
    WeightKey w(alg_->root_system().rank(), 0);
    for (std::size_t k = 0; k < m.size(); ++k)
      for (std::size_t j = 0; j < w.size(); ++j) w[j] += m[k] * root_weight_[k][j];
    return w;
  }

  // x . (F^m v) in the PBW basis.
  const Element& act(std::size_t x, const Monomial& m) {
    auto key = std::make_pair(x, m);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Element out = compute_act(x, m);
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  Element act(std::size_t x, const Element& v) {
    Element out;
    for (const auto& [m, c] : v) add(out, act(x, m), c);
    return out;
  }

  // PBW monomials of weight Lambda - omega.
  const std::vector<Monomial>& basis(const WeightKey& omega) {
    if (auto it = basis_.find(omega); it != basis_.end()) return it->second;
    std::vector<Monomial> out;
    Monomial m = vacuum();
    enumerate(0, omega, m, out);
    std::sort(out.begin(), out.end(), std::greater<>());
    return basis_.emplace(omega, std::move(out)).first->second;
  }

  std::size_t index_in_basis(const WeightKey& omega, const Monomial& m) {
    const auto& b = basis(omega);
    auto it = std::find(b.begin(), b.end(), m);
    if (it == b.end()) throw InvariantViolation("monomial outside its weight space");
    return static_cast<std::size_t>(it - b.begin());
  }

  BasicVector<Scalar> coordinates(const WeightKey& omega, const Element& v) {
    BasicVector<Scalar> out(basis(omega).size(), Scalar());
    for (const auto& [m, c] : v) out[index_in_basis(omega, m)] = c;
    return out;
  }

  // Gram matrix of the contravariant form on the weight space, with
  // <v, v> = 1 and <F_a u, w> = sign(a) <u, E_a w>.
  const BasicMatrix<Scalar>& gram(const WeightKey& omega) {
    if (auto it = gram_.find(omega); it != gram_.end()) return it->second;
    const auto b = basis(omega);
    BasicMatrix<Scalar> g(b.size(), BasicVector<Scalar>(b.size(), Scalar()));
    if (std::all_of(omega.begin(), omega.end(), [](int c) { return c == 0; })) {
      g[0][0] = scalar_from<Scalar>(1);
    } else {
      for (std::size_t i = 0; i < b.size(); ++i) {
        std::size_t p = first_position(b[i]);
        std::size_t root = alg_->pbw_root(p);
        Monomial rest = b[i];
        --rest[p];
        WeightKey lower = minus(omega, root_weight_[p]);
        const auto& g_lower = gram(lower);
        std::size_t r = index_in_basis(lower, rest);
        for (std::size_t j = 0; j < b.size(); ++j) {
          Scalar s = Scalar();
          for (const auto& [m, c] : act(alg_->e(root), b[j])) s += c * g_lower[r][index_in_basis(lower, m)];
          if (alg_->adjoint_sign(root) < 0) s = Scalar() - s;
          g[i][j] = s;
        }
      }
      for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
          if (!is_zero_scalar(g[i][j] - g[j][i])) throw InvariantViolation("contravariant form is not symmetric");
    }
    return gram_.emplace(omega, std::move(g)).first->second;
  }

  // Matrix of E_simple from weight omega to weight omega - alpha_simple.
  BasicMatrix<Scalar> raising_matrix(std::size_t simple, const WeightKey& omega) {
    auto root = alg_->root_system().find_positive(alg_->root_system().simple_roots()[simple]);
    WeightKey upper = minus(omega, root_weight_[alg_->pbw_position(*root)]);
    const auto b = basis(omega);
    const auto& up = basis(upper);
    BasicMatrix<Scalar> a(up.size(), BasicVector<Scalar>(b.size(), Scalar()));
    for (std::size_t j = 0; j < b.size(); ++j)
      for (const auto& [m, c] : act(alg_->e(*root), b[j])) a[index_in_basis(upper, m)][j] = c;
    return a;
  }

  static WeightKey minus(WeightKey a, const WeightKey& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
  }

  std::size_t pbw_position_weight_index(std::size_t simple) const {
    auto root = alg_->root_system().find_positive(alg_->root_system().simple_roots()[simple]);
    return alg_->pbw_position(*root);
  }
  const WeightKey& root_weight(std::size_t position) const { return root_weight_[position]; }

 private:
  static void add(Element& out, const Element& v, const Scalar& c) {
    for (const auto& [m, a] : v) {
      Scalar& slot = out[m];
      slot += a * c;
      if (is_zero_scalar(slot)) out.erase(m);
    }
  }

  static std::size_t first_position(const Monomial& m) {
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m[k] > 0) return k;
    return m.size();
  }

  void enumerate(std::size_t k, const WeightKey& left, Monomial& m, std::vector<Monomial>& out) {
    if (std::all_of(left.begin(), left.end(), [](int c) { return c == 0; })) {
      out.push_back(m);
      return;
    }
    if (k == m.size()) return;
    WeightKey rest = left;
    for (int a = 0;; ++a) {
      m[k] = a;
      enumerate(k + 1, rest, m, out);
      rest = minus(rest, root_weight_[k]);
      if (std::any_of(rest.begin(), rest.end(), [](int c) { return c < 0; })) break;
    }
    m[k] = 0;
  }

  Element compute_act(std::size_t x, const Monomial& m) {
    const std::size_t p = first_position(m);
    if (p == m.size()) {  // on v
      if (alg_->is_raising(x)) return {};
      if (alg_->is_cartan(x)) {
        Scalar value = highest_[x - 2 * alg_->positive_count()];
        if (is_zero_scalar(value)) return {};
        return {{m, value}};
      }
      Monomial out = m;
      ++out[alg_->pbw_position(x - alg_->positive_count())];
      return {{out, scalar_from<Scalar>(1)}};
    }
    if (alg_->is_lowering(x)) {
      std::size_t q = alg_->pbw_position(x - alg_->positive_count());
      if (q <= p) {
        Monomial out = m;
        ++out[q];
        return {{out, scalar_from<Scalar>(1)}};
      }
    }
    // x F_b m' = F_b (x m') + [x, F_b] m'
    const std::size_t b = alg_->f(alg_->pbw_root(p));
    Monomial rest = m;
    --rest[p];
    Element tail = act(x, rest);
    Element out = act(b, tail);
    for (const auto& [y, c] : alg_->bracket(x, b)) add(out, act(y, rest), scalar_from<Scalar>(c));
    return out;
  }

  const SmallAlgebra* alg_;
  std::vector<Scalar> highest_;
  std::vector<WeightKey> root_weight_;
  std::map<std::pair<std::size_t, Monomial>, Element> memo_;
  std::map<WeightKey, std::vector<Monomial>> basis_;
  std::map<WeightKey, BasicMatrix<Scalar>> gram_;
};

// ---------------------------------------------------------------------------
// Oracle

struct GramMatrix {
  WeightKey omega;
  std::vector<Monomial> basis;
  Matrix entries;
};

struct WeightVerdict {
  WeightKey omega;
  std::size_t dimension = 0;  // of the generalized Verma module at this weight
  SemidefiniteReport psd;
  std::size_t singular = 0;  // new highest weight vectors in the radical
};

struct ScanVerdict {
  Rational lambda;
  bool positive_semidefinite = true;
  std::optional<WeightKey> first_negative;
  std::vector<WeightVerdict> weights;
};

// Symbolic in lambda: Lambda = Lambda_0 + lambda eps with Lambda_0 fixed by
// its compact labels. Weights are scanned up to beta-degree `max_degree`.
class ShapovalovOracle {
 public:
  ShapovalovOracle(const Family& family, const Labels& labels, int max_degree = 3)
      : alg_(std::make_unique<SmallAlgebra>(family)), labels_(labels), max_degree_(max_degree) {
    const RootSystem& rs = alg_->root_system();
    validate_labels(rs, labels);
    if (max_degree < 0) throw ParameterError("negative degree bound");
    if (max_degree > 4) throw ResourceError("oracle degree bound is at most 4");
    lambda0_ = rs.resolve_weight(labels);
    std::vector<Polynomial> highest;
    for (const auto& a : rs.simple_roots()) {
      Rational c = pairing(lambda0_, a), l = pairing(rs.epsilon(), a);
      Polynomial p{c, l};
      p.normalize();
      highest.push_back(std::move(p));
    }
    module_ = std::make_unique<VermaModule<Polynomial>>(*alg_, std::move(highest));
    build_weight_list();
  }

  const SmallAlgebra& algebra() const { return *alg_; }
  const Labels& labels() const { return labels_; }
  int max_degree() const { return max_degree_; }
  const std::vector<WeightKey>& weights() const { return weights_; }

  std::string weight_name(const WeightKey& omega) const {
    Vector v(omega.begin(), omega.end());
    return simple_expansion(alg_->root_system(), v);
  }

  int degree(const WeightKey& omega) const { return omega.at(0); }

  const std::vector<Monomial>& basis(const WeightKey& omega) { return module_->basis(omega); }

  const PolyMatrix& gram_symbolic(const WeightKey& omega) {
    check_degree(omega);
    return module_->gram(omega);
  }

  GramMatrix gram(const WeightKey& omega, const Rational& lambda) {
    check_degree(omega);
    return {omega, module_->basis(omega), evaluate(module_->gram(omega), lambda)};
  }

  // Coordinates of the compact submodule at this weight (rows, reduced).
  const Matrix& compact_submodule(const WeightKey& omega) {
    if (auto it = compact_.find(omega); it != compact_.end()) return it->second;
    const RootSystem& rs = alg_->root_system();
    Matrix rows;
    for (std::size_t k = 1; k < rs.rank(); ++k) {
      const int n = static_cast<int>(to_int64(pairing(lambda0_, rs.simple_roots()[k])));
      const std::size_t pos = module_->pbw_position_weight_index(k);
      WeightKey rest = omega;
      for (int i = 0; i <= n; ++i) rest = VermaModule<Polynomial>::minus(rest, module_->root_weight(pos));
      if (std::any_of(rest.begin(), rest.end(), [](int c) { return c < 0; })) continue;
      Monomial seed = module_->vacuum();
      seed[pos] = n + 1;
      for (const auto& u : module_->basis(rest)) {
        // u F_mu^{n+1} v, applying u's factors right to left.
        VermaModule<Polynomial>::Element v = {{seed, scalar_from<Polynomial>(1)}};
        for (std::size_t p = u.size(); p-- > 0;)
          for (int r = 0; r < u[p]; ++r) v = module_->act(alg_->f(alg_->pbw_root(p)), v);
        auto coords = module_->coordinates(omega, v);
        Vector row;
        for (const auto& c : coords) row.push_back(c.is_zero() ? Rational(0) : c.evaluate(Rational(0)));
        rows.push_back(std::move(row));
      }
    }
    if (!rows.empty()) {
      auto pivots = row_reduce(rows);
      rows.resize(pivots.size());
    }
    return compact_.emplace(omega, std::move(rows)).first->second;
  }

  // Basis monomials spanning a complement of the compact submodule.
  std::vector<std::size_t> quotient_indices(const WeightKey& omega) {
    const Matrix& c = compact_submodule(omega);
    const std::size_t n = module_->basis(omega).size();
    std::vector<bool> pivot(n, false);
    for (const auto& row : c)
      for (std::size_t j = 0; j < n; ++j)
        if (row[j] != 0) {
          pivot[j] = true;
          break;
        }
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n; ++j)
      if (!pivot[j]) out.push_back(j);
    return out;
  }

  // Form on the generalized Verma module at this weight, symbolic in lambda.
  PolyMatrix quotient_gram_symbolic(const WeightKey& omega) {
    const auto& g = gram_symbolic(omega);
    auto idx = quotient_indices(omega);
    PolyMatrix q(idx.size(), std::vector<Polynomial>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) q[i][j] = g[idx[i]][idx[j]];
    return q;
  }

  // Determinant of the quotient form as a polynomial in lambda.
  Polynomial quotient_determinant(const WeightKey& omega) {
    return determinant(quotient_gram_symbolic(omega));
  }

  // Vectors x at this weight with <x, .> = 0 and every simple E sending x
  // into the compact submodule, modulo the compact submodule: the missing
  // highest weight vectors.
  std::vector<Vector> singular_vectors(const WeightKey& omega, const Rational& lambda) {
    const RootSystem& rs = alg_->root_system();
    const std::size_t n = module_->basis(omega).size();
    Matrix constraints = evaluate(gram_symbolic(omega), lambda);
    for (std::size_t k = 0; k < rs.rank(); ++k) {
      WeightKey upper = VermaModule<Polynomial>::minus(omega, module_->root_weight(module_->pbw_position_weight_index(k)));
      if (std::any_of(upper.begin(), upper.end(), [](int c) { return c < 0; })) continue;
      Matrix a = evaluate(module_->raising_matrix(k, omega), lambda);
      for (const auto& y : annihilator(compact_submodule(upper), module_->basis(upper).size())) {
        Vector row(n, Rational(0));
        for (std::size_t i = 0; i < y.size(); ++i)
          if (y[i] != 0)
            for (std::size_t j = 0; j < n; ++j) row[j] += y[i] * a[i][j];
        constraints.push_back(std::move(row));
      }
    }
    auto solutions = nullspace(constraints, n);
    // Reduce modulo the compact submodule.
    const Matrix& c = compact_submodule(omega);
    Matrix stacked = c;
    std::vector<Vector> out;
    for (auto& x : solutions) {
      stacked.push_back(x);
      if (rank(stacked) > c.size() + out.size()) {
        out.push_back(std::move(x));
      } else {
        stacked.pop_back();
      }
    }
    for (const auto& x : out) verify_singular(omega, x, lambda);
    return out;
  }

  WeightVerdict weight_verdict(const WeightKey& omega, const Rational& lambda) {
    WeightVerdict v;
    v.omega = omega;
    Matrix q = evaluate(quotient_gram_symbolic(omega), lambda);
    v.dimension = q.size();
    v.psd = semidefinite_test(q);
    v.singular = v.psd.kernel_dimension == 0 && v.psd.positive_semidefinite ? 0 : singular_vectors(omega, lambda).size();
    return v;
  }

  ScanVerdict scan(const Rational& lambda) {
    ScanVerdict s;
    s.lambda = lambda;
    for (const auto& omega : weights_) {
      auto v = weight_verdict(omega, lambda);
      if (!v.psd.positive_semidefinite && s.positive_semidefinite) {
        s.positive_semidefinite = false;
        s.first_negative = omega;
      }
      s.weights.push_back(std::move(v));
    }
    return s;
  }

 private:
  void check_degree(const WeightKey& omega) const {
    if (degree(omega) > max_degree_)
      throw ResourceError("weight " + weight_name(omega) + " exceeds degree bound " + std::to_string(max_degree_));
  }

  // Rows y spanning {y : y . c = 0 for every row c}; a vector lies in the
  // row span iff every such y kills it.
  static std::vector<Vector> annihilator(const Matrix& rows, std::size_t n) {
    return nullspace(rows, n);
  }

  void verify_singular(const WeightKey& omega, const Vector& x, const Rational& lambda) {
    const RootSystem& rs = alg_->root_system();
    Matrix g = evaluate(gram_symbolic(omega), lambda);
    for (const auto& row : g)
      if (dot(row, x) != 0) throw InvariantViolation("singular vector not in the radical");
    for (std::size_t k = 0; k < rs.rank(); ++k) {
      WeightKey upper = VermaModule<Polynomial>::minus(omega, module_->root_weight(module_->pbw_position_weight_index(k)));
      if (std::any_of(upper.begin(), upper.end(), [](int c) { return c < 0; })) continue;
      Matrix a = evaluate(module_->raising_matrix(k, omega), lambda);
      Vector image(a.size(), Rational(0));
      for (std::size_t i = 0; i < a.size(); ++i) image[i] = dot(a[i], x);
      Matrix stacked = compact_submodule(upper);
      std::size_t before = stacked.size();
      stacked.push_back(image);
      if (rank(stacked) != before) throw InvariantViolation("singular vector not raised into the compact submodule");
    }
  }

  static Polynomial determinant(PolyMatrix m) {
    // Fraction-free elimination (Bareiss) keeps entries polynomial.
    const std::size_t n = m.size();
    if (n == 0) return Polynomial{Rational(1)};
    Polynomial sign{Rational(1)}, prev{Rational(1)};
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (m[k][k].is_zero()) {
        std::size_t r = k + 1;
        while (r < n && m[r][k].is_zero()) ++r;
        if (r == n) return Polynomial();
        std::swap(m[k], m[r]);
        sign = Polynomial() - sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j) {
          Polynomial num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
          m[i][j] = num / prev;
        }
      prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
  }

  // Weights with beta-degree 1..max_degree whose compact coefficients stay
  // within degree * (coefficient in gamma_r) + depth of the k-type.
  void build_weight_list() {
    const RootSystem& rs = alg_->root_system();
    Weight low = lambda0_;
    for (bool moved = true; moved;) {
      moved = false;
      for (std::size_t k = 1; k < rs.rank(); ++k)
        if (pairing(low, rs.simple_roots()[k]) > 0) {
          low = weyl_reflect(low, rs.simple_roots()[k]);
          moved = true;
        }
    }
    Vector depth = rs.simple_coefficients(lambda0_ - low);
    Vector top = rs.simple_coefficients(rs.gamma_r());
    for (int d = 1; d <= max_degree_; ++d) {
      std::vector<int> cap(rs.rank(), 0);
      for (std::size_t k = 1; k < rs.rank(); ++k) cap[k] = static_cast<int>(to_int64(Rational(d) * top[k] + depth[k]));
      WeightKey w(rs.rank(), 0);
      w[0] = d;
      fill(1, cap, w);
    }
  }

  void fill(std::size_t k, const std::vector<int>& cap, WeightKey& w) {
    if (k == w.size()) {
      if (!quotient_indices(w).empty()) weights_.push_back(w);
      return;
    }
    for (int c = 0; c <= cap[k]; ++c) {
      w[k] = c;
      fill(k + 1, cap, w);
    }
    w[k] = 0;
  }

  std::unique_ptr<SmallAlgebra> alg_;
  Labels labels_;
  int max_degree_;
  Weight lambda0_;
  std::unique_ptr<VermaModule<Polynomial>> module_;
  std::map<WeightKey, Matrix> compact_;
  std::vector<WeightKey> weights_;
};

// ---------------------------------------------------------------------------
// Free-function entry points

inline GramMatrix gram_matrix(const Family& family, const Labels& labels, const Rational& lambda,
                              const WeightKey& omega, int max_degree = 3) {
  ShapovalovOracle oracle(family, labels, max_degree);
  return oracle.gram(omega, lambda);
}

inline std::vector<ScanVerdict> positivity_scan(const Family& family, const Labels& labels,
                                                const std::vector<Rational>& lambdas, int max_degree = 3) {
  ShapovalovOracle oracle(family, labels, max_degree);
  std::vector<ScanVerdict> out;
  for (const auto& l : lambdas) out.push_back(oracle.scan(l));
  return out;
}

inline std::vector<Vector> singular_vector_search(const Family& family, const Labels& labels,
                                                  const Rational& lambda, const WeightKey& omega,
                                                  int max_degree = 3) {
  ShapovalovOracle oracle(family, labels, max_degree);
  return oracle.singular_vectors(omega, lambda);
}

// ---------------------------------------------------------------------------
// Agreement with the classifier

struct ConcordanceRow {
  Rational lambda;
  Verdict verdict;
  bool positive_semidefinite = false;
  std::optional<WeightKey> first_negative;
  std::vector<std::pair<WeightKey, std::size_t>> singular;  // weights carrying new highest weight vectors
  std::vector<WeightKey> expected;  // missing omega_q at this lambda within the degree bound
  bool agree = false;
};

struct Concordance {
  std::string algebra;
  Labels labels;
  std::vector<ConcordanceRow> rows;
  bool agree() const {
    return std::all_of(rows.begin(), rows.end(), [](const ConcordanceRow& r) { return r.agree; });
  }
};

// lambda_0 + k lambda_s / 2 for k = 0 .. 2u + 2.
inline std::vector<Rational> default_oracle_lambdas(const ClassificationResult& c) {
  std::vector<Rational> out;
  for (int k = 0; k <= 2 * c.reduction_level; ++k) out.push_back(c.lambda0 + Rational(k) * c.lambda_s / 2);
  return out;
}

inline Concordance concordance(ShapovalovOracle& oracle, const ClassificationResult& c,
                               const std::vector<Rational>& lambdas) {
  const RootSystem& rs = oracle.algebra().root_system();
  Concordance out;
  out.algebra = oracle.algebra().name();
  out.labels = oracle.labels();
  for (const auto& lambda : lambdas) {
    ConcordanceRow row;
    row.lambda = lambda;
    row.verdict = unitarity_verdict(c, lambda);
    auto scan = oracle.scan(lambda);
    row.positive_semidefinite = scan.positive_semidefinite;
    row.first_negative = scan.first_negative;
    for (const auto& w : scan.weights)
      if (w.singular) row.singular.emplace_back(w.omega, w.singular);
    for (const auto& m : c.missing) {
      if (m.lambda_q != lambda) continue;
      Vector coeffs = rs.simple_coefficients(m.omega_q);
      WeightKey key;
      for (const auto& x : coeffs) key.push_back(static_cast<int>(to_int64(x)));
      if (key[0] <= oracle.max_degree()) row.expected.push_back(key);
    }
    std::vector<WeightKey> found;
    for (const auto& [w, n] : row.singular) found.push_back(w);
    row.agree = row.positive_semidefinite == row.verdict.unitary() && found == row.expected;
    out.rows.push_back(std::move(row));
  }
  return out;
}

// <F^n v, F^n v> on su(1,1) against (-1)^n n! lambda (lambda - 1) ... (lambda - n + 1).
struct RankOneCheck {
  int degree = 0;
  Polynomial computed;
  Polynomial expected;
  bool pass = false;
};

inline std::vector<RankOneCheck> rank_one_check(ShapovalovOracle& oracle) {
  if (oracle.algebra().root_system().rank() != 1) throw DomainError("rank-one check needs su(1,1)");
  std::vector<RankOneCheck> out;
  for (int n = 1; n <= oracle.max_degree(); ++n) {
    RankOneCheck r;
    r.degree = n;
    r.computed = oracle.gram_symbolic({n})[0][0];
    Polynomial e{Rational(n % 2 == 0 ? 1 : -1)};
    for (int j = 0; j < n; ++j) {
      e = e * Polynomial{Rational(-j), Rational(1)};
      e = e * Polynomial{Rational(j + 1)};
    }
    r.expected = e;
    r.pass = (r.computed - r.expected).is_zero();
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (std::size_t k = p.size(); k-- > 0;) {
    const Rational& c = p[k];
    if (c == 0) continue;
    if (c < 0)
      s += s.empty() ? "-" : " - ";
    else if (!s.empty())
      s += " + ";
    Rational a = c < 0 ? Rational(-c) : c;
    if (a != 1 || k == 0) s += to_string(a);
    if (k > 0) s += (a != 1 ? "*" : "") + std::string(k == 1 ? "l" : "l^" + std::to_string(k));
  }
  return s;
}

}  // namespace unitarity
