#pragma once

// Jakobsen's procedure for a fixed k1-dominant integral Lambda_0:
//   eligible roots -> last place of unitarity lambda_0 and alpha_0 ->
//   missing highest weights at lambda_0 + k lambda_s, k = 0, 1, ...
// Every missing weight is backed by a BGG condition-(A) certificate found by
// an independent search inside the forward cone at alpha_0.

#include "unitarity/diagram.hpp"
#include "unitarity/errors.hpp"
#include "unitarity/root_system.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace unitarity {

using Labels = std::map<int, long long>;

// Throws ParameterError unless every label names a compact simple root and
// is non-negative.
inline void validate_labels(const RootSystem& rs, const Labels& labels) {
  for (const auto& [label, value] : labels) {
    if (!rs.simple_index_of_label(label))
      throw ParameterError("no compact simple root mu" + std::to_string(label) + " in " +
                           rs.family().name());
    if (value < 0) throw ParameterError("label mu" + std::to_string(label) + " is negative");
  }
}

inline bool is_k1_dominant(const RootSystem& rs, const Weight& w) {
  for (std::size_t k = 1; k < rs.rank(); ++k)
    if (pairing(w, rs.simple_roots()[k]) < 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Condition (A)

struct ConditionAStep {
  Root root;
  Rational multiplicity;  // n_i with xi_{i-1} - xi_i = n_i alpha_i
};

struct ConditionAReport {
  bool satisfied = true;
  std::vector<ConditionAStep> steps;
  Weight end;  // xi_k
};

// Applies the reflections alpha_1, ..., alpha_k to Lambda + R in order and
// records each step's multiplicity. Satisfied iff every one is a positive
// integer and every alpha_i is a positive root.
inline ConditionAReport condition_a(const RootSystem& rs, const Weight& lambda,
                                    const std::vector<Root>& sequence) {
  ConditionAReport report;
  Weight shifted = lambda + rs.rho();
  for (const auto& alpha : sequence) {
    Rational n = pairing(shifted, alpha);
    report.steps.push_back({alpha, n});
    if (!rs.find_positive(alpha) || !is_positive_integer(n)) report.satisfied = false;
    shifted = shifted - n * alpha;
  }
  report.end = shifted - rs.rho();
  return report;
}

inline bool check_condition_a(const RootSystem& rs, const Weight& lambda,
                              const std::vector<Root>& sequence) {
  return condition_a(rs, lambda, sequence).satisfied;
}

// Depth-first search for a sequence from `candidates` satisfying condition
// (A) for (Lambda - omega + R, Lambda + R). Sequences are bounded by
// `max_len`; states already shown to fail are memoized.
inline std::optional<std::vector<ConditionAStep>> find_condition_a_sequence(
    const RootSystem& rs, const std::vector<Root>& candidates, const Weight& lambda,
    const Weight& omega, std::size_t max_len) {
  if (omega.is_zero()) return std::vector<ConditionAStep>{};
  std::vector<Vector> candidate_coeffs;
  for (const auto& c : candidates) candidate_coeffs.push_back(rs.simple_coefficients(c));
  const Vector target = rs.simple_coefficients(omega);

  std::set<std::pair<Vector, std::size_t>> dead;
  std::vector<ConditionAStep> path;

  std::function<bool(const Vector&, const Weight&, std::size_t)> dfs =
      [&](const Vector& remaining, const Weight& shifted, std::size_t budget) -> bool {
    if (is_zero(remaining)) return true;
    if (budget == 0) return false;
    if (dead.count({remaining, budget})) return false;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      Rational n = pairing(shifted, candidates[c]);
      if (!is_positive_integer(n)) continue;
      Vector rest = remaining - n * candidate_coeffs[c];
      if (std::any_of(rest.begin(), rest.end(), [](const Rational& x) { return x < 0; })) continue;
      path.push_back({candidates[c], n});
      if (dfs(rest, shifted - n * candidates[c], budget - 1)) return true;
      path.pop_back();
    }
    dead.insert({remaining, budget});
    return false;
  };

  if (dfs(target, lambda + rs.rho(), max_len)) return path;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Steps i) and ii)

// alpha such that Lambda_0 - alpha is a highest weight of p^- (x) V_{Lambda_0}.
inline std::vector<Root> eligible_roots(const RootSystem& rs, const Weight& lambda0) {
  std::vector<Root> out;
  for (auto i : rs.noncompact_indices()) {
    const Root& alpha = rs.positive_roots()[i].root;
    bool ok = true;
    for (std::size_t k = 1; k < rs.rank() && ok; ++k) {
      const Root& mu = rs.simple_roots()[k];
      if (!rs.is_noncompact_positive(alpha - mu)) continue;
      Rational label = pairing(lambda0, mu);
      ok = label >= std::max(Rational(1), pairing(alpha, mu));
    }
    if (ok) out.push_back(alpha);
  }
  return out;
}

// lambda_alpha solving <Lambda_0 + lambda eps + R, alpha> = 1.
inline Rational place_of(const RootSystem& rs, const Weight& lambda0, const Root& alpha) {
  return (1 - pairing(lambda0 + rs.rho(), alpha)) / pairing(rs.epsilon(), alpha);
}

struct LastPlace {
  Rational lambda0;
  Root alpha0;
  bool tie = false;  // several eligible roots reached the minimum
};

inline LastPlace last_place(const RootSystem& rs, const Weight& lambda0) {
  auto eligible = eligible_roots(rs, lambda0);
  if (eligible.empty()) throw InvariantViolation("no eligible root (beta always is)");
  std::optional<Rational> best;
  std::vector<Root> minimizers;
  for (const auto& alpha : eligible) {
    Rational l = place_of(rs, lambda0, alpha);
    if (!best || l < *best) {
      best = l;
      minimizers.assign(1, alpha);
    } else if (l == *best) {
      minimizers.push_back(alpha);
    }
  }
  // Ties resolve to a root minimal in the partial order.
  Root chosen = minimizers.front();
  for (const auto& m : minimizers)
    if (rs.dominates(chosen, m)) chosen = m;
  return {*best, chosen, minimizers.size() > 1};
}

// ---------------------------------------------------------------------------
// lambda_s

struct LambdaSReport {
  Rational value;
  std::vector<Root> split_sequence;
  std::vector<int> c;  // c_j, j = 1..t
  bool consistent = true;
};

inline Rational lambda_s_table(const Family& f) {
  switch (f.tag) {
    case FamilyTag::SU: return -1;
    case FamilyTag::SP: return make_rational(-1, 2);
    case FamilyTag::SOstar: return -2;
    case FamilyTag::E6: return -3;
    case FamilyTag::E7: return -4;
    default:
      throw DomainError("lambda_s is not tabulated for " + f.name());
  }
}

// c_j counts compact positive roots whose restriction to the span of the
// split-rank roots is (gamma_j - gamma_i)/2 for some i < j.
inline LambdaSReport lambda_s_report(const RootSystem& rs) {
  LambdaSReport report;
  report.value = lambda_s_table(rs.family());
  report.split_sequence = JakobsenDiagram(rs).split_rank_sequence();
  const auto& gammas = report.split_sequence;
  const Rational half = make_rational(1, 2);
  for (std::size_t j = 0; j < gammas.size(); ++j) {
    int count = 0;
    for (auto idx : rs.compact_indices()) {
      const Root& mu = rs.positive_roots()[idx].root;
      // Projection coordinates on the orthogonal family gamma_1..gamma_t.
      std::vector<Rational> proj;
      for (const auto& g : gammas) proj.push_back(inner(mu, g) / inner(g, g));
      for (std::size_t i = 0; i < j; ++i) {
        bool match = true;
        for (std::size_t k = 0; k < gammas.size() && match; ++k) {
          Rational want = k == j ? half : k == i ? Rational(-half) : Rational(0);
          match = proj[k] == want;
        }
        if (match) {
          ++count;
          break;
        }
      }
    }
    report.c.push_back(count);
    if (Rational(-count) / 2 != Rational(static_cast<long long>(j)) * report.value)
      report.consistent = false;
  }
  return report;
}

inline Rational lambda_s(const RootSystem& rs) {
  auto report = lambda_s_report(rs);
  if (!report.consistent)
    throw InvariantViolation("c_j counts disagree with lambda_s for " + rs.family().name());
  return report.value;
}

// ---------------------------------------------------------------------------
// Classification

struct MissingWeight {
  Rational lambda_q;
  int order = 0;
  Weight omega_q;
  Weight highest_weight;  // Lambda_0 + lambda_q eps + R - omega_q
  std::vector<Root> contributing;  // the roots of omega_q
  std::vector<Rational> coefficients;  // their multiplicities in omega_q
  std::optional<std::vector<ConditionAStep>> certificate;
  int alternatives = 1;  // admissible omega_q found at this level
};

struct ClassificationResult {
  Family family;
  Labels labels;
  Weight lambda0_weight;  // Lambda_0
  Root alpha0;
  Rational lambda0;
  Rational lambda_s;
  int reduction_level = 0;
  std::vector<MissingWeight> missing;
  Rational last_isolated_place;
  bool alpha0_tie = false;
  std::vector<Root> forward_cone;
  std::vector<std::string> inconsistencies;
};

// Multiplicities a contributing root may carry: 1 for long or simply-laced
// roots; short roots of sp(n,R) may carry 1 or 2.
inline bool allowed_multiplicity(const RootSystem& rs, const Root& alpha, const Rational& m) {
  if (m == 1) return true;
  return m == 2 && rs.family().tag == FamilyTag::SP && !rs.is_long(alpha);
}

namespace detail {

// Sets of mutually orthogonal cone roots, each weighted by its pairing with
// Lambda + R, whose multiplicities sum to `order`.
inline std::vector<std::vector<std::pair<Root, Rational>>> orthogonal_candidates(
    const RootSystem& rs, const std::vector<Root>& cone, const Weight& shifted, int order) {
  std::vector<std::pair<Root, Rational>> usable;
  for (const auto& alpha : cone) {
    Rational m = pairing(shifted, alpha);
    if (is_positive_integer(m) && allowed_multiplicity(rs, alpha, m)) usable.push_back({alpha, m});
  }
  std::vector<std::vector<std::pair<Root, Rational>>> out;
  std::vector<std::pair<Root, Rational>> chosen;
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t from, Rational left) {
    if (left == 0) {
      out.push_back(chosen);
      return;
    }
    for (std::size_t i = from; i < usable.size(); ++i) {
      if (usable[i].second > left) continue;
      bool orth = std::all_of(chosen.begin(), chosen.end(),
                              [&](const auto& c) { return inner(c.first, usable[i].first) == 0; });
      if (!orth) continue;
      chosen.push_back(usable[i]);
      rec(i + 1, left - usable[i].second);
      chosen.pop_back();
    }
  };
  rec(0, Rational(order));
  return out;
}

}  // namespace detail

inline ClassificationResult classify(const RootSystem& rs, const Labels& labels) {
  validate_labels(rs, labels);
  ClassificationResult result;
  result.family = rs.family();
  result.labels = labels;
  const Weight lambda0_weight = rs.resolve_weight(labels);
  result.lambda0_weight = lambda0_weight;

  auto place = last_place(rs, lambda0_weight);
  result.lambda0 = place.lambda0;
  result.alpha0 = place.alpha0;
  result.alpha0_tie = place.tie;
  result.lambda_s = lambda_s(rs);

  JakobsenDiagram diagram(rs);
  result.forward_cone = diagram.cones(result.alpha0).forward;
  const auto& cone = result.forward_cone;

  const int max_order = 2 * static_cast<int>(cone.size());
  for (int k = 0; k + 1 <= max_order; ++k) {
    const Rational lambda_q = result.lambda0 + Rational(k) * result.lambda_s;
    const Weight lambda = lambda0_weight + lambda_q * rs.epsilon();
    const Weight shifted = lambda + rs.rho();

    std::vector<MissingWeight> admissible;
    for (const auto& set : detail::orthogonal_candidates(rs, cone, shifted, k + 1)) {
      Weight omega(rs.ambient_dim());
      for (const auto& [alpha, m] : set) omega += m * alpha;
      if (!is_k1_dominant(rs, lambda0_weight - omega)) continue;

      MissingWeight mw;
      mw.lambda_q = lambda_q;
      mw.order = k + 1;
      mw.omega_q = omega;
      mw.highest_weight = shifted - omega;
      for (const auto& [alpha, m] : set) {
        mw.contributing.push_back(alpha);
        mw.coefficients.push_back(m);
      }
      // The search sees the whole cone; the chosen roots just go first.
      std::vector<Root> order = mw.contributing;
      for (const auto& alpha : cone)
        if (std::find(order.begin(), order.end(), alpha) == order.end()) order.push_back(alpha);
      mw.certificate = find_condition_a_sequence(rs, order, lambda, omega, set.size() + 2);
      if (!mw.certificate) {
        result.inconsistencies.push_back("level " + std::to_string(k) + ": no condition-(A) sequence for omega = " +
                                         simple_expansion(rs, omega));
        continue;
      }
      admissible.push_back(std::move(mw));
    }
    if (admissible.empty()) break;
    admissible.front().alternatives = static_cast<int>(admissible.size());
    result.missing.push_back(std::move(admissible.front()));
  }

  result.reduction_level = static_cast<int>(result.missing.size());
  result.last_isolated_place =
      result.lambda0 + Rational(result.reduction_level - 1) * result.lambda_s;
  return result;
}

inline ClassificationResult classify(const Family& family, const Labels& labels) {
  RootSystem rs(family);
  return classify(rs, labels);
}

// ---------------------------------------------------------------------------
// Verdicts

enum class VerdictKind { UnitaryContinuous, UnitaryPoint, NonUnitary };

struct Verdict {
  VerdictKind kind = VerdictKind::NonUnitary;
  int order = 0;  // for UnitaryPoint: order of the missing polynomial

  std::string name() const {
    switch (kind) {
      case VerdictKind::UnitaryContinuous: return "UnitaryContinuous";
      case VerdictKind::UnitaryPoint: return "UnitaryPoint";
      case VerdictKind::NonUnitary: return "NonUnitary";
    }
    return "?";
  }
  bool unitary() const { return kind != VerdictKind::NonUnitary; }
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline Verdict unitarity_verdict(const ClassificationResult& r, const Rational& lambda) {
  if (lambda > r.lambda0) return {VerdictKind::NonUnitary, 0};
  const int u = r.reduction_level - 1;
  for (int k = 0; k <= u; ++k)
    if (lambda == r.lambda0 + Rational(k) * r.lambda_s) return {VerdictKind::UnitaryPoint, k + 1};
  if (lambda < r.last_isolated_place) return {VerdictKind::UnitaryContinuous, 0};
  return {VerdictKind::NonUnitary, 0};
}

}  // namespace unitarity
