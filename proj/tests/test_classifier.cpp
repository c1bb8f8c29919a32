#include "unitarity/classifier.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace unitarity;

namespace {

struct Expect {
  Rational lambda_q;
  int roots;  // contributing roots
};

void expect_missing(const ClassificationResult& r, const std::vector<Expect>& want) {
  ASSERT_EQ(r.missing.size(), want.size());
  EXPECT_EQ(r.reduction_level, static_cast<int>(want.size()));
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_EQ(r.missing[i].order, static_cast<int>(i + 1));
    EXPECT_EQ(r.missing[i].lambda_q, want[i].lambda_q) << "order " << i + 1;
    EXPECT_EQ(static_cast<int>(r.missing[i].contributing.size()), want[i].roots) << "order " << i + 1;
  }
  EXPECT_TRUE(r.inconsistencies.empty());
}

// Each certificate replays to Lambda - omega under condition (A).
void expect_certified(const RootSystem& rs, const ClassificationResult& r) {
  for (const auto& m : r.missing) {
    ASSERT_TRUE(m.certificate);
    std::vector<Root> seq;
    for (const auto& s : *m.certificate) seq.push_back(s.root);
    Weight lambda = r.lambda0_weight + m.lambda_q * rs.epsilon();
    auto rep = condition_a(rs, lambda, seq);
    EXPECT_TRUE(rep.satisfied);
    EXPECT_EQ(rep.end, lambda - m.omega_q);
    EXPECT_TRUE(is_k1_dominant(rs, r.lambda0_weight - m.omega_q));
  }
}

Rational h(long long a, long long b) { return make_rational(a, b); }

}  // namespace

TEST(Classifier, Su58) {
  RootSystem rs(Family::su(5, 8));
  auto r = classify(rs, {{5, 2}, {8, 1}});
  EXPECT_EQ(r.lambda0, -6);
  EXPECT_EQ(r.lambda_s, -1);
  EXPECT_EQ(JakobsenDiagram(rs).node(r.alpha0).grid.name(), "a7^2");
  expect_missing(r, {{-6, 1}, {-7, 2}, {-8, 3}});
  expect_certified(rs, r);
}

TEST(Classifier, Sp10CaseI) {
  RootSystem rs(Family::sp(10));
  auto r = classify(rs, {{5, 2}, {6, 1}});
  EXPECT_EQ(r.lambda0, -5);
  EXPECT_EQ(r.lambda_s, h(-1, 2));
  expect_missing(r, {{-5, 1}, {h(-11, 2), 1}, {-6, 2}, {h(-13, 2), 2}, {-7, 3}});
  // Short roots enter with multiplicity 2.
  EXPECT_EQ(r.missing[1].coefficients, (std::vector<Rational>{Rational(2)}));
  expect_certified(rs, r);
}

TEST(Classifier, Sp10CaseII) {
  RootSystem rs(Family::sp(10));
  auto r = classify(rs, {{3, 1}, {4, 1}, {7, 1}});
  EXPECT_EQ(r.lambda0, h(-13, 2));
  expect_missing(r, {{h(-13, 2), 1}, {-7, 2}, {h(-15, 2), 2}});
  expect_certified(rs, r);
}

TEST(Classifier, SoStar16) {
  RootSystem rs(Family::so_star(8));
  JakobsenDiagram d(rs);
  auto r = classify(rs, {{6, 2}, {7, 1}});
  EXPECT_EQ(r.lambda0, -4);
  EXPECT_EQ(r.lambda_s, -2);
  EXPECT_EQ(d.height(r.alpha0), 5);
  expect_missing(r, {{-4, 1}, {-6, 2}, {-8, 3}});
  // At -6 the next height is skipped: both roots sit two steps above alpha0.
  for (const auto& a : r.missing[1].contributing) EXPECT_EQ(d.height(a), 7);
  for (const auto& a : r.missing[2].contributing) EXPECT_EQ(d.height(a), 9);
  expect_certified(rs, r);
}

TEST(Classifier, E6) {
  RootSystem rs(Family::e6());
  auto r = classify(rs, {{6, 1}});
  EXPECT_EQ(r.lambda0, -4);
  EXPECT_EQ(r.lambda_s, -3);
  expect_missing(r, {{-4, 1}, {-7, 2}});
  expect_certified(rs, r);
}

TEST(Classifier, E7) {
  RootSystem rs(Family::e7());
  JakobsenDiagram d(rs);
  auto r = classify(rs, {{6, 1}});
  EXPECT_EQ(r.lambda0, -8);
  EXPECT_EQ(r.lambda_s, -4);
  EXPECT_EQ(d.height(r.alpha0), 9);
  expect_missing(r, {{-8, 1}, {-12, 2}});
  for (const auto& a : r.missing[1].contributing) EXPECT_EQ(d.height(a), 13);
  expect_certified(rs, r);
}

TEST(Classifier, ZeroLabels) {
  auto su = classify(Family::su(2, 2), {});
  EXPECT_EQ(su.lambda0, 0);
  expect_missing(su, {{0, 1}, {-1, 2}});
  auto sp = classify(Family::sp(2), {});
  expect_missing(sp, {{0, 1}, {h(-1, 2), 1}});
  EXPECT_EQ(sp.missing[1].coefficients, (std::vector<Rational>{Rational(2)}));
}

TEST(Classifier, SmallNonzeroLabels) {
  auto su21 = classify(Family::su(2, 1), {{1, 1}});
  EXPECT_EQ(su21.lambda0, -1);
  expect_missing(su21, {{-1, 1}});
  auto sp2a = classify(Family::sp(2), {{1, 2}});
  EXPECT_EQ(sp2a.lambda0, -1);
  expect_missing(sp2a, {{-1, 1}});
  auto sp2b = classify(Family::sp(2), {{1, 1}});
  EXPECT_EQ(sp2b.lambda0, h(-1, 2));
  expect_missing(sp2b, {{h(-1, 2), 1}});
}

TEST(Classifier, WorkedExamplesRunFast) {
  auto start = std::chrono::steady_clock::now();
  classify(Family::su(5, 8), {{5, 2}, {8, 1}});
  classify(Family::sp(10), {{5, 2}, {6, 1}});
  classify(Family::sp(10), {{3, 1}, {4, 1}, {7, 1}});
  classify(Family::so_star(8), {{6, 2}, {7, 1}});
  classify(Family::e6(), {{6, 1}});
  classify(Family::e7(), {{6, 1}});
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 10.0);
}

TEST(Classifier, EligibleRoots) {
  RootSystem rs(Family::su(2, 2));
  // With all labels zero only beta qualifies.
  auto e = eligible_roots(rs, rs.resolve_weight({}));
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e.front(), rs.beta());

  RootSystem big(Family::su(5, 8));
  auto lambda0 = big.resolve_weight({{5, 2}, {8, 1}});
  auto r = classify(big, {{5, 2}, {8, 1}});
  auto el = eligible_roots(big, lambda0);
  EXPECT_NE(std::find(el.begin(), el.end(), r.alpha0), el.end());
  EXPECT_EQ(place_of(big, lambda0, r.alpha0), r.lambda0);
  for (const auto& a : el) EXPECT_GE(place_of(big, lambda0, a), r.lambda0);
}

TEST(Classifier, K1Dominance) {
  RootSystem rs(Family::su(5, 8));
  JakobsenDiagram d(rs);
  auto lambda0 = rs.resolve_weight({{5, 2}, {8, 1}});
  EXPECT_TRUE(is_k1_dominant(rs, lambda0));
  EXPECT_TRUE(is_k1_dominant(rs, lambda0 - d.at({7, 2})));
  // mu9 points into a10^1 and nothing in between compensates.
  EXPECT_FALSE(is_k1_dominant(rs, lambda0 - d.at({10, 1})));
}

TEST(Classifier, ConditionA) {
  RootSystem rs(Family::su(2, 2));
  auto lambda0 = rs.resolve_weight({});
  // At lambda = 0, <Lambda + R, beta> = 1.
  EXPECT_TRUE(check_condition_a(rs, lambda0, {rs.beta()}));
  // At lambda = -1/2 the step is not an integer.
  EXPECT_FALSE(check_condition_a(rs, lambda0 + h(-1, 2) * rs.epsilon(), {rs.beta()}));
  // At lambda = -5 it is negative.
  EXPECT_FALSE(check_condition_a(rs, lambda0 + Rational(-5) * rs.epsilon(), {rs.beta()}));
  // Negative roots are rejected.
  EXPECT_FALSE(check_condition_a(rs, lambda0 - Rational(4) * rs.epsilon(), {-rs.beta()}));
  auto rep = condition_a(rs, lambda0, {rs.beta()});
  EXPECT_EQ(rep.end, lambda0 - rs.beta());
}

TEST(Classifier, SequenceSearch) {
  RootSystem rs(Family::su(2, 2));
  auto r = classify(rs, {});
  const auto& m = r.missing[1];
  Weight lambda = r.lambda0_weight + m.lambda_q * rs.epsilon();
  auto seq = find_condition_a_sequence(rs, r.forward_cone, lambda, m.omega_q, 4);
  ASSERT_TRUE(seq);
  EXPECT_EQ(seq->size(), 2u);
  // beta alone cannot reach the order-2 weight.
  EXPECT_FALSE(find_condition_a_sequence(rs, {rs.beta()}, lambda, m.omega_q, 4));
}

TEST(Classifier, LambdaSTable) {
  EXPECT_EQ(lambda_s(RootSystem(Family::su(3, 4))), -1);
  EXPECT_EQ(lambda_s(RootSystem(Family::sp(4))), h(-1, 2));
  EXPECT_EQ(lambda_s(RootSystem(Family::so_star(6))), -2);
  EXPECT_EQ(lambda_s(RootSystem(Family::e6())), -3);
  EXPECT_EQ(lambda_s(RootSystem(Family::e7())), -4);
  EXPECT_THROW(lambda_s_table(Family::so_odd(4)), DomainError);
}

TEST(Classifier, LambdaSCrossCheck) {
  for (const auto& f : {Family::su(3, 5), Family::su(4, 4), Family::sp(5), Family::so_star(8), Family::so_star(7),
                        Family::e6(), Family::e7()}) {
    RootSystem rs(f);
    auto rep = lambda_s_report(rs);
    EXPECT_TRUE(rep.consistent) << f.name();
    ASSERT_FALSE(rep.c.empty());
    EXPECT_EQ(rep.c.front(), 0);
  }
}

TEST(Classifier, Verdicts) {
  auto r = classify(Family::su(5, 8), {{5, 2}, {8, 1}});
  EXPECT_EQ(unitarity_verdict(r, Rational(-5)).kind, VerdictKind::NonUnitary);
  EXPECT_EQ(unitarity_verdict(r, Rational(-6)), (Verdict{VerdictKind::UnitaryPoint, 1}));
  EXPECT_EQ(unitarity_verdict(r, Rational(-7)), (Verdict{VerdictKind::UnitaryPoint, 2}));
  EXPECT_EQ(unitarity_verdict(r, Rational(-8)), (Verdict{VerdictKind::UnitaryPoint, 3}));
  EXPECT_EQ(unitarity_verdict(r, h(-13, 2)).kind, VerdictKind::NonUnitary);
  EXPECT_EQ(unitarity_verdict(r, h(-17, 2)).kind, VerdictKind::UnitaryContinuous);
  EXPECT_EQ(unitarity_verdict(r, Rational(-100)).kind, VerdictKind::UnitaryContinuous);
}

TEST(Classifier, RejectsBadLabels) {
  EXPECT_THROW(classify(Family::su(2, 2), {{9, 1}}), ParameterError);
  EXPECT_THROW(classify(Family::su(2, 2), {{1, -1}}), ParameterError);
  EXPECT_THROW(classify(Family::e6(), {{1, 1}}), ParameterError);
}

TEST(Classifier, InvariantsOnSampledLabels) {
  for (const auto& [f, l] : std::vector<std::pair<Family, Labels>>{
           {Family::su(3, 4), {{2, 1}, {5, 3}}},
           {Family::sp(5), {{2, 2}}},
           {Family::so_star(6), {{3, 2}, {5, 1}}},
           {Family::e6(), {{3, 1}}},
           {Family::e7(), {}}}) {
    RootSystem rs(f);
    auto r = classify(rs, l);
    EXPECT_TRUE(r.inconsistencies.empty()) << f.name();
    EXPECT_GE(r.reduction_level, 1);
    for (std::size_t i = 0; i < r.missing.size(); ++i) {
      EXPECT_EQ(r.missing[i].lambda_q, r.lambda0 + Rational(static_cast<long long>(i)) * r.lambda_s);
      Rational total = 0;
      for (std::size_t k = 0; k < r.missing[i].contributing.size(); ++k) {
        EXPECT_TRUE(std::find(r.forward_cone.begin(), r.forward_cone.end(), r.missing[i].contributing[k]) !=
                    r.forward_cone.end());
        total += r.missing[i].coefficients[k];
      }
      EXPECT_EQ(total, static_cast<long long>(i + 1));
    }
    expect_certified(rs, r);
  }
}
