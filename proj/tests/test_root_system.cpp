#include "unitarity/root_system.hpp"

#include <gtest/gtest.h>

using namespace unitarity;

namespace {

std::size_t noncompact_count(const Family& f) { return RootSystem(f).noncompact_indices().size(); }

}  // namespace

TEST(RootSystem, NoncompactRootCounts) {
  // dim p^+ : pq, n(n+1)/2, n(n-1)/2, m, 16, 27
  EXPECT_EQ(noncompact_count(Family::su(5, 8)), 40u);
  EXPECT_EQ(noncompact_count(Family::su(2, 2)), 4u);
  EXPECT_EQ(noncompact_count(Family::sp(5)), 15u);
  EXPECT_EQ(noncompact_count(Family::so_star(8)), 28u);
  EXPECT_EQ(noncompact_count(Family::so_odd(4)), 7u);
  EXPECT_EQ(noncompact_count(Family::so_even(4)), 6u);
  EXPECT_EQ(noncompact_count(Family::e6()), 16u);
  EXPECT_EQ(noncompact_count(Family::e7()), 27u);
}

TEST(RootSystem, PositiveRootCounts) {
  EXPECT_EQ(RootSystem(Family::su(5, 8)).positive_roots().size(), 78u);
  EXPECT_EQ(RootSystem(Family::sp(5)).positive_roots().size(), 25u);
  EXPECT_EQ(RootSystem(Family::e6()).positive_roots().size(), 36u);
  EXPECT_EQ(RootSystem(Family::e7()).positive_roots().size(), 63u);
}

TEST(RootSystem, CompactLabels) {
  EXPECT_EQ(RootSystem(Family::e6()).compact_labels(), (std::vector<int>{2, 3, 4, 5, 6}));
  EXPECT_EQ(RootSystem(Family::e7()).compact_labels(), (std::vector<int>{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(RootSystem(Family::su(5, 8)).compact_labels().size(), 11u);
}

TEST(RootSystem, BetaAppearsOnceInEveryNoncompactRoot) {
  for (const auto& f : {Family::su(3, 4), Family::sp(4), Family::so_star(6), Family::so_odd(5),
                        Family::so_even(5), Family::e6(), Family::e7()}) {
    RootSystem rs(f);
    for (auto i : rs.noncompact_indices()) EXPECT_EQ(rs.positive_roots()[i].coefficients.front(), 1) << f.name();
    for (auto i : rs.compact_indices()) EXPECT_EQ(rs.positive_roots()[i].coefficients.front(), 0) << f.name();
  }
}

TEST(RootSystem, EpsilonIsOrthogonalToCompactAndPairsToOneWithTop) {
  for (const auto& f : {Family::su(2, 3), Family::sp(3), Family::so_star(5), Family::e6(), Family::e7()}) {
    RootSystem rs(f);
    EXPECT_EQ(pairing(rs.epsilon(), rs.gamma_r()), 1) << f.name();
    for (std::size_t k = 1; k < rs.rank(); ++k) EXPECT_EQ(pairing(rs.epsilon(), rs.simple_roots()[k]), 0);
  }
}

TEST(RootSystem, EpsilonCoordinates) {
  // sp: gamma_r = 2e1 is long, so epsilon = (1,...,1)
  RootSystem sp(Family::sp(3));
  for (const auto& x : sp.epsilon().coords) EXPECT_EQ(x, 1);
  RootSystem so(Family::so_star(4));
  for (const auto& x : so.epsilon().coords) EXPECT_EQ(x, make_rational(1, 2));
}

TEST(RootSystem, ResolveWeightMatchesLabels) {
  RootSystem rs(Family::su(5, 8));
  std::map<int, long long> labels{{5, 2}, {8, 1}};
  Weight w = rs.resolve_weight(labels);
  for (std::size_t k = 1; k < rs.rank(); ++k) {
    int label = rs.compact_label(k);
    long long want = labels.count(label) ? labels[label] : 0;
    EXPECT_EQ(pairing(w, rs.simple_roots()[k]), want);
  }
  EXPECT_EQ(pairing(w, rs.gamma_r()), 0);
}

TEST(RootSystem, RhoPairsToOneWithSimpleRoots) {
  for (const auto& f : {Family::su(3, 3), Family::sp(4), Family::e6()}) {
    RootSystem rs(f);
    for (const auto& a : rs.simple_roots()) EXPECT_EQ(pairing(rs.rho(), a), 1);
  }
}

TEST(RootSystem, SimpleCoefficientsRoundTrip) {
  RootSystem rs(Family::e7());
  for (const auto& pr : rs.positive_roots()) {
    Vector c = rs.simple_coefficients(pr.root);
    for (std::size_t k = 0; k < c.size(); ++k) EXPECT_EQ(c[k], pr.coefficients[k]);
    EXPECT_EQ(rs.from_simple_coefficients(c), pr.root);
  }
}

TEST(RootSystem, WeylReflectionIsAnInvolution) {
  RootSystem rs(Family::sp(3));
  Weight w = rs.rho();
  for (const auto& pr : rs.positive_roots()) {
    EXPECT_EQ(weyl_reflect(weyl_reflect(w, pr.root), pr.root), w);
    EXPECT_EQ(weyl_reflect(pr.root, pr.root), -pr.root);
  }
}

TEST(RootSystem, PairingWithZeroRootThrows) {
  RootSystem rs(Family::su(2, 2));
  EXPECT_THROW(pairing(rs.rho(), Root(rs.ambient_dim())), DomainError);
}

TEST(RootSystem, ParameterValidation) {
  EXPECT_THROW(RootSystem(Family::su(0, 3)), ParameterError);
  EXPECT_THROW(RootSystem(Family::sp(0)), ParameterError);
  EXPECT_THROW(RootSystem(Family::so_star(1)), ParameterError);
  EXPECT_NO_THROW(RootSystem(Family::su(1, 1)));
}

TEST(RootSystem, LongRoots) {
  RootSystem rs(Family::sp(3));
  EXPECT_TRUE(rs.is_long(rs.beta()));  // 2e_n
  EXPECT_FALSE(rs.is_long(rs.simple_roots()[1]));
}
