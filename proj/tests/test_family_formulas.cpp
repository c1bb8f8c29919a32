#include "family_formulas.hpp"

#include <gtest/gtest.h>

using namespace unitarity;

TEST(FamilyFormulas, MatchWorkedExamples) {
  auto su = formulas::su(5, 8, {{5, 2}, {8, 1}});
  EXPECT_EQ(su.lambda0, -6);
  EXPECT_EQ(su.level, 3);
  auto sp1 = formulas::sp(10, {{5, 2}, {6, 1}});
  ASSERT_TRUE(sp1);
  EXPECT_EQ(sp1->lambda0, -5);
  EXPECT_EQ(sp1->level, 5);
  auto sp2 = formulas::sp(10, {{3, 1}, {4, 1}, {7, 1}});
  ASSERT_TRUE(sp2);
  EXPECT_EQ(sp2->lambda0, make_rational(-13, 2));
  EXPECT_EQ(sp2->level, 3);
  auto so = formulas::so_star(8, {{6, 2}, {7, 1}});
  ASSERT_TRUE(so);
  EXPECT_EQ(so->lambda0, -4);
  EXPECT_EQ(so->level, 3);
  EXPECT_FALSE(formulas::so_star(8, {{1, 2}}));
}

// Closed forms against the step-by-step classifier on random labels.
TEST(FamilyFormulas, AgreeWithClassifierOnRandomLabels) {
  std::mt19937 rng(7);
  std::vector<Family> families;
  for (int p = 1; p <= 5; ++p)
    for (int q = 1; q <= 5; ++q)
      if (p + q - 1 <= 8) families.push_back(Family::su(p, q));
  for (int n = 2; n <= 8; ++n) families.push_back(Family::sp(n));
  for (int n = 3; n <= 8; ++n) families.push_back(Family::so_star(n));

  int tried = 0;
  for (const auto& f : families) {
    RootSystem rs(f);
    for (int r = 0; r < 12; ++r) {
      auto l = formulas::random_labels(f, rng);
      auto e = formulas::expected(f, l);
      if (!e) continue;
      auto c = classify(rs, l);
      ++tried;
      std::string where = f.name() + " labels";
      for (const auto& [k, v] : l) where += " mu" + std::to_string(k) + "=" + std::to_string(v);
      EXPECT_EQ(c.lambda0, e->lambda0) << where;
      EXPECT_EQ(c.reduction_level, e->level) << where;
      EXPECT_TRUE(c.inconsistencies.empty()) << where;
    }
  }
  EXPECT_GE(tried, 200);
}
