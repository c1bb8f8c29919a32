#include "unitarity/diagram.hpp"

#include <gtest/gtest.h>

using namespace unitarity;

namespace {

std::size_t split_rank(const Family& f) {
  RootSystem rs(f);
  return JakobsenDiagram(rs).split_rank();
}

std::vector<Family> sample_families() {
  return {Family::su(1, 1), Family::su(3, 5), Family::sp(2), Family::sp(5), Family::so_star(4),
          Family::so_star(7), Family::so_odd(3), Family::so_even(4), Family::e6(), Family::e7()};
}

}  // namespace

TEST(Diagram, SplitRanks) {
  EXPECT_EQ(split_rank(Family::su(5, 8)), 5u);
  EXPECT_EQ(split_rank(Family::su(3, 2)), 2u);
  EXPECT_EQ(split_rank(Family::sp(6)), 6u);
  EXPECT_EQ(split_rank(Family::so_star(8)), 4u);
  EXPECT_EQ(split_rank(Family::so_star(7)), 3u);
  EXPECT_EQ(split_rank(Family::e6()), 2u);
  EXPECT_EQ(split_rank(Family::e7()), 3u);
}

TEST(Diagram, SplitRankOfSoM2IsTwo) {
  // beta = e1 - e2 and gamma_r = e1 + e2 are orthogonal, so the sequence has
  // two roots (the real rank of so(m,2)).
  EXPECT_EQ(split_rank(Family::so_odd(4)), 2u);
  EXPECT_EQ(split_rank(Family::so_even(5)), 2u);
}

TEST(Diagram, SplitRankSequenceIsOrthogonal) {
  for (const auto& f : sample_families()) {
    RootSystem rs(f);
    auto seq = JakobsenDiagram(rs).split_rank_sequence();
    ASSERT_FALSE(seq.empty());
    EXPECT_EQ(seq.front(), rs.beta());
    for (std::size_t i = 0; i < seq.size(); ++i)
      for (std::size_t j = i + 1; j < seq.size(); ++j) EXPECT_EQ(inner(seq[i], seq[j]), 0) << f.name();
  }
}

TEST(Diagram, BetaAtBottomGammaAtTop) {
  for (const auto& f : sample_families()) {
    RootSystem rs(f);
    JakobsenDiagram d(rs);
    EXPECT_EQ(d.nodes().front().root, rs.beta());
    EXPECT_EQ(d.nodes().front().grid.name(), "a1^1");
    EXPECT_EQ(d.nodes().back().root, rs.gamma_r());
    EXPECT_EQ(d.count_at_height(d.max_height()), 1);
  }
}

TEST(Diagram, MaxHeights) {
  auto top = [](const Family& f) {
    RootSystem rs(f);
    return JakobsenDiagram(rs).max_height();
  };
  EXPECT_EQ(top(Family::su(5, 8)), 12);
  EXPECT_EQ(top(Family::sp(5)), 9);
  EXPECT_EQ(top(Family::so_star(8)), 13);
  EXPECT_EQ(top(Family::e6()), 11);
  EXPECT_EQ(top(Family::e7()), 17);
}

TEST(Diagram, AtMostTwoArrowsOut) {
  for (const auto& f : sample_families()) {
    RootSystem rs(f);
    JakobsenDiagram d(rs);
    std::vector<int> out(d.nodes().size(), 0);
    for (const auto& e : d.edges()) {
      ++out[e.from];
      EXPECT_EQ(d.nodes()[e.to].root - d.nodes()[e.from].root, rs.simple_roots()[e.simple]);
      EXPECT_EQ(d.nodes()[e.to].height, d.nodes()[e.from].height + 1);
    }
    for (int o : out) EXPECT_LE(o, 2) << f.name();
  }
}

TEST(Diagram, HeightPairingIdentities) {
  for (const auto& f : sample_families())
    for (const auto& row : [&] {
           RootSystem rs(f);
           return JakobsenDiagram(rs).heights_pairing_check();
         }())
      EXPECT_TRUE(row.pass) << f.name() << " " << to_string(row.root);
}

TEST(Diagram, GridNamesInSu22) {
  RootSystem rs(Family::su(2, 2));
  JakobsenDiagram d(rs);
  std::vector<std::string> names;
  for (const auto& n : d.nodes()) names.push_back(n.grid.name());
  EXPECT_EQ(names, (std::vector<std::string>{"a1^1", "a2^1", "a2^2", "a3^1"}));
  EXPECT_EQ(simple_expansion(rs, d.at({2, 1})), "beta+mu1");
  EXPECT_THROW(d.at({4, 1}), DomainError);
}

TEST(Diagram, ConesOfBeta) {
  RootSystem rs(Family::sp(3));
  JakobsenDiagram d(rs);
  auto c = d.cones(rs.beta());
  EXPECT_EQ(c.forward.size(), d.nodes().size());
  EXPECT_EQ(c.backward.size(), 1u);
  auto top = d.cones(rs.gamma_r());
  EXPECT_EQ(top.forward.size(), 1u);
  EXPECT_EQ(top.backward.size(), d.nodes().size());
  EXPECT_THROW(d.cones(rs.simple_roots()[1]), DomainError);
}

TEST(Diagram, RenderingIsDeterministic) {
  RootSystem rs(Family::so_star(5));
  JakobsenDiagram d(rs);
  for (auto fmt : {"ascii", "dot"}) {
    auto f = parse_render_format(fmt);
    EXPECT_EQ(render(d, f, {}), render(d, f, {}));
  }
  EXPECT_NE(render(d, parse_render_format("dot"), {}).find("digraph"), std::string::npos);
  EXPECT_THROW(parse_render_format("png"), ParameterError);
}
