#include "unitarity/hwv.hpp"

#include <gtest/gtest.h>

#ifndef UNITARITY_CATALOG_PATH
#define UNITARITY_CATALOG_PATH "data/hwv_catalog.json"
#endif

using namespace unitarity;

TEST(Affine, ParseAndEvaluate) {
  auto f = parse_affine("n5+n8+3");
  EXPECT_EQ(f.evaluate({{"n5", 2}, {"n8", 1}}), 6);
  EXPECT_FALSE(f.is_constant());
  EXPECT_EQ(to_string(f), "n5+n8+3");
  auto g = parse_affine("-n+2");
  EXPECT_EQ(g.evaluate({{"n", 5}}), -3);
  EXPECT_TRUE(parse_affine("4").is_constant());
  EXPECT_EQ(f + g, parse_affine("n5+n8-n+5"));
  EXPECT_THROW(parse_affine("n5*"), ParameterError);
}

TEST(Affine, MissingParameterThrows) {
  EXPECT_THROW(parse_affine("n1+1").evaluate({}), ParameterError);
}

TEST(NetLowering, EmptyAndAdditive) {
  RootSystem rs(Family::su(2, 2));
  FormalExpression none;
  EXPECT_TRUE(net_lowering(rs, none).is_zero());

  FormalExpression a, b;
  a.factors.push_back({0, parse_affine("n+1")});
  b.factors.push_back({1, parse_affine("2")});
  b.factors.push_back({0, parse_affine("-n")});
  FormalExpression ab = a;
  ab += b;
  std::map<std::string, long long> v{{"n", 3}};
  EXPECT_EQ(net_lowering(rs, ab, v), net_lowering(rs, a, v) + net_lowering(rs, b, v));
  auto sym = net_lowering_symbolic(rs, ab);
  EXPECT_TRUE(sym[0].is_constant());
  EXPECT_EQ(sym[0].constant, 1);
  EXPECT_EQ(sym[1].constant, 2);
}

TEST(NetLowering, RootNames) {
  RootSystem rs(Family::e6());
  EXPECT_EQ(simple_index(rs, "beta"), 0u);
  EXPECT_EQ(rs.simple_roots()[simple_index(rs, "mu6")], rs.simple_roots()[*rs.simple_index_of_label(6)]);
  EXPECT_THROW(simple_index(rs, "mu1"), ParameterError);
  EXPECT_THROW(simple_index(rs, "gamma"), ParameterError);
}

TEST(Catalog, EveryEntryTelescopesToTheMissingWeight) {
  auto catalog = load_catalog(UNITARITY_CATALOG_PATH);
  EXPECT_EQ(catalog.schema_version, 1);
  EXPECT_EQ(catalog.entries.size(), 10u);
  auto report = verify_catalog(catalog);
  for (const auto& e : report.entries) {
    EXPECT_TRUE(e.symbolic_pass) << e.id << ": " << e.symbolic_detail;
    EXPECT_GE(e.instantiations.size(), 3u) << e.id;
    for (const auto& i : e.instantiations) {
      EXPECT_TRUE(i.drop_matches) << e.id << " " << i.detail;
      EXPECT_TRUE(i.classifier_matches) << e.id << " " << i.detail;
    }
  }
  EXPECT_TRUE(report.pass());
}

TEST(Catalog, E7ExpressionNeedsItsRepair) {
  auto catalog = load_catalog(UNITARITY_CATALOG_PATH);
  auto it = std::find_if(catalog.entries.begin(), catalog.entries.end(),
                         [](const CatalogEntry& e) { return e.family.tag == FamilyTag::E7; });
  ASSERT_NE(it, catalog.entries.end());
  EXPECT_FALSE(it->repairs.empty());
  // Drop the last factor: the telescoping no longer closes.
  CatalogEntry broken = *it;
  broken.factors.pop_back();
  EXPECT_FALSE(verify_entry(broken).pass());
}

TEST(Catalog, RejectsUnknownFamily) {
  EXPECT_THROW(parse_family("g2", 0, 0, 0), ParameterError);
  EXPECT_THROW(load_catalog("/nonexistent/catalog.json"), ParameterError);
}
