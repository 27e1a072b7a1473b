#include <gtest/gtest.h>

#include <set>

#include <ssprk/ssprk.hpp>

using namespace ssprk;

TEST(Catalog, IdsAreUniqueAndTable1IsCovered) {
  std::set<std::string> ids;
  for (const auto& r : catalog_list()) EXPECT_TRUE(ids.insert(r.id).second) << r.id;
  EXPECT_EQ(ids.size(), 11u);
  const auto t1 = table1_ids();
  EXPECT_EQ(t1.size(), 10u);
  for (const auto& id : t1) EXPECT_TRUE(ids.count(id)) << id;
}

TEST(Catalog, LookupAndAliases) {
  EXPECT_EQ(catalog_lookup("ssp43").stages, 4);
  EXPECT_EQ(catalog_lookup("euler").id, "ssp1_1");
  EXPECT_EQ(catalog_lookup("forward_euler").stages, 1);
  EXPECT_EQ(catalog_lookup("ssp2_4").order, 2);
  for (const char* bad : {"rk4", "ssp1_0", "ssp2_1", "ssp1_x", "ssp2_", ""}) {
    try {
      catalog_lookup(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::UnknownMethod) << bad;
    }
  }
}

TEST(Catalog, ParseCoefficient) {
  EXPECT_DOUBLE_EQ(parse_coefficient("2/3"), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(parse_coefficient("0.377268915331368"), 0.377268915331368);
  EXPECT_DOUBLE_EQ(parse_coefficient("2.88494e-02"), 0.0288494);
  EXPECT_THROW(parse_coefficient("1/x"), Error);
  EXPECT_THROW(parse_coefficient("0.5 "), Error);
}

TEST(Catalog, FamilyConstructors) {
  for (int s = 1; s <= 8; ++s) {
    const auto r = ssp_first_order(s);
    EXPECT_LE(max_abs(order_residuals(r.tableau, 1)), 1e-15);
    EXPECT_LE(max_abs_diff(shu_osher_to_butcher(*r.shu_osher), r.tableau), 1e-15);
  }
  for (int s = 2; s <= 8; ++s) {
    const auto r = ssp_second_order(s);
    EXPECT_LE(max_abs(order_residuals(r.tableau, 2)), 1e-15);
    EXPECT_LE(max_abs_diff(shu_osher_to_butcher(*r.shu_osher), r.tableau), 1e-15);
  }
  EXPECT_THROW(ssp_first_order(0), Error);
  EXPECT_THROW(ssp_second_order(1), Error);
}

TEST(CatalogInvariants, OrderConditions) {
  for (const auto& r : catalog_list()) {
    EXPECT_EQ(r.order, 3) << r.id;
    EXPECT_EQ(r.tableau.stages(), static_cast<std::size_t>(r.stages)) << r.id;
    EXPECT_LE(max_abs(order_residuals(r.tableau, 3)), r.order_tol) << r.id;
  }
}

TEST(CatalogInvariants, RadiusMatchesReference) {
  for (const auto& r : catalog_list()) {
    if (r.id == "ssp53_2nstar_1") continue;
    EXPECT_NEAR(radius_absolute_monotonicity(r.tableau), r.ref_ssp, r.ref_ssp_tol) << r.id;
  }
}

TEST(CatalogInvariants, FirstTwoNStarSchemeExceedsItsPrintedRadius) {
  const auto r = catalog_lookup("ssp53_2nstar_1");
  const double computed = radius_absolute_monotonicity(r.tableau);
  EXPECT_GT(computed - r.ref_ssp, 1e-6);
  EXPECT_LT(computed - r.ref_ssp, 1e-5);
  EXPECT_TRUE(monotonicity_feasible(extended_matrix(r.tableau), r.ref_ssp + 2e-6).feasible);
}

TEST(CatalogInvariants, ShuOsherFormsReconstructTableau) {
  for (const auto& r : catalog_list()) {
    if (!r.shu_osher) continue;
    EXPECT_TRUE(r.shu_osher->is_canonical()) << r.id;
    EXPECT_LE(max_abs_diff(shu_osher_to_butcher(*r.shu_osher), r.tableau), 1e-11) << r.id;
    EXPECT_GE(representation_ssp_coefficient(*r.shu_osher), r.ref_ssp - 1e-6) << r.id;
  }
}

TEST(CatalogInvariants, ErrorConstants) {
  for (const auto& r : catalog_list()) {
    if (!r.ref_error_const) continue;
    EXPECT_NEAR(error_constant(r.tableau, r.order_tol), *r.ref_error_const, 1e-6) << r.id;
  }
}

TEST(CatalogInvariants, ErrorConstantOfSsp43) {
  EXPECT_NEAR(error_constant(catalog_lookup("ssp43").tableau), std::sqrt(3.0) / 48.0, 1e-16);
}

TEST(CatalogInvariants, PrintedAbscissae) {
  for (const auto& r : catalog_list()) {
    ASSERT_EQ(r.printed_c.size(), r.tableau.c().size()) << r.id;
    for (std::size_t i = 0; i < r.printed_c.size(); ++i) {
      if (r.id == "ssp53_w2" && i == 2) {
        EXPECT_DOUBLE_EQ(r.printed_c[i], r.tableau.a()(2, 1));
        continue;
      }
      EXPECT_NEAR(r.printed_c[i], r.tableau.c()[i], 1e-13) << r.id << " c" << i + 1;
    }
  }
}

TEST(CatalogInvariants, OptimalRadiusForFiveStageThirdOrder) {
  const double r = ssp53_optimal_radius(1e-15);
  for (const auto& rec : catalog_list())
    if (rec.stages == 5) EXPECT_LE(radius_absolute_monotonicity(rec.tableau), r + 1e-9) << rec.id;
}
