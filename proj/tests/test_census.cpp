#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "sphere/census.hpp"

using namespace sphere;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool contains(const std::vector<SpherePoint>& pts, const SpherePoint& p) {
  for (const auto& q : pts)
    if (chordal_distance(p, q) < 1e-8) return true;
  return false;
}

}  // namespace

TEST(FixedPoints, SquareThirdIterateMatchesRootsOfUnity) {
  const auto fix = fixed_points(parse_map_spec("power:d=2"), 3);
  ASSERT_EQ(fix.points.size(), 9u);
  EXPECT_TRUE(contains(fix.points, SpherePoint::south_pole()));
  EXPECT_TRUE(contains(fix.points, SpherePoint::north_pole()));
  for (int k = 0; k < 7; ++k) EXPECT_TRUE(contains(fix.points, SpherePoint::from_north(std::polar(1.0, kTwoPi * k / 7))));
}

TEST(FixedPoints, QuadraticAtZero) {
  const auto fix = fixed_points(parse_map_spec("quad:c=0"), 1);
  ASSERT_EQ(fix.points.size(), 3u);
  for (Complex z : {Complex(0.0), Complex(1.0)}) EXPECT_TRUE(contains(fix.points, SpherePoint::from_north(z)));
  EXPECT_TRUE(contains(fix.points, SpherePoint::north_pole()));
}

TEST(FixedPoints, RadialShiftHasOnlyThePoles) {
  // s -> s + ln 2 with doubled angle: the map (r, theta) -> (2r, 2theta)
  const auto fix = fixed_points(parse_map_spec("product:q=affine(1,0.69314718056);d=2"), 5);
  EXPECT_EQ(fix.points.size(), 2u);
  EXPECT_FALSE(fix.continuum());
}

TEST(FixedPoints, ExpandingLatitudeProductCounts) {
  // q(s)=2s fixes s=0 and both poles; angular equation 2^n theta = theta gives 2^n - 1 points
  for (int n = 1; n <= 5; ++n)
    EXPECT_EQ(static_cast<long>(fixed_points(parse_map_spec("product:q=affine(2,0);d=2"), n).points.size()), (1L << n) + 1) << n;
}

TEST(FixedPoints, IdentityIsAContinuum) {
  const auto fix = fixed_points(parse_map_spec("product:q=affine(1,0);d=1"), 1);
  EXPECT_TRUE(fix.continuum());
}

TEST(Growth, SquareHasRate) {
  const auto r = growth_report(parse_map_spec("power:d=2"), 8);
  ASSERT_EQ(r.rows.size(), 8u);
  for (const auto& row : r.rows) EXPECT_EQ(*row.count, (1L << row.n) + 1);
  EXPECT_NEAR(*r.rows.back().rate, std::log(257.0) / 8, 1e-12);
  EXPECT_TRUE(r.has_rate_numerically);
}

TEST(Growth, QuadraticHasRate) {
  const auto r = growth_report(parse_map_spec("quad:c=0.1"), 6, false);
  for (const auto& row : r.rows) EXPECT_EQ(*row.count, (1L << row.n) + 1);
  EXPECT_TRUE(r.has_rate_numerically);
}

TEST(Growth, RadialShiftLacksRate) {
  const auto r = growth_report(parse_map_spec("product:q=affine(1,0.69314718056);d=2"), 8, false);
  for (const auto& row : r.rows) EXPECT_EQ(*row.count, 2);
  EXPECT_FALSE(r.has_rate_numerically);
}

TEST(Growth, CsvLayout) {
  std::ostringstream out;
  write_census_csv(out, growth_report(parse_map_spec("power:d=2"), 2));
  EXPECT_EQ(out.str(), "n,count,rate,bound_dn,theorem3_sum\n1,3,1.09861228867,2,1\n2,5,0.804718956217,4,3\n");
}

TEST(Crosscheck, SquareSatisfiesInequalities) {
  const auto r = theorem_a_crosscheck(parse_map_spec("power:d=2"), 4);
  EXPECT_EQ(r.scope, CrosscheckReport::Scope::InScope);
  ASSERT_FALSE(r.rows.empty());
  EXPECT_EQ(r.rows[0].theorem3_sum, 1);
  EXPECT_EQ(r.rows[0].count, 3);
  EXPECT_TRUE(r.inequalities_hold);
}

TEST(Crosscheck, RadialShiftFailsAttractorHypothesis) {
  const auto r = theorem_a_crosscheck(parse_map_spec("product:q=affine(1,0.69314718056);d=2"), 3);
  EXPECT_TRUE(r.hypothesis.pass);
  EXPECT_EQ(r.scope, CrosscheckReport::Scope::AttractorHypothesisFails);
  EXPECT_FALSE(r.south_attracts);
}

TEST(Crosscheck, QuadraticFailsHypothesis) {
  const auto r = theorem_a_crosscheck(parse_map_spec("quad:c=0.1"), 3);
  EXPECT_EQ(r.scope, CrosscheckReport::Scope::HypothesisFailed);
  EXPECT_TRUE(r.hypothesis.witness.has_value());
}
