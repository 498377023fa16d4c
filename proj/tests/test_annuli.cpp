#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "sphere/annuli.hpp"
#include "sphere/degree.hpp"

using namespace sphere;

TEST(PolePreimages, PowerHasOnlyPoles) {
  const auto pre = pole_preimages(parse_map_spec("power:d=2"));
  ASSERT_EQ(pre.size(), 2u);
  for (const auto& p : pre) {
    EXPECT_EQ(p.type, PoleType::TypeI);
    ASSERT_TRUE(p.point.has_value());
    EXPECT_TRUE(p.point->is_pole());
  }
}

TEST(PolePreimages, QuadraticHasIsolatedPreimageOfS) {
  const auto pre = pole_preimages(parse_map_spec("quad:c=0.1"));
  const auto n3 = std::count_if(pre.begin(), pre.end(), [](const auto& p) { return p.type == PoleType::TypeIII; });
  EXPECT_GE(n3, 1);
  for (const auto& p : pre) {
    if (p.type != PoleType::TypeIII) continue;
    ASSERT_TRUE(p.point.has_value());
    const Complex z = *p.point->coordinate(Chart::North);
    // S' solves z^2 + 0.1 = s* where s* is the attracting fixed point near 0
    const double s_star = (1.0 - std::sqrt(1.0 - 0.4)) / 2.0;
    EXPECT_NEAR(std::abs(z * z + 0.1 - s_star), 0.0, 1e-10);
  }
}

TEST(PolePreimages, ProductLevelsAreCircles) {
  const auto pre = pole_preimages(parse_map_spec("product:q=pwl(-2:-1,-1:inf,1:-inf,2:1);d=2"));
  std::vector<double> levels;
  for (const auto& p : pre)
    if (p.type == PoleType::TypeII) levels.push_back(*p.level);
  std::sort(levels.begin(), levels.end());
  ASSERT_EQ(levels.size(), 2u);
  EXPECT_DOUBLE_EQ(levels[0], -1.0);
  EXPECT_DOUBLE_EQ(levels[1], 1.0);
}

TEST(Decompose, ExpandingProductIsRepelling) {
  const auto comps = decompose(parse_map_spec("product:q=affine(2,0);d=2"));
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_EQ(comps[0].delta, 2);
  EXPECT_TRUE(comps[0].repelling);
}

TEST(Decompose, ContractingProductIsNot) {
  const auto comps = decompose(parse_map_spec("product:q=affine(0.5,0);d=2"));
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_FALSE(comps[0].repelling);
}

TEST(Decompose, IsolatedPreimageMeansNotStraightened) {
  try {
    (void)decompose(parse_map_spec("quad:c=0.1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotStraightened);
  }
}

TEST(Decompose, DeltaAgreesWithAnnularDegreeOfCore) {
  for (const char* text : {"power:d=3", "product:q=affine(2,0);d=-1",
                           "product:q=pwl(-2:-1,-1:inf,1:-inf,2:1);d=2"}) {
    const auto f = parse_map_spec(text);
    for (const auto& c : decompose(f)) EXPECT_EQ(c.delta, annular_degree(f, c.core)) << text;
  }
}

TEST(Repelling, WindowEndpointArithmetic) {
  const Window w{-1.0, 1.0};
  EXPECT_TRUE(is_repelling(parse_map_spec("product:q=affine(2,0);d=2"), w));
  EXPECT_FALSE(is_repelling(parse_map_spec("product:q=affine(0.5,0);d=2"), w));
  EXPECT_FALSE(is_repelling(parse_map_spec("product:q=affine(1,1);d=2"), w));
}

TEST(Repelling, TouchingBoundaryRaises) {
  try {
    (void)is_repelling(parse_map_spec("product:q=pwl(-1:-2,1:1);d=2"), Window{-1.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BoundaryTouchesImage);
  }
}

TEST(Theorem3, BoundFromDelta) {
  auto with_delta = [](int delta) {
    return AnnulusComponent{-INFINITY, INFINITY, {-1, 1}, latitude_circle(0.0), delta, delta, true, false};
  };
  EXPECT_EQ(theorem3_bound(with_delta(2)), 1);
  EXPECT_EQ(theorem3_bound(with_delta(-1)), 2);
  EXPECT_EQ(theorem3_bound(with_delta(1)), 0);
  auto attracting = with_delta(2);
  attracting.repelling = false;
  EXPECT_THROW((void)theorem3_bound(attracting), Error);
}

TEST(HypothesisH, PassAndFail) {
  EXPECT_TRUE(check_hypothesis_H(parse_map_spec("power:d=2")).pass);
  EXPECT_TRUE(check_hypothesis_H(parse_map_spec("product:q=affine(2,0);d=3")).pass);
  const auto r = check_hypothesis_H(parse_map_spec("quad:c=0.1"));
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_FALSE(is_essential(*r.witness));
  EXPECT_NE(r.witness_winding, 0);
}

TEST(LatitudeCircle, OrientedFromNorthChart) {
  for (double s : {-0.7, 0.0, 0.7}) {
    const auto c = latitude_circle(s);
    // the identity map has annular degree +1 on every latitude circle
    EXPECT_EQ(annular_degree(parse_map_spec("power:d=1"), c), 1) << s;
  }
}
