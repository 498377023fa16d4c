#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sphere/charts.hpp"

using namespace sphere;

TEST(Charts, NorthToSouthIsReciprocal) {
  const auto p = to_chart(SpherePoint(2.0, Chart::North), Chart::South);
  EXPECT_EQ(p.chart(), Chart::South);
  EXPECT_NEAR(std::abs(p.value() - 0.5), 0.0, 1e-15);
  const auto q = to_chart(SpherePoint(1.0, Chart::North), Chart::South);
  EXPECT_NEAR(std::abs(q.value() - 1.0), 0.0, 1e-15);
}

TEST(Charts, PoleHasNoCoordinateInOppositeChart) {
  try {
    (void)to_chart(SpherePoint::south_pole(), Chart::South);
    FAIL() << "expected PoleHasNoCoordinate";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PoleHasNoCoordinate);
  }
  EXPECT_FALSE(SpherePoint::north_pole().coordinate(Chart::North).has_value());
}

TEST(Charts, NormalizedKeepsValueInUnitDisk) {
  const auto p = SpherePoint(Complex(3.0, -4.0), Chart::North).normalized();
  EXPECT_EQ(p.chart(), Chart::South);
  EXPECT_LE(std::abs(p.value()), 1.0);
  EXPECT_NEAR(chordal_distance(p, SpherePoint(Complex(3.0, -4.0), Chart::North)), 0.0, 1e-15);
}

TEST(Charts, RoundTripRelativeError) {
  for (double e = -6.0; e <= 6.0; e += 0.25) {
    for (int k = 0; k < 8; ++k) {
      const Complex z = std::polar(std::pow(10.0, e), 0.7 + k * std::numbers::pi / 4.0);
      const auto back = to_chart(to_chart(SpherePoint(z, Chart::North), Chart::South), Chart::North);
      EXPECT_LE(std::abs(back.value() - z) / std::abs(z), 1e-12) << "z=" << z;
    }
  }
}

TEST(Charts, LatitudeCoordinates) {
  const auto p = SpherePoint::from_latitude(0.3, 1.1);
  EXPECT_NEAR(p.latitude(), 0.3, 1e-14);
  EXPECT_NEAR(p.longitude(), 1.1, 1e-14);
  EXPECT_EQ(SpherePoint::south_pole().latitude(), -INFINITY);
  EXPECT_EQ(SpherePoint::north_pole().latitude(), INFINITY);
}

TEST(Evaluate, PlugInExamples) {
  const auto sq = parse_map_spec("power:d=2");
  EXPECT_NEAR(std::abs(*evaluate(sq, SpherePoint::from_north(2.0)).coordinate(Chart::North) - 4.0), 0.0, 1e-14);
  EXPECT_TRUE(evaluate(sq, SpherePoint::north_pole()).normalized().is_north_pole());
  const auto quad = parse_map_spec("quad:c=0.1");
  EXPECT_NEAR(std::abs(*evaluate(quad, SpherePoint::from_north(0.0)).coordinate(Chart::North) - 0.1), 0.0, 1e-15);
}

TEST(Evaluate, ProductAffineActsOnLogLatitude) {
  const auto f = parse_map_spec("product:q=affine(1,0.5);d=3;h=affine(0,0.2)");
  const auto img = evaluate(f, SpherePoint::from_latitude(0.1, 0.4));
  EXPECT_NEAR(img.latitude(), 0.6, 1e-13);
  EXPECT_NEAR(std::remainder(img.longitude() - (1.2 + 0.2), 2 * std::numbers::pi), 0.0, 1e-13);
}

TEST(Parse, RoundTripsAndRejectsGarbage) {
  for (const char* text : {"power:d=-2", "quad:c=0.1+0.1i", "rational:P=1,0,2;Q=0,3,1",
                           "product:q=pwl(-2:-1,-1:inf,1:-inf,2:1);d=2", "iter:n=2(power:d=2)"}) {
    const auto spec = parse_map_spec(text);
    const auto again = parse_map_spec(format_map_spec(spec));
    EXPECT_EQ(spec.declared_degree(), again.declared_degree()) << text;
  }
  for (const char* bad : {"", "power", "power:d=x", "quad:c=", "product:q=affine(1);d=2", "nope:d=2"}) {
    try {
      (void)parse_map_spec(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError) << bad;
    }
  }
}

TEST(Profile, PiecewiseLinearPoleLevels) {
  const auto q = RadialProfile::piecewise_linear({{-2, -1}, {-1, INFINITY}, {1, -INFINITY}, {2, 1}});
  const auto levels = q.pole_levels();
  ASSERT_EQ(levels.size(), 2u);
  EXPECT_DOUBLE_EQ(levels[0].s, -1.0);
  EXPECT_DOUBLE_EQ(levels[1].s, 1.0);
  EXPECT_EQ(q.solve(0.0).size(), 3u);
}
