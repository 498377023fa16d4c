#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sphere/degree.hpp"
#include "sphere/gallery.hpp"
#include "sphere/lefschetz.hpp"

using namespace sphere;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST(Properties, ChartRoundTripOnRandomPoints) {
  numeric::Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Complex z = std::polar(std::pow(10.0, rng.uniform(-6, 6)), rng.uniform(0, kTwoPi));
    const auto back = to_chart(to_chart(SpherePoint(z, Chart::North), Chart::South), Chart::North);
    ASSERT_LE(std::abs(back.value() - z) / std::abs(z), 1e-12);
  }
}

TEST(Properties, IterateEqualsRepeatedEvaluation) {
  numeric::Rng rng(2);
  for (const char* text : {"quad:c=0.1+0.1i", "rational:P=1,0,2;Q=0,3,1", "product:q=affine(2,0.3);d=2;h=affine(0.5,0.1)"}) {
    const auto f = parse_map_spec(text);
    const auto f3 = MapSpec::iterate(f, 3);
    for (int i = 0; i < 1000; ++i) {
      const auto p = SpherePoint::from_latitude(rng.uniform(-1.5, 1.5), rng.uniform(0, kTwoPi));
      const auto direct = evaluate(f3, p);
      const auto stepped = evaluate(f, evaluate(f, evaluate(f, p)));
      ASSERT_LT(chordal_distance(direct, stepped), 1e-9) << text;
    }
  }
}

TEST(Properties, ChartSwapFlipsWindingAboutPole) {
  numeric::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Complex c = std::polar(rng.uniform(0, 0.5), rng.uniform(0, kTwoPi));
    const double r = rng.uniform(0.6, 3.0);
    const auto north = SampledCurve::circle(c, r, 128);
    std::vector<Complex> south;
    for (Complex z : north.points()) south.push_back(1.0 / z);
    EXPECT_EQ(winding_number(SampledCurve(south, Chart::South), 0.0), -winding_number(north, 0.0));
  }
}

TEST(Properties, WindingAdditiveUnderConcatenation) {
  numeric::Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto a = SampledCurve::circle(Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)), rng.uniform(0.5, 2), 64);
    const auto b = SampledCurve::circle(Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)), rng.uniform(0.5, 2), 64);
    const Complex p(rng.uniform(-3, 3), rng.uniform(-3, 3));
    try {
      EXPECT_EQ(winding_number(concatenate(a, b.reversed()), p), winding_number(a, p) - winding_number(b, p));
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::PointOnCurve);
    }
  }
}

TEST(Properties, LefschetzAdditiveOverSplitRectangles) {
  numeric::Rng rng(5);
  const auto f = parse_map_spec("quad:c=0.1+0.1i");
  auto g = [&](Complex z) { return *evaluate(f, SpherePoint(z, Chart::North)).coordinate(Chart::North); };
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    const double x0 = rng.uniform(-1.5, 0.5), y0 = rng.uniform(-1.5, 0.5);
    const double w = rng.uniform(0.3, 1.5), h = rng.uniform(0.3, 1.5);
    const double xm = x0 + w * rng.uniform(0.3, 0.7);
    try {
      const int whole = lefschetz_index(g, Rect{x0, x0 + w, y0, y0 + h}.boundary(64));
      const int left = lefschetz_index(g, Rect{x0, xm, y0, y0 + h}.boundary(64));
      const int right = lefschetz_index(g, Rect{xm, x0 + w, y0, y0 + h}.boundary(64));
      EXPECT_EQ(whole, left + right);
      ++checked;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::FixedPointOnCurve);
    }
  }
  EXPECT_GT(checked, 90);
}

TEST(Properties, DegreeIndependentOfRegularValue) {
  numeric::Rng rng(6);
  for (const auto& m : gallery_maps()) {
    const auto f = parse_map_spec(m.spec);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(global_degree(f, rng).global, f.declared_degree()) << m.name;
  }
}

TEST(Properties, LocalDegreeStableUnderRadius) {
  const auto f = parse_map_spec("power:d=4");
  for (double r : {0.01, 0.05, 0.2}) EXPECT_EQ(local_degree(f, SpherePoint::south_pole(), SpherePoint::south_pole(), r), 4);
}
