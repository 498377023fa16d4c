#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "sphere/annuli.hpp"
#include "sphere/winding.hpp"

using namespace sphere;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST(Winding, UnitCircle) {
  const auto c = SampledCurve::circle(0.0, 1.0, 64);
  EXPECT_EQ(winding_number(c, 0.0), 1);
  EXPECT_EQ(winding_number(c, 3.0), 0);
  EXPECT_EQ(winding_number(concatenate(c, c), 0.0), 2);
  EXPECT_EQ(winding_number(c.reversed(), 0.0), -1);
}

TEST(Winding, AnalyticOracleForOffCenterPoints) {
  // exact argument sum of e^{it} - p: 1 inside, 0 outside
  const auto c = SampledCurve::circle(Complex(0.3, -0.2), 0.8, 200);
  for (Complex p : {Complex(0.3, -0.2), Complex(0.9, 0.0), Complex(1.2, 0.0), Complex(-2.0, 1.0)}) {
    const int expected = std::abs(p - Complex(0.3, -0.2)) < 0.8 ? 1 : 0;
    EXPECT_EQ(winding_number(c, p), expected) << p;
  }
}

TEST(Winding, PointOnCurveRaises) {
  const auto c = SampledCurve::circle(0.0, 1.0, 64);
  try {
    (void)winding_number(c, c.points()[5]);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PointOnCurve);
  }
}

TEST(Winding, InnOutClassification) {
  const auto c = SampledCurve::circle(0.0, 1.0, 64);
  EXPECT_EQ(classify(c, 0.0), Side::Inn);
  EXPECT_EQ(classify(c, 3.0), Side::Out);
  EXPECT_EQ(classify(concatenate(c, c.reversed()), 0.0), Side::Out);
}

TEST(Winding, Essential) {
  EXPECT_TRUE(is_essential(SampledCurve::circle(0.0, 1.0)));
  EXPECT_FALSE(is_essential(SampledCurve::circle(1.0, 0.1)));
  EXPECT_TRUE(is_essential(latitude_circle(0.5)));
  EXPECT_TRUE(is_essential(latitude_circle(-0.5)));
}

TEST(Winding, FieldOfPowerAdvancesByDegree) {
  for (int d : {-3, -1, 1, 2, 7}) {
    auto field = [d](double t) { return std::polar(1.0, kTwoPi * d * t); };
    std::vector<double> ts(5);
    for (int i = 0; i < 5; ++i) ts[i] = i / 5.0;
    EXPECT_EQ(winding_of_field(field, ts), d);
  }
}

TEST(Winding, DenseParamsAvoidAliasing) {
  const auto c = SampledCurve::circle(0.0, 1.0, 16);
  auto field = [&](double t) {
    const Complex z = c.at(t);
    return std::pow(z, 128);
  };
  EXPECT_EQ(winding_of_field(field, dense_params(c, samples_for_degree(128))), 128);
}

TEST(Winding, CsvRoundTrip) {
  const auto c = SampledCurve::circle(Complex(0.1, 0.2), 0.5, 32, Chart::South);
  std::stringstream ss;
  write_curve_csv(ss, c);
  const auto back = read_curve_csv(ss);
  ASSERT_EQ(back.size(), c.size());
  EXPECT_EQ(back.chart(), Chart::South);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(std::abs(back.points()[i] - c.points()[i]), 0.0, 1e-11);
}

TEST(Winding, CsvRejectsShortCurves) {
  std::stringstream ss("# chart=north\n0,0\n1,0\n");
  EXPECT_THROW((void)read_curve_csv(ss), Error);
}
