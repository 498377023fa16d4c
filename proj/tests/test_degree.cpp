#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sphere/annuli.hpp"
#include "sphere/degree.hpp"

using namespace sphere;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Sign of the real Jacobian of f at z by central differences.
int jacobian_sign(const MapSpec& f, Complex z) {
  const double h = 1e-6;
  auto g = [&](Complex w) { return *evaluate(f, SpherePoint(w, Chart::North)).coordinate(Chart::North); };
  const Complex dx = (g(z + h) - g(z - h)) / (2 * h);
  const Complex dy = (g(z + Complex(0, h)) - g(z - Complex(0, h))) / (2 * h);
  const double det = dx.real() * dy.imag() - dx.imag() * dy.real();
  return det > 0 ? 1 : -1;
}

/// Winding of the sampled image of a latitude circle about S, by plain polyline winding.
int image_winding(const MapSpec& f, double s) {
  std::vector<Complex> pts;
  for (int i = 0; i < 4096; ++i)
    pts.push_back(*evaluate(f, SpherePoint::from_latitude(s, kTwoPi * i / 4096.0)).coordinate(Chart::North));
  return winding_number(SampledCurve(pts), 0.0);
}

}  // namespace

TEST(LocalDegree, PowerAtOrigin) {
  EXPECT_EQ(local_degree(parse_map_spec("power:d=3"), SpherePoint::from_north(0.0), SpherePoint::from_north(0.0), 0.1), 3);
}

TEST(LocalDegree, RegularPointMatchesJacobianSign) {
  const auto f = parse_map_spec("power:d=2");
  const auto one = SpherePoint::from_north(1.0);
  EXPECT_EQ(local_degree(f, one, one, 0.05), jacobian_sign(f, 1.0));
  EXPECT_EQ(local_degree(f, one, one, 0.05), 1);
}

TEST(LocalDegree, QuadraticAtInfinity) {
  EXPECT_EQ(local_degree(parse_map_spec("quad:c=0"), SpherePoint::north_pole(), SpherePoint::north_pole(), 0.1), 2);
}

TEST(LocalDegree, OrientationReversingProduct) {
  const auto f = parse_map_spec("product:q=affine(1,0);d=-2");
  const auto x = SpherePoint::from_latitude(0.2, 0.3);
  const auto y = evaluate(f, x);
  EXPECT_EQ(local_degree(f, x, y, 0.01), -1);
  EXPECT_EQ(jacobian_sign(f, std::exp(Complex(0.2, 0.3))), -1);
}

TEST(GlobalDegree, SquareRootsOfUnity) {
  const auto r = global_degree(parse_map_spec("power:d=2"), SpherePoint::from_north(1.0));
  EXPECT_EQ(r.global, 2);
  ASSERT_EQ(r.witnesses.size(), 2u);
  for (const auto& w : r.witnesses) {
    const Complex z = *w.point.coordinate(Chart::North);
    EXPECT_NEAR(std::abs(z * z - 1.0), 0.0, 1e-12);
    EXPECT_EQ(w.local_degree, 1);
  }
}

TEST(GlobalDegree, GenericValues) {
  numeric::Rng rng(11);
  EXPECT_EQ(global_degree(parse_map_spec("quad:c=0.1"), rng).global, 2);
  const auto r = global_degree(parse_map_spec("product:q=affine(1,0);d=3"), rng);
  EXPECT_EQ(r.global, 3);
  EXPECT_EQ(r.witnesses.size(), 3u);
  EXPECT_EQ(global_degree(parse_map_spec("power:d=-2"), rng).global, 2);  // holomorphic
  EXPECT_EQ(global_degree(parse_map_spec("rational:P=1,0,2;Q=0,3,1"), rng).global, 2);
  EXPECT_EQ(global_degree(parse_map_spec("iter:n=2(quad:c=0.1)"), rng).global, 4);
}

TEST(GlobalDegree, DegreeZeroHasEmptyFibre) {
  numeric::Rng rng(3);
  const auto r = global_degree(parse_map_spec("product:q=affine(2,0);d=0"), rng);
  EXPECT_EQ(r.global, 0);
  EXPECT_TRUE(r.witnesses.empty());
}

TEST(AnnularDegree, Examples) {
  const auto unit = SampledCurve::circle(0.0, 1.0, 64);
  EXPECT_EQ(annular_degree(parse_map_spec("power:d=2"), unit), 2);
  const auto inv = parse_map_spec("rational:P=1;Q=0,1");
  EXPECT_NEAR(std::abs(*evaluate(inv, SpherePoint::from_north(2.0)).coordinate(Chart::North) - 0.5), 0.0, 1e-15);
  EXPECT_EQ(annular_degree(inv, unit), -1);
}

TEST(AnnularDegree, ProductMatchesSampledImage) {
  const auto f = parse_map_spec("product:q=affine(-1,0);d=2");
  EXPECT_EQ(annular_degree(f, latitude_circle(0.3)), image_winding(f, 0.3));
}

TEST(AnnularDegree, HighDegreeDoesNotAlias) {
  EXPECT_EQ(annular_degree(parse_map_spec("power:d=128"), latitude_circle(0.0)), 128);
}

TEST(Cactus, SingleSphere) {
  const auto f = parse_map_spec("power:d=2");
  const auto r = cactus_check(f, decompose(f));
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].d_i, 2);
  EXPECT_EQ(r.entries[0].delta, 2);
  EXPECT_TRUE(r.pass);
}

TEST(Cactus, ThreeCrossingsOracle) {
  const auto f = parse_map_spec("product:q=pwl(-2:-1,-1:inf,1:-inf,2:1);d=2");
  const auto comps = decompose(f);
  const auto r = cactus_check(f, comps);
  ASSERT_EQ(r.entries.size(), 3u);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.sum, 2);
  // oracle: count preimages of a fixed regular value in each latitude band, weighted by
  // the sign of q' there (angular part preserves orientation for d > 0)
  const auto form = *latitude_form(f);
  const double v = 0.37;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    int expected = 0;
    for (double s : form.radial_preimages(v))
      if (s > comps[i].lower_s && s < comps[i].upper_s) expected += 2 * (form.radial_derivative(s) > 0 ? 1 : -1);
    EXPECT_EQ(r.entries[i].d_i, expected) << "component " << i;
    EXPECT_EQ(std::abs(r.entries[i].d_i), std::abs(r.entries[i].delta));
  }
}

TEST(Cactus, IterateMultipliesDegree) {
  const auto f = parse_map_spec("iter:n=2(power:d=2)");
  const auto r = cactus_check(f, decompose(f));
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].d_i, 4);
  EXPECT_EQ(r.entries[0].delta, 4);
  EXPECT_TRUE(r.pass);
}
