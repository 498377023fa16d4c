#pragma once

#include <array>
#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sphere/error.hpp"

namespace sphere {

using Complex = std::complex<double>;

/// The two standard charts of the Riemann sphere. In the north chart the
/// coordinate z puts S at z=0 and N at infinity; the south chart uses w=1/z.
enum class Chart { North, South };

constexpr Chart other(Chart c) { return c == Chart::North ? Chart::South : Chart::North; }
std::string_view to_string(Chart c);

/// A point of S² held as a coordinate in one of the two charts.
class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(Complex value, Chart chart) : value_(value), chart_(chart) {}

  static SpherePoint south_pole() { return {0.0, Chart::North}; }
  static SpherePoint north_pole() { return {0.0, Chart::South}; }
  static SpherePoint from_north(Complex z) { return SpherePoint(z, Chart::North).normalized(); }
  /// The point num/den in the north chart; den == 0 gives N.
  static SpherePoint from_ratio(Complex num, Complex den);
  /// z = exp(s + iθ); s = -inf is S, s = +inf is N.
  static SpherePoint from_latitude(double s, double theta);

  Complex value() const { return value_; }
  Chart chart() const { return chart_; }

  /// Same point re-expressed so that |value| <= 1.
  SpherePoint normalized() const;

  bool is_pole() const { return value_ == 0.0; }
  bool is_south_pole() const { return value_ == 0.0 && chart_ == Chart::North; }
  bool is_north_pole() const { return value_ == 0.0 && chart_ == Chart::South; }

  /// Coordinate in the given chart, or nullopt for that chart's point at infinity.
  std::optional<Complex> coordinate(Chart c) const;

  /// log|z| in the north chart, ±inf at the poles.
  double latitude() const;
  /// arg z in the north chart (0 at the poles).
  double longitude() const;

  /// Point on the unit sphere in R³ (inverse stereographic projection).
  std::array<double, 3> unit_vector() const;

 private:
  Complex value_{0.0};
  Chart chart_{Chart::North};
};

double chordal_distance(const SpherePoint& a, const SpherePoint& b);

/// Re-express p in the target chart. Throws PoleHasNoCoordinate when p is the
/// point at infinity of the target chart.
SpherePoint to_chart(const SpherePoint& p, Chart target);

/// A complex number pointing in the direction of coord(target) - base, where
/// coordinates are taken in `chart`. Finite even when target is that chart's
/// point at infinity approached from a finite direction; exactly zero only when
/// the direction is undefined. `magnitude` receives |coord(target) - base|
/// (inf when target sits at the chart's infinity).
Complex direction_from(const SpherePoint& target, Complex base, Chart chart,
                       double* magnitude = nullptr);

// ---------------------------------------------------------------------------

/// A function of the log-latitude s with values in the extended line.
class RadialProfile {
 public:
  enum class Kind { Affine, PiecewiseLinear, Poly };

  struct Breakpoint {
    double s;
    double value;  // may be ±inf: the profile reaches a pole level at s
  };

  static RadialProfile affine(double a, double b);
  static RadialProfile zero() { return affine(0.0, 0.0); }
  static RadialProfile piecewise_linear(std::vector<Breakpoint> breakpoints);
  static RadialProfile poly(std::vector<double> coefficients);

  Kind kind() const { return kind_; }
  double affine_slope() const { return a_; }
  double affine_offset() const { return b_; }
  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

  /// Evaluate; s = ±inf returns the end limits.
  double operator()(double s) const;
  double derivative(double s) const;
  /// Limit as s -> -inf (side < 0) or s -> +inf (side > 0).
  double limit(int side) const;

  /// Finite latitudes where the profile takes an infinite value, ascending.
  std::vector<Breakpoint> pole_levels() const;
  bool attains_infinity() const { return !pole_levels().empty(); }

  /// All finite s with profile(s) == v, ascending. v may be ±inf.
  std::vector<double> solve(double v) const;

  bool operator==(const RadialProfile&) const = default;

 private:
  RadialProfile() = default;
  double pwl_value(double s) const;
  double pwl_derivative(double s) const;
  double end_slope(int side) const;

  Kind kind_{Kind::Affine};
  double a_{0.0}, b_{0.0};
  std::vector<Breakpoint> breakpoints_;
  std::vector<double> coefficients_;
};

// ---------------------------------------------------------------------------

/// Polynomial with coefficients in ascending order of power.
using Poly = std::vector<Complex>;

class MapSpec;

struct PowerMap {
  int exponent;
};
struct QuadraticMap {
  Complex c;
};
struct RationalMap {
  Poly numerator;
  Poly denominator;
};
struct ProductMap {
  RadialProfile radial;
  int angular_degree;
  RadialProfile twist;
};
struct IterateMap {
  std::shared_ptr<const MapSpec> inner;
  int count;
};

/// A closed-form endomorphism of S² together with its topological degree.
class MapSpec {
 public:
  using Variant = std::variant<PowerMap, QuadraticMap, RationalMap, ProductMap, IterateMap>;

  static MapSpec power(int exponent);
  static MapSpec quadratic(Complex c);
  /// Throws InvalidSpec when P and Q share a root (tolerance 1e-10) or are degenerate.
  static MapSpec rational(Poly numerator, Poly denominator);
  static MapSpec product(RadialProfile radial, int angular_degree,
                         RadialProfile twist = RadialProfile::zero());
  static MapSpec iterate(const MapSpec& inner, int count);

  const Variant& variant() const { return variant_; }
  long declared_degree() const { return declared_degree_; }

  template <class T>
  const T* as() const { return std::get_if<T>(&variant_); }

  bool is_algebraic() const;  // Power, Quadratic, Rational or an iterate of one
  bool is_product() const;    // Product or an iterate of one

 private:
  MapSpec(Variant v, long degree) : variant_(std::move(v)), declared_degree_(degree) {}

  Variant variant_;
  long declared_degree_;
};

/// f(p). Pure; never leaves a coordinate larger than 1 in modulus.
SpherePoint evaluate(const MapSpec& map, const SpherePoint& p);

/// The point playing the role of S for the map: the attracting fixed point
/// near 0 for quadratics z²+c, the chart origin otherwise. N is always ∞.
Complex south_pole_coordinate(const MapSpec& map);

// ---------------------------------------------------------------------------
// Rational stages and latitude-preserving forms used by the analyses.

/// One rational map P/Q with homogeneous degree max(deg P, deg Q).
struct RationalStage {
  Poly numerator;
  Poly denominator;
  int degree;
};

/// Flatten an algebraic spec into the stages applied in order; nullopt for
/// product-type specs.
std::optional<std::vector<RationalStage>> rational_stages(const MapSpec& map);

SpherePoint evaluate_stage(const RationalStage& stage, const SpherePoint& p);

/// (s, θ) ↦ (R(s), D·θ + H(s)) for a product map or an iterate of one.
class LatitudeForm {
 public:
  explicit LatitudeForm(std::vector<ProductMap> stages);

  long angular_degree() const { return angular_degree_; }
  /// R(s); ±inf when the orbit reaches a pole.
  double radial(double s) const;
  double radial_derivative(double s) const;
  /// Accumulated twist H(s) (requires R finite along the orbit).
  double twist(double s) const;
  /// Image latitude and longitude.
  std::pair<double, double> apply(double s, double theta) const;
  /// Finite s with R(s) == v, ascending (v may be ±inf).
  std::vector<double> radial_preimages(double v) const;
  /// Finite s where R(s) hits a pole level, ascending, with the pole sign.
  std::vector<RadialProfile::Breakpoint> pole_levels() const;
  /// Sign-counted degree of R as a self-map of the extended line.
  int radial_degree() const;
  double limit(int side) const;

  const std::vector<ProductMap>& stages() const { return stages_; }

 private:
  std::vector<ProductMap> stages_;
  long angular_degree_;
};

std::optional<LatitudeForm> latitude_form(const MapSpec& map);

/// Horner evaluation with derivative.
std::pair<Complex, Complex> evaluate_poly(const Poly& p, Complex z);
/// Degree after dropping exactly-zero leading coefficients (-1 for the zero poly).
int poly_degree(const Poly& p);

// ---------------------------------------------------------------------------
// Map-spec grammar: power:d=2 | quad:c=0.1+0.0i | rational:P=1,0,0;Q=0,0,1 |
// product:q=affine(2,0);d=2;h=zero | iter:n=3(power:d=2)

MapSpec parse_map_spec(std::string_view text);
std::string format_map_spec(const MapSpec& map);
Complex parse_complex(std::string_view text);
std::string format_complex(Complex c);
/// %.12g with "inf"/"-inf".
std::string format_real(double x);

}  // namespace sphere
