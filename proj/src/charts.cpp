#include "sphere/charts.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "sphere/numeric.hpp"
#include "sphere/roots.hpp"

namespace sphere {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

Complex ipow(Complex z, unsigned n) {
  Complex result = 1.0;
  while (n != 0) {
    if (n & 1U) result *= z;
    z *= z;
    n >>= 1U;
  }
  return result;
}

double sign_of(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

}  // namespace

std::string_view to_string(Chart c) { return c == Chart::North ? "north" : "south"; }

// --- SpherePoint -------------------------------------------------------------

SpherePoint SpherePoint::from_ratio(Complex num, Complex den) {
  if (num == 0.0 && den == 0.0) throw Error(ErrorKind::NumericalFailure, "indeterminate ratio 0/0");
  if (std::abs(num) <= std::abs(den)) return {num / den, Chart::North};
  return {den / num, Chart::South};
}

SpherePoint SpherePoint::from_latitude(double s, double theta) {
  if (s == -kInf) return south_pole();
  if (s == kInf) return north_pole();
  if (s <= 0) return {std::polar(std::exp(s), theta), Chart::North};
  return {std::polar(std::exp(-s), -theta), Chart::South};
}

SpherePoint SpherePoint::normalized() const {
  if (std::abs(value_) <= 1.0) return *this;
  return {1.0 / value_, other(chart_)};
}

std::optional<Complex> SpherePoint::coordinate(Chart c) const {
  if (c == chart_) return value_;
  if (value_ == 0.0) return std::nullopt;
  return 1.0 / value_;
}

double SpherePoint::latitude() const {
  if (value_ == 0.0) return chart_ == Chart::North ? -kInf : kInf;
  const double l = std::log(std::abs(value_));
  return chart_ == Chart::North ? l : -l;
}

double SpherePoint::longitude() const {
  if (value_ == 0.0) return 0.0;
  const double a = std::arg(value_);
  return chart_ == Chart::North ? a : -a;
}

std::array<double, 3> SpherePoint::unit_vector() const {
  const double n2 = std::norm(value_);
  const double x = 2.0 * value_.real() / (1.0 + n2);
  const double y = 2.0 * value_.imag() / (1.0 + n2);
  const double z = (n2 - 1.0) / (n2 + 1.0);
  if (chart_ == Chart::North) return {x, y, z};
  return {x, -y, -z};
}

double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
  const auto u = a.unit_vector();
  const auto v = b.unit_vector();
  return std::sqrt((u[0] - v[0]) * (u[0] - v[0]) + (u[1] - v[1]) * (u[1] - v[1]) +
                   (u[2] - v[2]) * (u[2] - v[2]));
}

SpherePoint to_chart(const SpherePoint& p, Chart target) {
  if (p.chart() == target) return p;
  if (p.value() == 0.0) {
    throw Error(ErrorKind::PoleHasNoCoordinate,
                std::string("pole has no coordinate in the ") + std::string(to_string(target)) +
                    " chart");
  }
  return {1.0 / p.value(), target};
}

Complex direction_from(const SpherePoint& target, Complex base, Chart chart, double* magnitude) {
  if (target.chart() == chart) {
    const Complex d = target.value() - base;
    if (magnitude != nullptr) *magnitude = std::abs(d);
    return d;
  }
  // target = 1/w in `chart`: 1/w - base = (1 - base*w) * conj(w) / |w|².
  const Complex w = target.value();
  if (magnitude != nullptr) *magnitude = w == 0.0 ? kInf : std::abs(1.0 - base * w) / std::abs(w);
  return (1.0 - base * w) * std::conj(w);
}

// --- RadialProfile ----------------------------------------------------------

namespace {

using Breakpoint = RadialProfile::Breakpoint;

double segment_value(const Breakpoint& a, const Breakpoint& b, double s) {
  const double w = b.s - a.s;
  const double tau = (s - a.s) / w;
  const bool fa = std::isfinite(a.value), fb = std::isfinite(b.value);
  if (fa && fb) return a.value + (b.value - a.value) * tau;
  if (fa) return a.value + sign_of(b.value) * w * std::tan(kPi * tau / 2);
  if (fb) return b.value + sign_of(a.value) * w * std::tan(kPi * (1 - tau) / 2);
  return sign_of(b.value) * (w / 2) * std::tan(kPi * (tau - 0.5));
}

double sec2(double x) {
  const double c = std::cos(x);
  return 1.0 / (c * c);
}

double segment_derivative(const Breakpoint& a, const Breakpoint& b, double s) {
  const double w = b.s - a.s;
  const double tau = (s - a.s) / w;
  const bool fa = std::isfinite(a.value), fb = std::isfinite(b.value);
  if (fa && fb) return (b.value - a.value) / w;
  if (fa) return sign_of(b.value) * (kPi / 2) * sec2(kPi * tau / 2);
  if (fb) return -sign_of(a.value) * (kPi / 2) * sec2(kPi * (1 - tau) / 2);
  return sign_of(b.value) * (kPi / 2) * sec2(kPi * (tau - 0.5));
}

/// Solutions inside [a.s, b.s) of segment_value == v (finite v).
std::optional<double> segment_solve(const Breakpoint& a, const Breakpoint& b, double v) {
  const double w = b.s - a.s;
  const bool fa = std::isfinite(a.value), fb = std::isfinite(b.value);
  double tau;
  if (fa && fb) {
    if (a.value == b.value) return a.value == v ? std::optional<double>(a.s) : std::nullopt;
    tau = (v - a.value) / (b.value - a.value);
  } else if (fa) {
    const double t = sign_of(b.value) * (v - a.value);
    if (t < 0) return std::nullopt;
    tau = 2.0 / kPi * std::atan(t / w);
  } else if (fb) {
    const double t = sign_of(a.value) * (v - b.value);
    if (t < 0) return std::nullopt;
    tau = 1.0 - 2.0 / kPi * std::atan(t / w);
  } else {
    tau = 0.5 + std::atan(sign_of(b.value) * 2.0 * v / w) / kPi;
  }
  if (tau < 0.0 || tau >= 1.0) return std::nullopt;
  return a.s + tau * w;
}

double poly_eval(const std::vector<double>& c, double s) {
  double p = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) p = p * s + *it;
  return p;
}

}  // namespace

RadialProfile RadialProfile::affine(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw Error(ErrorKind::InvalidSpec, "affine profile needs finite a, b");
  RadialProfile p;
  p.kind_ = Kind::Affine;
  p.a_ = a;
  p.b_ = b;
  return p;
}

RadialProfile RadialProfile::piecewise_linear(std::vector<Breakpoint> breakpoints) {
  if (breakpoints.size() < 2) throw Error(ErrorKind::InvalidSpec, "pwl profile needs at least two breakpoints");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!std::isfinite(breakpoints[i].s) || std::isnan(breakpoints[i].value))
      throw Error(ErrorKind::InvalidSpec, "pwl breakpoint positions must be finite");
    if (i > 0 && !(breakpoints[i].s > breakpoints[i - 1].s))
      throw Error(ErrorKind::InvalidSpec, "pwl breakpoints must be strictly increasing");
    if (i > 0 && std::isinf(breakpoints[i].value) && breakpoints[i].value == breakpoints[i - 1].value)
      throw Error(ErrorKind::InvalidSpec, "consecutive pwl values at the same pole level");
  }
  if (!std::isfinite(breakpoints.front().value) || !std::isfinite(breakpoints.back().value))
    throw Error(ErrorKind::InvalidSpec, "outermost pwl values must be finite");
  RadialProfile p;
  p.kind_ = Kind::PiecewiseLinear;
  p.breakpoints_ = std::move(breakpoints);
  return p;
}

RadialProfile RadialProfile::poly(std::vector<double> coefficients) {
  while (coefficients.size() > 1 && coefficients.back() == 0.0) coefficients.pop_back();
  if (coefficients.empty()) coefficients.push_back(0.0);
  for (double c : coefficients)
    if (!std::isfinite(c)) throw Error(ErrorKind::InvalidSpec, "poly profile coefficients must be finite");
  RadialProfile p;
  p.kind_ = Kind::Poly;
  p.coefficients_ = std::move(coefficients);
  return p;
}

double RadialProfile::end_slope(int side) const {
  const auto& bp = breakpoints_;
  if (side < 0) return segment_derivative(bp[0], bp[1], bp[0].s);
  const std::size_t n = bp.size();
  return segment_derivative(bp[n - 2], bp[n - 1], bp[n - 1].s);
}

double RadialProfile::pwl_value(double s) const {
  const auto& bp = breakpoints_;
  if (s <= bp.front().s) return bp.front().value + end_slope(-1) * (s - bp.front().s);
  if (s >= bp.back().s) return bp.back().value + end_slope(+1) * (s - bp.back().s);
  const auto it = std::upper_bound(bp.begin(), bp.end(), s,
                                   [](double x, const Breakpoint& b) { return x < b.s; });
  const std::size_t i = static_cast<std::size_t>(it - bp.begin()) - 1;
  if (s == bp[i].s) return bp[i].value;
  return segment_value(bp[i], bp[i + 1], s);
}

double RadialProfile::pwl_derivative(double s) const {
  const auto& bp = breakpoints_;
  if (s <= bp.front().s) return end_slope(-1);
  if (s >= bp.back().s) return end_slope(+1);
  const auto it = std::upper_bound(bp.begin(), bp.end(), s,
                                   [](double x, const Breakpoint& b) { return x < b.s; });
  const std::size_t i = static_cast<std::size_t>(it - bp.begin()) - 1;
  if (std::isinf(bp[i].value) && s == bp[i].s) return std::numeric_limits<double>::quiet_NaN();
  return segment_derivative(bp[i], bp[i + 1], s);
}

double RadialProfile::operator()(double s) const {
  if (std::isinf(s)) return limit(s > 0 ? 1 : -1);
  switch (kind_) {
    case Kind::Affine: return a_ * s + b_;
    case Kind::PiecewiseLinear: return pwl_value(s);
    case Kind::Poly: return poly_eval(coefficients_, s);
  }
  return 0.0;
}

double RadialProfile::derivative(double s) const {
  switch (kind_) {
    case Kind::Affine: return a_;
    case Kind::PiecewiseLinear: return pwl_derivative(s);
    case Kind::Poly: {
      double d = 0.0;
      for (std::size_t i = coefficients_.size(); i-- > 1;) d = d * s + static_cast<double>(i) * coefficients_[i];
      return d;
    }
  }
  return 0.0;
}

double RadialProfile::limit(int side) const {
  switch (kind_) {
    case Kind::Affine:
      if (a_ == 0.0) return b_;
      return sign_of(a_) * (side > 0 ? kInf : -kInf);
    case Kind::PiecewiseLinear: {
      const double m = end_slope(side);
      if (m == 0.0) return side > 0 ? breakpoints_.back().value : breakpoints_.front().value;
      return sign_of(m) * (side > 0 ? kInf : -kInf);
    }
    case Kind::Poly: {
      const std::size_t k = coefficients_.size() - 1;
      if (k == 0) return coefficients_[0];
      const double lead = sign_of(coefficients_.back());
      if (side > 0) return lead * kInf;
      return (k % 2 == 0 ? lead : -lead) * kInf;
    }
  }
  return 0.0;
}

std::vector<Breakpoint> RadialProfile::pole_levels() const {
  std::vector<Breakpoint> out;
  if (kind_ != Kind::PiecewiseLinear) return out;
  for (const auto& b : breakpoints_)
    if (std::isinf(b.value)) out.push_back(b);
  return out;
}

std::vector<double> RadialProfile::solve(double v) const {
  std::vector<double> out;
  if (std::isnan(v)) return out;
  if (std::isinf(v)) {
    for (const auto& b : pole_levels())
      if (b.value == v) out.push_back(b.s);
    return out;
  }
  switch (kind_) {
    case Kind::Affine:
      if (a_ != 0.0) out.push_back((v - b_) / a_);
      break;
    case Kind::PiecewiseLinear: {
      const auto& bp = breakpoints_;
      const double ml = end_slope(-1), mr = end_slope(+1);
      if (ml != 0.0) {
        const double s = bp.front().s + (v - bp.front().value) / ml;
        if (s < bp.front().s) out.push_back(s);
      }
      for (std::size_t i = 0; i + 1 < bp.size(); ++i)
        if (auto s = segment_solve(bp[i], bp[i + 1], v)) out.push_back(*s);
      if (bp.back().value == v) out.push_back(bp.back().s);
      if (mr != 0.0) {
        const double s = bp.back().s + (v - bp.back().value) / mr;
        if (s > bp.back().s) out.push_back(s);
      }
      break;
    }
    case Kind::Poly: {
      auto g = [this, v](double s) { return poly_eval(coefficients_, s) - v; };
      out = numeric::sign_change_roots(g);
      break;
    }
  }
  return numeric::unique_sorted(std::move(out), 1e-12);
}

// --- MapSpec ----------------------------------------------------------------

std::pair<Complex, Complex> evaluate_poly(const Poly& p, Complex z) {
  Complex v = 0.0, dv = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    dv = dv * z + v;
    v = v * z + *it;
  }
  return {v, dv};
}

int poly_degree(const Poly& p) {
  int d = static_cast<int>(p.size()) - 1;
  while (d >= 0 && p[static_cast<std::size_t>(d)] == 0.0) --d;
  return d;
}

namespace {

Poly trimmed(Poly p) {
  p.resize(static_cast<std::size_t>(poly_degree(p) + 1));
  return p;
}

long checked_power(long base, int n) {
  long result = 1;
  for (int i = 0; i < n; ++i) {
    if (base != 0 && std::abs(result) > (1L << 62) / std::abs(base))
      throw Error(ErrorKind::InvalidSpec, "iterate degree overflows");
    result *= base;
  }
  return result;
}

}  // namespace

MapSpec MapSpec::power(int exponent) {
  if (exponent == 0) throw Error(ErrorKind::InvalidSpec, "power map needs a nonzero exponent");
  return MapSpec(PowerMap{exponent}, std::abs(static_cast<long>(exponent)));
}

MapSpec MapSpec::quadratic(Complex c) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
    throw Error(ErrorKind::InvalidSpec, "quadratic parameter must be finite");
  return MapSpec(QuadraticMap{c}, 2);
}

MapSpec MapSpec::rational(Poly numerator, Poly denominator) {
  numerator = trimmed(std::move(numerator));
  denominator = trimmed(std::move(denominator));
  if (denominator.empty()) throw Error(ErrorKind::InvalidSpec, "rational map with zero denominator");
  if (numerator.empty()) throw Error(ErrorKind::InvalidSpec, "rational map with zero numerator is constant");
  const int dp = poly_degree(numerator), dq = poly_degree(denominator);
  const int degree = std::max(dp, dq);
  if (degree == 0) throw Error(ErrorKind::InvalidSpec, "constant rational map");

  // Common roots make the local degree ill-defined.
  const Poly& smaller = dp <= dq ? numerator : denominator;
  const Poly& larger = dp <= dq ? denominator : numerator;
  if (poly_degree(smaller) >= 1) {
    for (Complex r : roots::polynomial_roots(smaller)) {
      double scale = 0.0;
      for (std::size_t i = 0; i < larger.size(); ++i)
        scale += std::abs(larger[i]) * std::pow(std::abs(r), static_cast<double>(i));
      if (std::abs(evaluate_poly(larger, r).first) <= 1e-10 * std::max(scale, 1e-300))
        throw Error(ErrorKind::InvalidSpec, "numerator and denominator share a root");
    }
  }
  return MapSpec(RationalMap{std::move(numerator), std::move(denominator)}, degree);
}

MapSpec MapSpec::product(RadialProfile radial, int angular_degree, RadialProfile twist) {
  const double lo = radial.limit(-1), hi = radial.limit(+1);
  if (std::isfinite(lo) || std::isfinite(hi))
    throw Error(ErrorKind::InvalidSpec, "product radial profile must diverge at both ends");
  if (twist.attains_infinity() || std::isinf(twist(0.0)))
    throw Error(ErrorKind::InvalidSpec, "twist profile must be finite");
  const long radial_degree = static_cast<long>((sign_of(hi) - sign_of(lo)) / 2);
  return MapSpec(ProductMap{std::move(radial), angular_degree, std::move(twist)},
                 radial_degree * angular_degree);
}

MapSpec MapSpec::iterate(const MapSpec& inner, int count) {
  if (count < 1) throw Error(ErrorKind::InvalidSpec, "iterate count must be positive");
  return MapSpec(IterateMap{std::make_shared<const MapSpec>(inner), count},
                 checked_power(inner.declared_degree(), count));
}

bool MapSpec::is_algebraic() const {
  if (const auto* it = as<IterateMap>()) return it->inner->is_algebraic();
  return !std::holds_alternative<ProductMap>(variant_);
}

bool MapSpec::is_product() const {
  if (const auto* it = as<IterateMap>()) return it->inner->is_product();
  return std::holds_alternative<ProductMap>(variant_);
}

// --- evaluation -------------------------------------------------------------

namespace {

SpherePoint evaluate_power(int e, const SpherePoint& p) {
  const SpherePoint q = p.normalized();
  const Complex v = ipow(q.value(), static_cast<unsigned>(std::abs(e)));
  const Chart chart = e > 0 ? q.chart() : other(q.chart());
  return SpherePoint(v, chart).normalized();
}

SpherePoint evaluate_quadratic(Complex c, const SpherePoint& p) {
  const SpherePoint q = p.normalized();
  const Complex v = q.value();
  if (q.chart() == Chart::North) return SpherePoint::from_ratio(v * v + c, 1.0);
  const Complex w2 = v * v;
  return SpherePoint::from_ratio(1.0 + c * w2, w2);
}

/// Homogeneous form Σ c_i a^i b^(D-i).
Complex homogeneous(const Poly& c, int degree, Complex a, Complex b) {
  const int n = static_cast<int>(c.size()) - 1;
  Complex sum = 0.0;
  Complex bp = 1.0;
  for (int i = n; i >= 0; --i) {
    sum = sum * a + c[static_cast<std::size_t>(i)] * bp;
    bp *= b;
  }
  return sum * ipow(b, static_cast<unsigned>(degree - n));
}

}  // namespace

SpherePoint evaluate_stage(const RationalStage& stage, const SpherePoint& p) {
  const SpherePoint q = p.normalized();
  Complex a = 1.0, b = 1.0;
  if (q.chart() == Chart::North) a = q.value(); else b = q.value();
  return SpherePoint::from_ratio(homogeneous(stage.numerator, stage.degree, a, b),
                                 homogeneous(stage.denominator, stage.degree, a, b));
}

SpherePoint evaluate(const MapSpec& map, const SpherePoint& p) {
  return std::visit(
      [&p](const auto& m) -> SpherePoint {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PowerMap>) {
          return evaluate_power(m.exponent, p);
        } else if constexpr (std::is_same_v<T, QuadraticMap>) {
          return evaluate_quadratic(m.c, p);
        } else if constexpr (std::is_same_v<T, RationalMap>) {
          const int degree = std::max(poly_degree(m.numerator), poly_degree(m.denominator));
          return evaluate_stage(RationalStage{m.numerator, m.denominator, degree}, p);
        } else if constexpr (std::is_same_v<T, ProductMap>) {
          const LatitudeForm form({m});
          const SpherePoint q = p.normalized();
          const auto [s, theta] = form.apply(q.latitude(), q.longitude());
          return SpherePoint::from_latitude(s, theta);
        } else {
          SpherePoint x = p;
          for (int i = 0; i < m.count; ++i) x = evaluate(*m.inner, x);
          return x;
        }
      },
      map.variant());
}

Complex south_pole_coordinate(const MapSpec& map) {
  if (const auto* q = map.as<QuadraticMap>()) return (1.0 - std::sqrt(1.0 - 4.0 * q->c)) / 2.0;
  if (const auto* it = map.as<IterateMap>()) return south_pole_coordinate(*it->inner);
  return 0.0;
}

std::optional<std::vector<RationalStage>> rational_stages(const MapSpec& map) {
  return std::visit(
      [](const auto& m) -> std::optional<std::vector<RationalStage>> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PowerMap>) {
          const int n = std::abs(m.exponent);
          Poly mono(static_cast<std::size_t>(n + 1), 0.0);
          mono.back() = 1.0;
          if (m.exponent > 0) return std::vector{RationalStage{mono, Poly{1.0}, n}};
          return std::vector{RationalStage{Poly{1.0}, mono, n}};
        } else if constexpr (std::is_same_v<T, QuadraticMap>) {
          return std::vector{RationalStage{Poly{m.c, 0.0, 1.0}, Poly{1.0}, 2}};
        } else if constexpr (std::is_same_v<T, RationalMap>) {
          const int degree = std::max(poly_degree(m.numerator), poly_degree(m.denominator));
          return std::vector{RationalStage{m.numerator, m.denominator, degree}};
        } else if constexpr (std::is_same_v<T, ProductMap>) {
          return std::nullopt;
        } else {
          auto inner = rational_stages(*m.inner);
          if (!inner) return std::nullopt;
          std::vector<RationalStage> out;
          for (int i = 0; i < m.count; ++i) out.insert(out.end(), inner->begin(), inner->end());
          return out;
        }
      },
      map.variant());
}

// --- LatitudeForm -----------------------------------------------------------

LatitudeForm::LatitudeForm(std::vector<ProductMap> stages) : stages_(std::move(stages)) {
  long d = 1;
  for (const auto& st : stages_) d *= st.angular_degree;
  angular_degree_ = d;
}

double LatitudeForm::radial(double s) const {
  for (const auto& st : stages_) s = st.radial(s);
  return s;
}

double LatitudeForm::radial_derivative(double s) const {
  double d = 1.0;
  for (const auto& st : stages_) {
    if (!std::isfinite(s)) return std::numeric_limits<double>::quiet_NaN();
    d *= st.radial.derivative(s);
    s = st.radial(s);
  }
  return d;
}

double LatitudeForm::twist(double s) const {
  double h = 0.0;
  for (const auto& st : stages_) {
    if (!std::isfinite(s)) return 0.0;
    h = st.angular_degree * h + st.twist(s);
    s = st.radial(s);
  }
  return h;
}

std::pair<double, double> LatitudeForm::apply(double s, double theta) const {
  if (!std::isfinite(s)) return {radial(s), 0.0};
  double x = s;
  for (const auto& st : stages_) {
    if (!std::isfinite(x)) return {x, 0.0};
    theta = st.angular_degree * theta + st.twist(x);
    x = st.radial(x);
  }
  return {x, theta};
}

std::vector<double> LatitudeForm::radial_preimages(double v) const {
  std::vector<double> targets{v};
  for (auto it = stages_.rbegin(); it != stages_.rend(); ++it) {
    std::vector<double> next;
    for (double t : targets) {
      for (double s : it->radial.solve(t)) next.push_back(s);
      if (std::isinf(t)) {
        if (it->radial.limit(-1) == t) next.push_back(-kInf);
        if (it->radial.limit(+1) == t) next.push_back(kInf);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    targets = std::move(next);
  }
  std::vector<double> out;
  for (double s : targets)
    if (std::isfinite(s)) out.push_back(s);
  return numeric::unique_sorted(std::move(out), 1e-12);
}

std::vector<RadialProfile::Breakpoint> LatitudeForm::pole_levels() const {
  std::vector<RadialProfile::Breakpoint> out;
  for (double s : radial_preimages(kInf)) out.push_back({s, kInf});
  for (double s : radial_preimages(-kInf)) out.push_back({s, -kInf});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.s < b.s; });
  return out;
}

double LatitudeForm::limit(int side) const { return radial(side > 0 ? kInf : -kInf); }

int LatitudeForm::radial_degree() const {
  return static_cast<int>((sign_of(limit(+1)) - sign_of(limit(-1))) / 2);
}

std::optional<LatitudeForm> latitude_form(const MapSpec& map) {
  if (const auto* p = map.as<ProductMap>()) return LatitudeForm({*p});
  if (const auto* it = map.as<IterateMap>()) {
    auto inner = latitude_form(*it->inner);
    if (!inner) return std::nullopt;
    std::vector<ProductMap> stages;
    for (int i = 0; i < it->count; ++i)
      stages.insert(stages.end(), inner->stages().begin(), inner->stages().end());
    return LatitudeForm(std::move(stages));
  }
  return std::nullopt;
}

// --- grammar ----------------------------------------------------------------

std::string format_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_complex(Complex c) {
  std::string s = format_real(c.real());
  s += c.imag() < 0 ? "-" : "+";
  s += format_real(std::abs(c.imag()));
  s += "i";
  return s;
}

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) parse_fail("empty number");
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size()) parse_fail("bad number '" + std::string(text) + "'");
  return x;
}

int parse_int(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  int x = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    parse_fail("bad integer '" + std::string(text) + "'");
  return x;
}

/// Split on `sep` at parenthesis depth 0.
std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth < 0) parse_fail("unbalanced parentheses");
    if (s[i] == sep && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) parse_fail("unbalanced parentheses");
  parts.push_back(s.substr(start));
  return parts;
}

struct KeyValues {
  std::vector<std::pair<std::string, std::string_view>> items;

  std::optional<std::string_view> take(const std::string& key) {
    for (auto it = items.begin(); it != items.end(); ++it) {
      if (it->first == key) {
        auto v = it->second;
        items.erase(it);
        return v;
      }
    }
    return std::nullopt;
  }
  std::string_view require(const std::string& key, std::string_view kind) {
    auto v = take(key);
    if (!v) parse_fail(std::string(kind) + " spec is missing key '" + key + "'");
    return *v;
  }
  void finish(std::string_view kind) const {
    if (!items.empty()) parse_fail("unknown key '" + items.front().first + "' in " + std::string(kind) + " spec");
  }
};

KeyValues parse_keys(std::string_view body) {
  KeyValues kv;
  for (auto part : split_top(body, ';')) {
    part = trim(part);
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) parse_fail("expected key=value, got '" + std::string(part) + "'");
    std::string key(trim(part.substr(0, eq)));
    for (const auto& [k, v] : kv.items)
      if (k == key) parse_fail("duplicate key '" + key + "'");
    kv.items.emplace_back(std::move(key), trim(part.substr(eq + 1)));
  }
  return kv;
}

/// "name(args)" -> args, checking the name.
std::optional<std::string_view> call_args(std::string_view text, std::string_view name) {
  if (text.size() < name.size() + 2 || text.substr(0, name.size()) != name) return std::nullopt;
  if (text[name.size()] != '(' || text.back() != ')') return std::nullopt;
  return text.substr(name.size() + 1, text.size() - name.size() - 2);
}

RadialProfile parse_profile(std::string_view text) {
  text = trim(text);
  if (text == "zero") return RadialProfile::zero();
  if (auto args = call_args(text, "affine")) {
    const auto parts = split_top(*args, ',');
    if (parts.size() != 2) parse_fail("affine(a,b) takes two arguments");
    return RadialProfile::affine(parse_real(parts[0]), parse_real(parts[1]));
  }
  if (auto args = call_args(text, "poly")) {
    std::vector<double> c;
    for (auto p : split_top(*args, ',')) c.push_back(parse_real(p));
    return RadialProfile::poly(std::move(c));
  }
  if (auto args = call_args(text, "pwl")) {
    std::vector<RadialProfile::Breakpoint> bps;
    for (auto p : split_top(*args, ',')) {
      const auto colon = p.find(':');
      if (colon == std::string_view::npos) parse_fail("pwl breakpoints are s:value pairs");
      bps.push_back({parse_real(p.substr(0, colon)), parse_real(p.substr(colon + 1))});
    }
    return RadialProfile::piecewise_linear(std::move(bps));
  }
  parse_fail("unknown radial profile '" + std::string(text) + "'");
}

std::string format_profile(const RadialProfile& p) {
  switch (p.kind()) {
    case RadialProfile::Kind::Affine:
      if (p.affine_slope() == 0.0 && p.affine_offset() == 0.0) return "zero";
      return "affine(" + format_real(p.affine_slope()) + "," + format_real(p.affine_offset()) + ")";
    case RadialProfile::Kind::Poly: {
      std::string s = "poly(";
      for (std::size_t i = 0; i < p.coefficients().size(); ++i)
        s += (i ? "," : "") + format_real(p.coefficients()[i]);
      return s + ")";
    }
    case RadialProfile::Kind::PiecewiseLinear: {
      std::string s = "pwl(";
      for (std::size_t i = 0; i < p.breakpoints().size(); ++i)
        s += (i ? "," : "") + format_real(p.breakpoints()[i].s) + ":" + format_real(p.breakpoints()[i].value);
      return s + ")";
    }
  }
  return {};
}

Poly parse_coefficients(std::string_view text) {
  Poly out;
  for (auto p : split_top(text, ',')) out.push_back(parse_complex(p));
  return out;
}

std::string format_coefficients(const Poly& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += p[i].imag() == 0.0 ? format_real(p[i].real()) : format_complex(p[i]);
  }
  return s;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  text = trim(text);
  if (text.empty()) parse_fail("empty complex number");
  if (text.back() != 'i') return {parse_real(text), 0.0};
  const std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_part = [](std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (split == std::string_view::npos) return {0.0, imag_part(body)};
  return {parse_real(body.substr(0, split)), imag_part(body.substr(split))};
}

MapSpec parse_map_spec(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) parse_fail("map spec needs 'kind:' prefix");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);

  if (kind == "iter") {
    const auto open = body.find('(');
    if (open == std::string_view::npos || body.back() != ')') parse_fail("iter spec is iter:n=<k>(<spec>)");
    auto kv = parse_keys(body.substr(0, open));
    const int n = parse_int(kv.require("n", kind));
    kv.finish(kind);
    return MapSpec::iterate(parse_map_spec(body.substr(open + 1, body.size() - open - 2)), n);
  }

  auto kv = parse_keys(body);
  if (kind == "power") {
    const int d = parse_int(kv.require("d", kind));
    kv.finish(kind);
    return MapSpec::power(d);
  }
  if (kind == "quad") {
    const Complex c = parse_complex(kv.require("c", kind));
    kv.finish(kind);
    return MapSpec::quadratic(c);
  }
  if (kind == "rational") {
    Poly p = parse_coefficients(kv.require("P", kind));
    Poly q = parse_coefficients(kv.require("Q", kind));
    kv.finish(kind);
    return MapSpec::rational(std::move(p), std::move(q));
  }
  if (kind == "product") {
    RadialProfile q = parse_profile(kv.require("q", kind));
    const int d = parse_int(kv.require("d", kind));
    RadialProfile h = RadialProfile::zero();
    if (auto hv = kv.take("h")) h = parse_profile(*hv);
    kv.finish(kind);
    return MapSpec::product(std::move(q), d, std::move(h));
  }
  parse_fail("unknown map kind '" + std::string(kind) + "'");
}

std::string format_map_spec(const MapSpec& map) {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PowerMap>) {
          return "power:d=" + std::to_string(m.exponent);
        } else if constexpr (std::is_same_v<T, QuadraticMap>) {
          return "quad:c=" + format_complex(m.c);
        } else if constexpr (std::is_same_v<T, RationalMap>) {
          return "rational:P=" + format_coefficients(m.numerator) + ";Q=" + format_coefficients(m.denominator);
        } else if constexpr (std::is_same_v<T, ProductMap>) {
          return "product:q=" + format_profile(m.radial) + ";d=" + std::to_string(m.angular_degree) +
                 ";h=" + format_profile(m.twist);
        } else {
          return "iter:n=" + std::to_string(m.count) + "(" + format_map_spec(*m.inner) + ")";
        }
      },
      map.variant());
}

}  // namespace sphere
