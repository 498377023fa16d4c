#include "sphere/degree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sphere/roots.hpp"

namespace sphere {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDedup = 1e-7;

std::vector<double> uniform_params(std::size_t n) {
  std::vector<double> ts(n);
  for (std::size_t i = 0; i < n; ++i) ts[i] = static_cast<double>(i) / static_cast<double>(n);
  return ts;
}

void add_distinct(std::vector<SpherePoint>& out, const SpherePoint& p) {
  for (const auto& q : out)
    if (chordal_distance(p, q) <= kDedup) return;
  out.push_back(p);
}

/// Preimages of y under one rational stage, with multiplicity.
std::vector<SpherePoint> stage_preimages(const RationalStage& stage, const SpherePoint& y) {
  const SpherePoint yn = y.normalized();
  Complex alpha = 1.0, beta = 1.0;
  if (yn.chart() == Chart::North) alpha = yn.value(); else beta = yn.value();
  Poly c(static_cast<std::size_t>(stage.degree + 1), 0.0);
  for (std::size_t i = 0; i < stage.numerator.size(); ++i) c[i] += beta * stage.numerator[i];
  for (std::size_t i = 0; i < stage.denominator.size(); ++i) c[i] -= alpha * stage.denominator[i];
  const int deg = poly_degree(c);
  if (deg < 0) throw Error(ErrorKind::NumericalFailure, "constant stage");
  std::vector<SpherePoint> out;
  if (deg >= 1)
    for (Complex r : roots::polynomial_roots(c)) out.push_back(SpherePoint::from_north(r));
  for (int i = deg; i < stage.degree; ++i) out.push_back(SpherePoint::north_pole());
  return out;
}

std::vector<SpherePoint> product_preimages(const LatitudeForm& form, const SpherePoint& y) {
  const SpherePoint yn = y.normalized();
  if (yn.is_pole()) throw Error(ErrorKind::PreimageClusterTooTight, "pole values have circles as preimages");
  const double v = yn.latitude(), phi = yn.longitude();
  const long d = form.angular_degree();
  std::vector<SpherePoint> out;
  if (d == 0) return out;  // the fibre over a generic value is empty
  for (double s : form.radial_preimages(v)) {
    const double h = form.twist(s);
    for (long k = 0; k < std::abs(d); ++k) {
      const double theta = (phi - h + kTwoPi * static_cast<double>(k)) / static_cast<double>(d);
      out.push_back(SpherePoint::from_latitude(s, theta));
    }
  }
  return out;
}

double min_separation(const std::vector<SpherePoint>& pts) {
  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) sep = std::min(sep, chordal_distance(pts[i], pts[j]));
  return sep;
}

bool retryable(const Error& e) {
  return e.kind() == ErrorKind::PreimageClusterTooTight || e.kind() == ErrorKind::RadiusTooLarge;
}

}  // namespace

int local_degree(const MapSpec& map, const SpherePoint& x, const SpherePoint& y, double radius) {
  const SpherePoint xn = x.normalized();
  const SpherePoint yn = y.normalized();
  const Complex center = xn.value();
  auto field = [&](double t) {
    const SpherePoint p(center + std::polar(radius, kTwoPi * t), xn.chart());
    double magnitude = 0.0;
    const Complex d = direction_from(evaluate(map, p), yn.value(), yn.chart(), &magnitude);
    if (magnitude <= 1e-9) throw Error(ErrorKind::RadiusTooLarge, "image of the degree circle passes through the value");
    return d;
  };
  const auto params = uniform_params(samples_for_degree(map.declared_degree()));
  return winding_of_field(field, params);
}

std::vector<SpherePoint> preimages(const MapSpec& map, const SpherePoint& y) {
  std::vector<SpherePoint> out;
  if (auto stages = rational_stages(map)) {
    std::vector<SpherePoint> targets{y};
    for (auto it = stages->rbegin(); it != stages->rend(); ++it) {
      std::vector<SpherePoint> next;
      for (const auto& t : targets)
        for (const auto& p : stage_preimages(*it, t)) add_distinct(next, p);
      targets = std::move(next);
    }
    return targets;
  }
  const auto form = latitude_form(map);
  if (!form) throw Error(ErrorKind::UnsupportedSpec, "no preimage solver for this map");
  for (const auto& p : product_preimages(*form, y)) add_distinct(out, p);
  return out;
}

DegreeReport global_degree(const MapSpec& map, const SpherePoint& y) {
  DegreeReport report;
  report.regular_value = y;
  const auto pts = preimages(map, y);
  const double sep = min_separation(pts);
  if (sep < 1e-4) throw Error(ErrorKind::PreimageClusterTooTight, "preimages closer than 1e-4");
  const double radius = std::min(0.05, sep / 20.0);
  for (const auto& p : pts) {
    const int ld = local_degree(map, p, y, radius);
    report.witnesses.push_back({p, ld});
    report.global += ld;
  }
  if (report.global != map.declared_degree()) {
    throw Error(ErrorKind::DegreeMismatch, "local degrees sum to " + std::to_string(report.global) +
                                               ", declared degree is " + std::to_string(map.declared_degree()));
  }
  return report;
}

SpherePoint random_value(numeric::Rng& rng) {
  const double s = rng.uniform(-1.5, 1.5);
  const double theta = rng.uniform(0.0, kTwoPi);
  return SpherePoint::from_latitude(s, theta);
}

DegreeReport global_degree(const MapSpec& map, numeric::Rng& rng) {
  for (int attempt = 0;; ++attempt) {
    try {
      return global_degree(map, random_value(rng));
    } catch (const Error& e) {
      if (!retryable(e) || attempt >= 32) throw;
    }
  }
}

int annular_degree(const MapSpec& map, const SampledCurve& core) {
  const Chart chart = core.chart().value_or(Chart::North);
  const Complex south = south_pole_coordinate(map);
  auto field = [&](double t) {
    const SpherePoint image = evaluate(map, SpherePoint(core.at(t), chart)).normalized();
    if (image.chart() == Chart::South && std::abs(image.value()) <= 1e-6)
      throw Error(ErrorKind::ImageHitsPole, "image of the core reaches N");
    double magnitude = 0.0;
    const Complex d = direction_from(image, south, Chart::North, &magnitude);
    if (magnitude <= 1e-6) throw Error(ErrorKind::ImageHitsPole, "image of the core reaches S");
    return d;
  };
  return winding_of_field(field, dense_params(core, samples_for_degree(map.declared_degree())));
}

int component_degree(const MapSpec& map, double lower_s, double upper_s, numeric::Rng& rng) {
  for (int attempt = 0;; ++attempt) {
    try {
      const SpherePoint y = random_value(rng);
      const auto pts = preimages(map, y);
      const double sep = min_separation(pts);
      if (sep < 1e-4) throw Error(ErrorKind::PreimageClusterTooTight, "preimages closer than 1e-4");
      const double radius = std::min(0.05, sep / 20.0);
      int sum = 0;
      for (const auto& p : pts) {
        const double s = p.latitude();
        if (s > lower_s && s < upper_s) sum += local_degree(map, p, y, radius);
      }
      return sum;
    } catch (const Error& e) {
      if (!retryable(e) || attempt >= 32) throw;
    }
  }
}

CactusReport cactus_check(const MapSpec& map, const std::vector<AnnulusComponent>& decomposition) {
  CactusReport report;
  report.declared = map.declared_degree();
  numeric::Rng rng(numeric::default_seed());
  bool magnitudes = true;
  for (const auto& c : decomposition) {
    CactusEntry e{};
    e.d_i = component_degree(map, c.lower_s, c.upper_s, rng);
    e.delta = c.delta;
    e.magnitudes_agree = std::abs(e.d_i) == std::abs(e.delta);
    e.sign = (e.d_i == 0 || e.delta == 0) ? 0 : ((e.d_i > 0) == (e.delta > 0) ? 1 : -1);
    magnitudes = magnitudes && e.magnitudes_agree;
    report.sum += e.d_i;
    report.entries.push_back(e);
  }
  report.pass = magnitudes && report.sum == report.declared;
  return report;
}

}  // namespace sphere
