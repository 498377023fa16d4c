#include "sphere/annuli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sphere/degree.hpp"

namespace sphere {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMargin = 1e-9;
constexpr int kBoundarySamples = 256;

double core_latitude(double lo, double hi) {
  if (std::isinf(lo) && std::isinf(hi)) return 0.0;
  if (std::isinf(lo)) return hi - 1.0;
  if (std::isinf(hi)) return lo + 1.0;
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(PoleType t) {
  switch (t) {
    case PoleType::TypeI: return "TypeI";
    case PoleType::TypeII: return "TypeII";
    case PoleType::TypeIII: return "TypeIII";
  }
  return "TypeI";
}

SampledCurve latitude_circle(double s, std::size_t samples) {
  if (s <= 0.0) {
    const double r = std::exp(s);
    return SampledCurve::parametric([r](double t) { return std::polar(r, kTwoPi * t); }, samples, Chart::North);
  }
  const double r = std::exp(-s);
  return SampledCurve::parametric([r](double t) { return std::polar(r, -kTwoPi * t); }, samples, Chart::South);
}

std::optional<SampledCurve> AnnulusComponent::lower_circle() const {
  if (std::isinf(lower_s)) return std::nullopt;
  return latitude_circle(lower_s);
}

std::optional<SampledCurve> AnnulusComponent::upper_circle() const {
  if (std::isinf(upper_s)) return std::nullopt;
  return latitude_circle(upper_s);
}

Window default_window(double lower_s, double upper_s) {
  const bool lo_inf = std::isinf(lower_s), hi_inf = std::isinf(upper_s);
  if (lo_inf && hi_inf) return {-1.0, 1.0};
  if (lo_inf) return {upper_s - 2.0, upper_s - 0.1};
  if (hi_inf) return {lower_s + 0.1, lower_s + 2.0};
  const double pad = 0.1 * (upper_s - lower_s);
  return {lower_s + pad, upper_s - pad};
}

std::vector<PolePreimage> pole_preimages(const MapSpec& map) {
  std::vector<PolePreimage> out;
  if (const auto form = latitude_form(map)) {
    out.push_back({PoleType::TypeI, form->limit(-1) > 0, SpherePoint::south_pole(), std::nullopt});
    for (const auto& level : form->pole_levels())
      out.push_back({PoleType::TypeII, level.value > 0, std::nullopt, level.s});
    out.push_back({PoleType::TypeI, form->limit(+1) > 0, SpherePoint::north_pole(), std::nullopt});
    return out;
  }
  if (std::abs(map.declared_degree()) > 4096)
    throw Error(ErrorKind::DegreeCapExceeded, "pole preimages beyond degree 4096");
  const SpherePoint south = SpherePoint::from_north(south_pole_coordinate(map));
  const SpherePoint north = SpherePoint::north_pole();
  auto classify_point = [&](SpherePoint p, bool to_north) {
    PoleType type = PoleType::TypeIII;
    if (chordal_distance(p, south) <= 1e-9) {
      p = south;
      type = PoleType::TypeI;
    } else if (chordal_distance(p, north) <= 1e-9) {
      p = north;
      type = PoleType::TypeI;
    }
    out.push_back({type, to_north, p, std::nullopt});
  };
  for (const auto& p : preimages(map, south)) classify_point(p, false);
  for (const auto& p : preimages(map, north)) classify_point(p, true);
  std::stable_sort(out.begin(), out.end(), [&](const PolePreimage& a, const PolePreimage& b) {
    return chordal_distance(*a.point, south) < chordal_distance(*b.point, south);
  });
  return out;
}

bool is_repelling(const MapSpec& map, const Window& window) {
  bool touching = false;
  for (int i = 0; i < kBoundarySamples; ++i) {
    const double theta = kTwoPi * i / kBoundarySamples;
    const double up = evaluate(map, SpherePoint::from_latitude(window.hi, theta)).latitude();
    const double down = evaluate(map, SpherePoint::from_latitude(window.lo, theta)).latitude();
    if (up < window.hi - kMargin || down > window.lo + kMargin) return false;
    if (up <= window.hi + kMargin || down >= window.lo - kMargin) touching = true;
  }
  if (touching) throw Error(ErrorKind::BoundaryTouchesImage, "a boundary image touches the boundary latitude");
  return true;
}

bool is_repelling(const MapSpec& map, const AnnulusComponent& component) {
  return is_repelling(map, component.window);
}

std::vector<AnnulusComponent> decompose(const MapSpec& map) {
  std::vector<double> bounds{-kInf};
  for (const auto& p : pole_preimages(map)) {
    if (p.type == PoleType::TypeIII)
      throw Error(ErrorKind::NotStraightened, "an isolated non-pole point maps to a pole");
    if (p.type == PoleType::TypeII) bounds.push_back(*p.level);
  }
  bounds.push_back(kInf);

  numeric::Rng rng(numeric::default_seed());
  std::vector<AnnulusComponent> out;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const double lo = bounds[i], hi = bounds[i + 1];
    AnnulusComponent c{
        .lower_s = lo,
        .upper_s = hi,
        .window = default_window(lo, hi),
        .core = latitude_circle(core_latitude(lo, hi)),
    };
    c.delta = annular_degree(map, c.core);
    c.d_i = component_degree(map, lo, hi, rng);
    try {
      c.repelling = is_repelling(map, c.window);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BoundaryTouchesImage) throw;
      c.repelling = false;
      c.repelling_inconclusive = true;
    }
    out.push_back(std::move(c));
  }
  return out;
}

int theorem3_bound(const AnnulusComponent& component) {
  if (!component.repelling) throw Error(ErrorKind::NotRepelling, "the component is not a repelling annulus");
  return std::abs(component.delta - 1);
}

HypothesisReport check_hypothesis_H(const MapSpec& map) {
  HypothesisReport report{true, std::nullopt};
  const auto pp = pole_preimages(map);
  for (const auto& x : pp) {
    if (x.type != PoleType::TypeIII) continue;
    double nearest = kInf;
    for (const auto& y : pp) {
      if (&y == &x || !y.point) continue;
      nearest = std::min(nearest, chordal_distance(*x.point, *y.point));
    }
    const double r = std::min(0.05, nearest / 4.0);
    const SpherePoint xn = x.point->normalized();
    const SampledCurve probe = SampledCurve::circle(xn.value(), r, 64, xn.chart());
    const int w = annular_degree(map, probe);
    if (w != 0) {
      report.pass = false;
      report.witness = probe;
      report.witness_winding = w;
      return report;
    }
  }
  return report;
}

}  // namespace sphere
