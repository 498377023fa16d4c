#include "sphere/strip_lift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sphere/numeric.hpp"

namespace sphere {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMargin = 1e-9;
constexpr int kMaxM = 64;

}  // namespace

// --- normalization ----------------------------------------------------------

StripNormalization::StripNormalization(Window window) : window_(window) {
  if (!(window.hi > window.lo)) throw Error(ErrorKind::InvalidSpec, "empty strip window");
  // Slope of the affine part is 0.5 / width; the tails 0.25·exp(±rate·Δs) match it.
  rate_ = 2.0 / (window.hi - window.lo);
}

double StripNormalization::y_of(double s) const {
  if (s == -kInf) return 0.0;
  if (s == kInf) return 1.0;
  if (s < window_.lo) return 0.25 * std::exp(rate_ * (s - window_.lo));
  if (s > window_.hi) return 1.0 - 0.25 * std::exp(-rate_ * (s - window_.hi));
  return 0.25 + 0.5 * (s - window_.lo) / (window_.hi - window_.lo);
}

double StripNormalization::s_of(double y) const {
  if (y <= 0.0) return -kInf;
  if (y >= 1.0) return kInf;
  if (y < 0.25) return window_.lo + std::log(y / 0.25) / rate_;
  if (y > 0.75) return window_.hi - std::log((1.0 - y) / 0.25) / rate_;
  return window_.lo + (y - 0.25) / 0.5 * (window_.hi - window_.lo);
}

// --- StripMap ---------------------------------------------------------------

StripMap::StripMap(MapSpec map, StripNormalization norm, long degree, int offset)
    : map_(std::move(map)), norm_(norm), degree_(degree), offset_(offset), form_(latitude_form(map_)) {}

SpherePoint StripMap::project(Complex xy) const {
  return SpherePoint::from_latitude(norm_.s_of(xy.imag()), kTwoPi * xy.real());
}

double StripMap::continued_x(double x, double y, bool horizontal_first) const {
  const Complex south = south_pole_coordinate(map_);
  FieldOptions options;
  options.zero_error = ErrorKind::ImageHitsPole;
  auto direction_at = [&](Complex p) { return direction_from(evaluate(map_, project(p)), south, Chart::North); };
  auto leg = [&](Complex a, Complex b, int pieces) {
    double total = 0.0;
    for (int i = 0; i < pieces; ++i) {
      const Complex pa = a + (b - a) * (static_cast<double>(i) / pieces);
      const Complex pb = a + (b - a) * (static_cast<double>(i + 1) / pieces);
      total += argument_change([&](double t) { return direction_at(pa + (pb - pa) * t); }, 0.0, 1.0, options);
    }
    return total;
  };
  const int horizontal_pieces = 8 * static_cast<int>(1 + std::abs(degree_));
  const Complex base(0.0, 0.5);
  double change;
  if (horizontal_first) {
    change = leg(base, {x, 0.5}, horizontal_pieces) + leg({x, 0.5}, {x, y}, 8);
  } else {
    change = leg(base, {0.0, y}, 8) + leg({0.0, y}, {x, y}, horizontal_pieces);
  }
  return base_x_ + change / kTwoPi;
}

Complex StripMap::operator()(Complex xy) const {
  const double x = xy.real(), y = xy.imag();
  const double s = norm_.s_of(y);
  if (form_) {
    const double image_s = form_->radial(s);
    const double h = std::isfinite(image_s) ? form_->twist(s) : 0.0;
    return {static_cast<double>(degree_) * x + h / kTwoPi + offset_, norm_.y_of(image_s)};
  }
  const double n = std::floor(x);
  const double fx = continued_x(x - n, y, false) + static_cast<double>(degree_) * n + offset_;
  return {fx, norm_.y_of(evaluate(map_, project(xy)).latitude())};
}

PlaneMap StripMap::as_plane_map() const {
  return [this](Complex z) { return (*this)(z); };
}

StripMap lift(const MapSpec& map, const AnnulusComponent& component, int k) {
  const auto form = latitude_form(map);
  const long d = form ? form->angular_degree() : component.delta;
  StripMap F(map, StripNormalization(component.window), d, k);
  if (!form) {
    const Complex south = south_pole_coordinate(map);
    const Complex base = direction_from(evaluate(map, F.project({0.0, 0.5})), south, Chart::North);
    if (base == 0.0) throw Error(ErrorKind::ImageHitsPole, "base point maps to a pole");
    F.base_x_ = std::arg(base) / kTwoPi;
  }

  numeric::Rng rng(numeric::default_seed());
  for (int i = 0; i < 100; ++i) {
    const double x = rng.uniform(), y = rng.uniform(0.2, 0.8);
    if (!form) {
      const double a = F.continued_x(x, y, false), b = F.continued_x(x, y, true);
      if (std::abs(a - b) > 1e-6) {
        throw Error(ErrorKind::LiftDiscontinuity, "path continuations disagree by " + std::to_string(a - b));
      }
    }
    const Complex p(x, y);
    const SpherePoint expected = evaluate(map, F.project(p));
    const SpherePoint got = F.project(F(p));
    if (chordal_distance(expected, got) > 1e-9) {
      throw Error(ErrorKind::LiftDiscontinuity, "lift does not cover the map");
    }
  }
  return F;
}

// --- β and the index --------------------------------------------------------

Rect beta_rect(int m) {
  return {-static_cast<double>(m), static_cast<double>(std::max(m, 1)), 0.25, 0.75};
}

SampledCurve build_beta(const StripMap& /*F*/, int m) {
  const Rect r = beta_rect(m);
  return r.boundary(static_cast<int>(32 * (r.x1 - r.x0)));
}

LiftIndex verify_index(const StripMap& F) {
  const long d = F.translation_degree();
  if (d == 1) throw Error(ErrorKind::UnsupportedSpec, "no index claim for translation degree 1");
  const bool expanding = d >= 2;
  constexpr int kSide = 64;

  auto conditions_hold = [&](const Rect& r) {
    for (int i = 0; i <= kSide; ++i) {
      const double y = r.y0 + (r.y1 - r.y0) * i / kSide;
      const double right = F({r.x1, y}).real(), left = F({r.x0, y}).real();
      if (expanding) {
        if (!(right > r.x1 + kMargin) || !(left < r.x0 - kMargin)) return false;
      } else {
        if (!(right < r.x1 - kMargin) || !(left > r.x0 + kMargin)) return false;
      }
    }
    const int horizontal = static_cast<int>(kSide * (r.x1 - r.x0));
    for (int i = 0; i <= horizontal; ++i) {
      const double x = r.x0 + (r.x1 - r.x0) * i / horizontal;
      if (!(F({x, r.y1}).imag() > r.y1 + kMargin) || !(F({x, r.y0}).imag() < r.y0 - kMargin)) return false;
    }
    return true;
  };

  for (int m = 1; m <= kMaxM; ++m) {
    const Rect r = beta_rect(m);
    if (!conditions_hold(r)) continue;
    LiftIndex out{};
    out.m_used = m;
    out.index = lefschetz_index(F.as_plane_map(), build_beta(F, m));
    const int expected = expanding ? 1 : -1;
    if (out.index != expected) {
      throw Error(ErrorKind::IndexMismatch, "index along beta is " + std::to_string(out.index) + ", expected " +
                                                std::to_string(expected));
    }
    if (auto z = find_fixed_point(F.as_plane_map(), r)) {
      out.lift_fixed_point = z;
      out.projection = F.project(*z);
      out.residual = chordal_distance(evaluate(F.map(), *out.projection), *out.projection);
    }
    return out;
  }
  throw Error(ErrorKind::MNotFound, "boundary conditions not met for m <= 64");
}

}  // namespace sphere
