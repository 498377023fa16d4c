#include "sphere/lefschetz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sphere {

namespace {

constexpr double kMargin = 1e-9;

int index_with_tolerance(const Field& displacement, std::span<const double> params) {
  FieldOptions options;
  options.zero_error = ErrorKind::FixedPointOnCurve;
  return winding_of_field(displacement, params, options);
}

}  // namespace

int lefschetz_index(const PlaneMap& f, const SampledCurve& curve) {
  const double tol = 1e-7 * curve.diameter();
  auto displacement = [&](double t) {
    const Complex z = curve.at(t);
    const Complex d = f(z) - z;
    if (std::abs(d) <= tol) throw Error(ErrorKind::FixedPointOnCurve, "fixed point on the curve");
    return d;
  };
  return index_with_tolerance(displacement, curve.params());
}

int lefschetz_index(const MapSpec& map, const SampledCurve& curve) {
  const double tol = 1e-7 * curve.diameter();
  const Chart chart = curve.chart().value_or(Chart::North);
  auto displacement = [&](double t) {
    const Complex z = curve.at(t);
    const SpherePoint image = evaluate(map, SpherePoint(z, chart));
    double magnitude = 0.0;
    const Complex d = direction_from(image, z, chart, &magnitude);
    if (magnitude <= tol) throw Error(ErrorKind::FixedPointOnCurve, "fixed point on the curve");
    return d;
  };
  return index_with_tolerance(displacement, dense_params(curve, samples_for_degree(map.declared_degree())));
}

// --- rectangles -------------------------------------------------------------

Rect Rect::scaled(double factor) const {
  const Complex c = center();
  const double hw = 0.5 * (x1 - x0) * factor, hh = 0.5 * (y1 - y0) * factor;
  return {c.real() - hw, c.real() + hw, c.imag() - hh, c.imag() + hh};
}

SampledCurve Rect::boundary(int samples_per_side) const {
  const Rect r = *this;
  auto g = [r](double t) -> Complex {
    const double u = 4.0 * (t - std::floor(t));
    const auto side = static_cast<int>(u);
    const double f = u - side;
    switch (side) {
      case 0: return {r.x0 + f * (r.x1 - r.x0), r.y0};
      case 1: return {r.x1, r.y0 + f * (r.y1 - r.y0)};
      case 2: return {r.x1 - f * (r.x1 - r.x0), r.y1};
      default: return {r.x0, r.y1 - f * (r.y1 - r.y0)};
    }
  };
  return SampledCurve::parametric(g, static_cast<std::size_t>(4 * std::max(samples_per_side, 2)), std::nullopt);
}

std::string_view to_string(Certificate c) {
  switch (c) {
    case Certificate::ExpandingCase: return "ExpandingCase";
    case Certificate::SaddleCaseH: return "SaddleCaseH";
    case Certificate::SaddleCaseV: return "SaddleCaseV";
    case Certificate::ContractingCase: return "ContractingCase";
    case Certificate::NoCertificate: return "NoCertificate";
  }
  return "NoCertificate";
}

int certified_index(Certificate c) {
  switch (c) {
    case Certificate::ExpandingCase:
    case Certificate::ContractingCase: return 1;
    case Certificate::SaddleCaseH:
    case Certificate::SaddleCaseV: return -1;
    case Certificate::NoCertificate: return 0;
  }
  return 0;
}

Certificate rectangle_certificate(const PlaneMap& f, const Rect& rect, int samples_per_side) {
  const int n = std::max(samples_per_side, 2);
  // Per side: does the image move strictly outward / strictly inward.
  bool out_top = true, in_top = true, out_bottom = true, in_bottom = true;
  bool out_right = true, in_right = true, out_left = true, in_left = true;
  for (int i = 0; i <= n; ++i) {
    const double fx = rect.x0 + (rect.x1 - rect.x0) * i / n;
    const double fy = rect.y0 + (rect.y1 - rect.y0) * i / n;
    const Complex top = f({fx, rect.y1}), bottom = f({fx, rect.y0});
    const Complex right = f({rect.x1, fy}), left = f({rect.x0, fy});
    for (Complex v : {top, bottom, right, left})
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return Certificate::NoCertificate;
    out_top = out_top && top.imag() > rect.y1 + kMargin;
    in_top = in_top && top.imag() < rect.y1 - kMargin;
    out_bottom = out_bottom && bottom.imag() < rect.y0 - kMargin;
    in_bottom = in_bottom && bottom.imag() > rect.y0 + kMargin;
    out_right = out_right && right.real() > rect.x1 + kMargin;
    in_right = in_right && right.real() < rect.x1 - kMargin;
    out_left = out_left && left.real() < rect.x0 - kMargin;
    in_left = in_left && left.real() > rect.x0 + kMargin;
  }
  const bool vertical_out = out_top && out_bottom, vertical_in = in_top && in_bottom;
  const bool horizontal_out = out_right && out_left, horizontal_in = in_right && in_left;

  Certificate c = Certificate::NoCertificate;
  if (vertical_out && horizontal_out) c = Certificate::ExpandingCase;
  else if (vertical_out && horizontal_in) c = Certificate::SaddleCaseH;
  else if (vertical_in && horizontal_out) c = Certificate::SaddleCaseV;
  else if (vertical_in && horizontal_in) c = Certificate::ContractingCase;
  if (c == Certificate::NoCertificate) return c;

  const int index = lefschetz_index(f, rect.boundary(n));
  if (index != certified_index(c)) {
    throw Error(ErrorKind::CertificateIndexMismatch,
                std::string(to_string(c)) + " certifies " + std::to_string(certified_index(c)) +
                    " but the boundary index is " + std::to_string(index));
  }
  return c;
}

Certificate rectangle_certificate(const MapSpec& map, const Rect& rect, int samples_per_side) {
  auto f = [&map](Complex z) {
    const auto image = evaluate(map, SpherePoint::from_north(z)).coordinate(Chart::North);
    return image ? *image : Complex(HUGE_VAL, HUGE_VAL);
  };
  return rectangle_certificate(PlaneMap(f), rect, samples_per_side);
}

// --- fixed points -----------------------------------------------------------

Complex polish_fixed_point(const PlaneMap& f, Complex z, int iterations) {
  auto g = [&f](Complex p) { return f(p) - p; };
  Complex best = z;
  double best_residual = std::abs(g(z));
  for (int it = 0; it < iterations && best_residual > 0.0; ++it) {
    const double h = 1e-7 * std::max(1.0, std::abs(z));
    const Complex g0 = g(z);
    const Complex gx = (g(z + h) - g0) / h;
    const Complex gy = (g(z + Complex(0.0, h)) - g0) / h;
    const double det = gx.real() * gy.imag() - gy.real() * gx.imag();
    if (det == 0.0 || !std::isfinite(det)) break;
    const double dx = (gy.imag() * g0.real() - gy.real() * g0.imag()) / det;
    const double dy = (-gx.imag() * g0.real() + gx.real() * g0.imag()) / det;
    z -= Complex(dx, dy);
    const double r = std::abs(g(z));
    if (!std::isfinite(r)) break;
    if (r < best_residual) {
      best = z;
      best_residual = r;
    }
    if (std::hypot(dx, dy) <= 1e-16 * std::max(1.0, std::abs(z))) break;
  }
  return best;
}

std::optional<Complex> find_fixed_point(const PlaneMap& f, const Rect& rect) {
  constexpr int kSamples = 16;
  auto index_of = [&f](const Rect& r) -> std::optional<int> {
    try {
      return lefschetz_index(f, r.boundary(kSamples));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::FixedPointOnCurve) return std::nullopt;
      throw;
    }
  };

  Rect r = rect;
  auto idx = index_of(r);
  if (!idx) {
    r = rect.scaled(1.0 + 1e-6);
    idx = index_of(r);
  }
  if (!idx || *idx == 0) return std::nullopt;

  const double scale = std::max({1.0, std::abs(rect.center()), rect.x1 - rect.x0, rect.y1 - rect.y0});
  // Uneven split fractions keep a fixed point from sitting on every cut.
  constexpr double kFractions[] = {0.5123, 0.4371, 0.6029};
  for (int depth = 0; depth < 200; ++depth) {
    const double w = r.x1 - r.x0, h = r.y1 - r.y0;
    if (std::max(w, h) < 1e-7 * scale) break;
    bool advanced = false;
    for (double frac : kFractions) {
      Rect a = r, b = r;
      if (w >= h) {
        a.x1 = b.x0 = r.x0 + frac * w;
      } else {
        a.y1 = b.y0 = r.y0 + frac * h;
      }
      const auto ia = index_of(a);
      if (!ia) continue;
      if (*ia != 0) {
        r = a;
        idx = ia;
      } else {
        r = b;
        idx = *idx - *ia;
      }
      advanced = true;
      break;
    }
    if (!advanced) break;
  }
  return polish_fixed_point(f, r.center());
}

}  // namespace sphere
