#include "sphere/winding.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

namespace sphere {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double segment_distance(Complex a, Complex b, Complex p) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

// --- SampledCurve -----------------------------------------------------------

SampledCurve::SampledCurve(std::vector<Complex> points, std::optional<Chart> chart)
    : points_(std::move(points)), chart_(chart) {
  params_.resize(points_.size());
  drop_repeats();
  for (std::size_t i = 0; i < points_.size(); ++i) params_[i] = static_cast<double>(i) / points_.size();
}

SampledCurve SampledCurve::parametric(Parameterization g, std::size_t samples, std::optional<Chart> chart) {
  SampledCurve c;
  c.chart_ = chart;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    c.params_.push_back(t);
    c.points_.push_back(g(t));
  }
  c.param_ = std::move(g);
  c.drop_repeats();
  return c;
}

SampledCurve SampledCurve::circle(Complex center, double radius, std::size_t samples, std::optional<Chart> chart) {
  return parametric([center, radius](double t) { return center + std::polar(radius, kTwoPi * t); }, samples, chart);
}

void SampledCurve::drop_repeats() {
  std::vector<Complex> pts;
  std::vector<double> ts;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!pts.empty() && points_[i] == pts.back()) continue;
    pts.push_back(points_[i]);
    ts.push_back(params_[i]);
  }
  while (pts.size() > 1 && pts.back() == pts.front()) {
    pts.pop_back();
    ts.pop_back();
  }
  if (pts.size() < 8) throw Error(ErrorKind::InvalidCurve, "a sampled curve needs at least 8 distinct samples");
  points_ = std::move(pts);
  params_ = std::move(ts);
}

Complex SampledCurve::at(double t) const {
  if (param_) return param_(t);
  const double n = static_cast<double>(points_.size());
  double x = t * n;
  if (x < 0.0) x = 0.0;
  auto i = static_cast<std::size_t>(x);
  if (i >= points_.size()) return points_.front();
  const double frac = x - static_cast<double>(i);
  const Complex a = points_[i];
  const Complex b = points_[(i + 1) % points_.size()];
  return a + frac * (b - a);
}

double SampledCurve::diameter() const {
  double lo_x = points_[0].real(), hi_x = lo_x, lo_y = points_[0].imag(), hi_y = lo_y;
  for (Complex p : points_) {
    lo_x = std::min(lo_x, p.real());
    hi_x = std::max(hi_x, p.real());
    lo_y = std::min(lo_y, p.imag());
    hi_y = std::max(hi_y, p.imag());
  }
  return std::hypot(hi_x - lo_x, hi_y - lo_y);
}

SampledCurve SampledCurve::reversed() const {
  SampledCurve c;
  c.chart_ = chart_;
  const std::size_t n = points_.size();
  c.points_.push_back(points_[0]);
  c.params_.push_back(0.0);
  for (std::size_t k = n - 1; k >= 1; --k) {
    c.points_.push_back(points_[k]);
    c.params_.push_back(1.0 - params_[k]);
  }
  if (param_) {
    c.param_ = [g = param_](double t) { return g(t <= 0.0 ? 0.0 : 1.0 - t); };
  } else {
    // Reversed polyline interpolation: walk the original samples backwards.
    c.param_ = [pts = points_](double t) {
      const std::size_t m = pts.size();
      double x = (1.0 - t) * static_cast<double>(m);
      auto i = static_cast<std::size_t>(x);
      if (i >= m) return pts.front();
      const double frac = x - static_cast<double>(i);
      return pts[i] + frac * (pts[(i + 1) % m] - pts[i]);
    };
  }
  return c;
}

SampledCurve concatenate(const SampledCurve& a, const SampledCurve& b) {
  if (a.chart() != b.chart()) throw Error(ErrorKind::InvalidCurve, "concatenated curves must share a chart");
  std::vector<Complex> pts = a.points();
  pts.insert(pts.end(), b.points().begin(), b.points().end());
  return SampledCurve(std::move(pts), a.chart());
}

// --- winding ----------------------------------------------------------------

double turning(const Field& field, std::span<const double> params, const FieldOptions& options) {
  struct Node {
    double t;
    Complex v;
  };
  auto sample = [&](double t) {
    const Complex v = field(t);
    if (!finite(v) || std::abs(v) <= options.zero_tolerance) {
      throw Error(options.zero_error, "field vanishes at parameter " + std::to_string(t));
    }
    return v;
  };
  std::vector<Node> nodes;
  nodes.reserve(params.size() + 1);
  for (double t : params) nodes.push_back({t, sample(t)});
  nodes.push_back({1.0, nodes.front().v});

  std::size_t count = params.size();
  double total = 0.0;
  std::vector<std::pair<Node, Node>> stack;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    stack.emplace_back(nodes[i], nodes[i + 1]);
    while (!stack.empty()) {
      const auto [a, b] = stack.back();
      stack.pop_back();
      const double step = std::arg(b.v / a.v);
      if (std::abs(step) >= options.max_step && count < options.max_samples) {
        const double tm = 0.5 * (a.t + b.t);
        if (tm > a.t && tm < b.t) {
          const Node m{tm, sample(tm)};
          ++count;
          stack.emplace_back(m, b);
          stack.emplace_back(a, m);
          continue;
        }
      }
      total += step;
    }
  }
  return total / kTwoPi;
}

int winding_of_field(const Field& field, std::span<const double> params, const FieldOptions& options) {
  const double w = turning(field, params, options);
  const double r = std::round(w);
  if (std::abs(w - r) > 0.05) {
    throw Error(ErrorKind::NonIntegralWinding, "turning number " + std::to_string(w) + " is not near an integer");
  }
  return static_cast<int>(r);
}

double argument_change(const Field& field, double t0, double t1, const FieldOptions& options) {
  Complex a = field(t0);
  if (!finite(a) || std::abs(a) <= options.zero_tolerance) throw Error(options.zero_error, "field vanishes on path");
  double total = 0.0;
  std::size_t count = 0;
  std::vector<std::tuple<double, Complex, double, Complex>> stack;
  stack.emplace_back(t0, a, t1, field(t1));
  while (!stack.empty()) {
    auto [ta, va, tb, vb] = stack.back();
    stack.pop_back();
    if (!finite(vb) || std::abs(vb) <= options.zero_tolerance) throw Error(options.zero_error, "field vanishes on path");
    const double step = std::arg(vb / va);
    const double tm = 0.5 * (ta + tb);
    if (std::abs(step) >= options.max_step && count < options.max_samples && tm != ta && tm != tb) {
      const Complex vm = field(tm);
      ++count;
      stack.emplace_back(tm, vm, tb, vb);
      stack.emplace_back(ta, va, tm, vm);
      continue;
    }
    total += step;
  }
  return total;
}

int winding_number(const SampledCurve& curve, Complex p) {
  const double tol = 1e-9 * curve.diameter();
  const auto& pts = curve.points();
  double closest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    closest = std::min(closest, curve.has_parameterization()
                                    ? std::abs(pts[i] - p)
                                    : segment_distance(pts[i], pts[(i + 1) % pts.size()], p));
  }
  if (closest <= tol) throw Error(ErrorKind::PointOnCurve, "query point lies on the curve");
  FieldOptions options;
  options.zero_tolerance = tol;
  return winding_of_field([&](double t) { return curve.at(t) - p; }, curve.params(), options);
}

Side classify(const SampledCurve& curve, Complex p) {
  return winding_number(curve, p) == 0 ? Side::Out : Side::Inn;
}

bool is_essential(const SampledCurve& curve) { return winding_number(curve, 0.0) != 0; }

int winding_about_south(const std::function<SpherePoint(double)>& path, std::span<const double> params,
                        Complex south, const FieldOptions& options) {
  return winding_of_field([&](double t) { return direction_from(path(t), south, Chart::North); }, params, options);
}

std::vector<double> dense_params(const SampledCurve& curve, std::size_t minimum) {
  std::vector<double> ts(curve.params().begin(), curve.params().end());
  for (std::size_t i = 0; i < minimum; ++i) ts.push_back(static_cast<double>(i) / static_cast<double>(minimum));
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

std::size_t samples_for_degree(long degree) { return 8 * static_cast<std::size_t>(std::abs(degree)) + 64; }

// --- CSV --------------------------------------------------------------------

SampledCurve read_curve_csv(std::istream& in) {
  std::optional<Chart> chart = Chart::North;
  std::vector<Complex> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("chart=");
      if (pos != std::string::npos) {
        const std::string name = line.substr(pos + 6);
        if (name.rfind("north", 0) == 0) chart = Chart::North;
        else if (name.rfind("south", 0) == 0) chart = Chart::South;
        else if (name.rfind("plane", 0) == 0) chart = std::nullopt;
        else throw Error(ErrorKind::ParseError, "unknown chart '" + name + "'");
      }
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::ParseError, "curve rows are re,im");
    try {
      std::size_t used = 0;
      const double re = std::stod(line.substr(0, comma), &used);
      const double im = std::stod(line.substr(comma + 1));
      pts.emplace_back(re, im);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "bad curve row '" + line + "'");
    }
  }
  return SampledCurve(std::move(pts), chart);
}

void write_curve_csv(std::ostream& out, const SampledCurve& curve) {
  out << "# chart=" << (curve.chart() ? std::string(to_string(*curve.chart())) : std::string("plane")) << "\n";
  for (Complex p : curve.points()) out << format_real(p.real()) << "," << format_real(p.imag()) << "\n";
}

}  // namespace sphere
