#include "sphere/gallery.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "sphere/annuli.hpp"
#include "sphere/census.hpp"
#include "sphere/degree.hpp"
#include "sphere/lefschetz.hpp"
#include "sphere/numeric.hpp"
#include "sphere/strip_lift.hpp"
#include "sphere/winding.hpp"

namespace sphere {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string product_spec(int d) { return "product:q=affine(2,0);d=" + std::to_string(d); }

template <class F>
CriterionResult timed(std::string id, std::string title, double budget, F&& body) {
  CriterionResult r;
  r.id = std::move(id);
  r.title = std::move(title);
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream detail;
  try {
    r.pass = body(detail);
  } catch (const std::exception& e) {
    r.pass = false;
    detail << " error: " << e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget > 0.0 && r.seconds >= budget) {
    r.pass = false;
    detail << " over the " << budget << " s budget";
  }
  r.detail = detail.str();
  return r;
}

std::string join_counts(const CensusReport& report) {
  std::string s;
  for (const auto& row : report.rows) {
    if (!s.empty()) s += ",";
    s += row.count ? std::to_string(*row.count) : std::string("inf");
  }
  return s;
}

// --- criteria ---------------------------------------------------------------

bool counterexample(std::ostream& detail, const std::string& spec) {
  const auto report = growth_report(parse_map_spec(spec), 8, false);
  bool all_two = true;
  for (const auto& row : report.rows) all_two = all_two && row.count && *row.count == 2;
  detail << spec << " counts " << join_counts(report) << " has_rate=" << (report.has_rate_numerically ? "true" : "false");
  return all_two && !report.has_rate_numerically;
}

/// Fixed points of z^(2^n): 0, ∞ and the (2^n - 1)-th roots of unity.
bool matches_power_oracle(const FixedPointSet& fixed, long m) {
  std::vector<SpherePoint> oracle{SpherePoint::south_pole(), SpherePoint::north_pole()};
  for (long k = 0; k < m - 1; ++k) oracle.push_back(SpherePoint::from_north(std::polar(1.0, kTwoPi * k / (m - 1))));
  if (oracle.size() != fixed.points.size()) return false;
  for (const auto& o : oracle) {
    bool hit = false;
    for (const auto& p : fixed.points) hit = hit || chordal_distance(o, p) < 1e-8;
    if (!hit) return false;
  }
  return true;
}

bool power_rate(std::ostream& detail) {
  const MapSpec map = parse_map_spec("power:d=2");
  const auto report = growth_report(map, 8, false);
  bool ok = true;
  for (const auto& row : report.rows) {
    const long expected = (1L << row.n) + 1;
    ok = ok && row.count && *row.count == expected;
    ok = ok && matches_power_oracle(fixed_points(map, row.n), 1L << row.n);
  }
  const double final_rate = report.rows.back().rate.value_or(0.0);
  detail << "counts " << join_counts(report) << " final rate " << format_real(final_rate);
  return ok && final_rate >= std::log(2.0) - 0.05;
}

bool theorem3(std::ostream& detail) {
  bool ok = true;
  for (int d : {2, 3, -1, -2}) {
    const MapSpec map = parse_map_spec(product_spec(d));
    const auto comps = decompose(map);
    const auto& c = comps.front();
    const long inside = count_in_band(fixed_points(map, 1), c.window.lo, c.window.hi);
    const long bound = std::abs(d - 1);
    const bool this_ok = comps.size() == 1 && c.repelling && theorem3_bound(c) == bound && inside == bound;
    detail << "d=" << d << ": " << inside << " fixed points, bound " << bound << (this_ok ? "; " : " (FAIL); ");
    ok = ok && this_ok;
  }
  return ok;
}

bool rectangle_models(std::ostream& detail) {
  struct Model {
    const char* name;
    double ax, ay;
    Certificate expected;
  };
  const Model models[] = {{"expand", 2.0, 2.0, Certificate::ExpandingCase},
                          {"contract", 0.5, 0.5, Certificate::ContractingCase},
                          {"saddle-h", 0.5, 2.0, Certificate::SaddleCaseH},
                          {"saddle-v", 2.0, 0.5, Certificate::SaddleCaseV}};
  const Rect rect{-1.0, 1.0, -1.0, 1.0};
  bool ok = true;
  for (const auto& m : models) {
    const PlaneMap f = [&m](Complex z) { return Complex(m.ax * z.real(), m.ay * z.imag()); };
    const Certificate c = rectangle_certificate(f, rect, 32);
    const int numeric_index = lefschetz_index(f, rect.boundary(32));
    const bool this_ok = c == m.expected && numeric_index == certified_index(c);
    detail << m.name << "=" << to_string(c) << "(" << numeric_index << ") ";
    ok = ok && this_ok;
  }
  return ok;
}

bool strip_indices(std::ostream& detail) {
  bool ok = true;
  for (auto [d, expected] : {std::pair{2, 1}, std::pair{-1, -1}, std::pair{0, -1}}) {
    const MapSpec map = parse_map_spec(product_spec(d));
    const auto comps = decompose(map);
    const auto result = verify_index(lift(map, comps.front(), 0));
    const bool this_ok = result.index == expected && result.projection && result.residual < 1e-10;
    detail << "d=" << d << " index " << result.index << " m=" << result.m_used << " residual "
           << format_real(result.residual) << "; ";
    ok = ok && this_ok;
  }
  return ok;
}

bool cactus(std::ostream& detail) {
  const MapSpec map = parse_map_spec("product:q=pwl(-2:-1,-1:inf,1:-inf,2:1);d=2");
  const auto comps = decompose(map);
  const auto report = cactus_check(map, comps);
  detail << comps.size() << " components (d_i, delta):";
  for (const auto& e : report.entries) detail << " (" << e.d_i << "," << e.delta << ")";
  detail << " sum " << report.sum << " declared " << report.declared;
  return comps.size() == 3 && report.pass;
}

/// Winding of the image polyline of the witness about S, independent of the
/// adaptive annular-degree integrator.
int image_winding(const MapSpec& map, const SampledCurve& witness) {
  const Chart chart = witness.chart().value_or(Chart::North);
  std::vector<Complex> image;
  for (int i = 0; i < 512; ++i) {
    const SpherePoint p = evaluate(map, SpherePoint(witness.at(i / 512.0), chart));
    image.push_back(*to_chart(p, Chart::North).coordinate(Chart::North));
  }
  return winding_number(SampledCurve(image, Chart::North), south_pole_coordinate(map));
}

bool hypothesis_h(std::ostream& detail) {
  bool ok = true;
  for (int d = 2; d <= 5; ++d) {
    const auto r = check_hypothesis_H(MapSpec::power(d));
    ok = ok && r.pass;
    detail << "power:d=" << d << (r.pass ? " pass" : " FAIL") << "; ";
  }
  for (const char* spec : {"quad:c=0.1", "quad:c=0.2", "quad:c=0.1+0.1i"}) {
    const MapSpec map = parse_map_spec(spec);
    const auto r = check_hypothesis_H(map);
    const int w = r.witness ? image_winding(map, *r.witness) : 0;
    ok = ok && !r.pass && r.witness && w != 0 && w == r.witness_winding;
    detail << spec << (r.pass ? " pass" : " fail") << " witness winding " << w << "; ";
  }
  return ok;
}

// --- property suites --------------------------------------------------------

SampledCurve random_loop_through(Complex base, numeric::Rng& rng) {
  const Complex center = base + std::polar(rng.uniform(0.3, 2.0), rng.uniform(0.0, kTwoPi));
  const double dir = rng.uniform() < 0.5 ? 1.0 : -1.0;
  const double squash = rng.uniform(0.5, 1.0);
  std::vector<Complex> pts;
  for (int i = 0; i < 64; ++i) {
    const Complex u = (base - center) * std::polar(1.0, dir * kTwoPi * i / 64.0);
    // Squash along the radial direction of the base point, keeping it fixed.
    const Complex axis = (base - center) / std::abs(base - center);
    const Complex local = u / axis;
    pts.push_back(center + axis * Complex(local.real(), squash * local.imag()));
  }
  return SampledCurve(std::move(pts), std::nullopt);
}

double polyline_distance(const SampledCurve& c, Complex p) {
  double best = std::numeric_limits<double>::infinity();
  const auto& pts = c.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Complex a = pts[i], b = pts[(i + 1) % pts.size()];
    const Complex ab = b - a;
    const double t = std::clamp(((p - a) * std::conj(ab)).real() / std::norm(ab), 0.0, 1.0);
    best = std::min(best, std::abs(p - (a + t * ab)));
  }
  return best;
}

Complex random_query(numeric::Rng& rng, const std::vector<const SampledCurve*>& avoid) {
  for (;;) {
    const Complex p(rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0));
    bool far = true;
    for (const auto* c : avoid) far = far && polyline_distance(*c, p) > 0.01;
    if (far) return p;
  }
}

int winding_additivity(numeric::Rng& rng) {
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Complex base(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const SampledCurve a = random_loop_through(base, rng), b = random_loop_through(base, rng);
    const SampledCurve ab = concatenate(a, b);
    const Complex p = random_query(rng, {&a, &b});
    if (winding_number(ab, p) != winding_number(a, p) + winding_number(b, p)) ++violations;
  }
  return violations;
}

int winding_perturbation(numeric::Rng& rng) {
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const SampledCurve c = random_loop_through(Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)), rng);
    const Complex p = random_query(rng, {&c});
    const double eps = 0.01 * polyline_distance(c, p);
    std::vector<Complex> jittered;
    for (Complex z : c.points()) jittered.push_back(z + std::polar(eps * rng.uniform(), rng.uniform(0.0, kTwoPi)));
    if (winding_number(SampledCurve(jittered, std::nullopt), p) != winding_number(c, p)) ++violations;
  }
  return violations;
}

int lefschetz_fixed_points(numeric::Rng& rng, int& certified) {
  int violations = 0;
  certified = 0;
  while (certified < 50) {
    const Complex p(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    auto factor = [&rng] { return rng.uniform() < 0.5 ? rng.uniform(1.5, 3.0) : rng.uniform(0.2, 0.7); };
    const double lx = factor(), ly = factor();
    const double hx = rng.uniform(0.2, 1.5), hy = rng.uniform(0.2, 1.5);
    const double eps = 0.05;
    const PlaneMap f = [=](Complex z) {
      const double x = z.real() - p.real(), y = z.imag() - p.imag();
      return p + Complex(lx * x + eps * y * y / hy, ly * y + eps * x * x / hx);
    };
    const Complex c = p + Complex(hx * rng.uniform(-0.3, 0.3), hy * rng.uniform(-0.3, 0.3));
    const Rect rect{c.real() - hx, c.real() + hx, c.imag() - hy, c.imag() + hy};
    if (rectangle_certificate(f, rect, 32) == Certificate::NoCertificate) continue;
    ++certified;
    const auto z = find_fixed_point(f, rect);
    if (!z || !rect.contains(*z) || std::abs(f(*z) - *z) > 1e-9) ++violations;
  }
  return violations;
}

int degree_independence(std::ostream& detail) {
  int violations = 0;
  const auto seed = numeric::default_seed();
  for (const auto& g : gallery_maps()) {
    const MapSpec map = parse_map_spec(g.spec);
    numeric::Rng first(seed), second(seed + 0x5eed);
    try {
      const long a = global_degree(map, first).global;
      const long b = global_degree(map, second).global;
      if (a != b || a != map.declared_degree()) {
        ++violations;
        detail << g.name << " " << a << "/" << b << " ";
      }
    } catch (const Error& e) {
      ++violations;
      detail << g.name << " " << to_string(e.kind()) << " ";
    }
  }
  return violations;
}

bool properties(std::ostream& detail) {
  numeric::Rng rng(numeric::default_seed());
  const int additivity = winding_additivity(rng);
  const int perturbation = winding_perturbation(rng);
  int certified = 0;
  const int lefschetz = lefschetz_fixed_points(rng, certified);
  std::ostringstream degree_detail;
  const int degree = degree_independence(degree_detail);
  detail << "additivity " << additivity << "/100, perturbation " << perturbation << "/100, lefschetz " << lefschetz
         << "/" << certified << ", degree " << degree << "/" << gallery_maps().size() << " violations";
  if (degree != 0) detail << " [" << degree_detail.str() << "]";
  return additivity == 0 && perturbation == 0 && lefschetz == 0 && degree == 0;
}

}  // namespace

const std::vector<GalleryMap>& gallery_maps() {
  static const std::vector<GalleryMap> maps = {
      {"square", "power:d=2"},
      {"cube", "power:d=3"},
      {"quartic", "power:d=4"},
      {"quintic", "power:d=5"},
      {"inverse-square", "power:d=-2"},
      {"quad-0.1", "quad:c=0.1"},
      {"quad-0.2", "quad:c=0.2"},
      {"quad-complex", "quad:c=0.1+0.1i"},
      {"rational", "rational:P=1,0,2;Q=0,3,1"},
      {"product-d2", product_spec(2)},
      {"product-d3", product_spec(3)},
      {"product-d-1", product_spec(-1)},
      {"product-d-2", product_spec(-2)},
      {"product-d0", product_spec(0)},
      {"shift-d2", "product:q=affine(1,0.69314718056);d=2"},
      {"twisted", "product:q=affine(2,0.3);d=2;h=affine(0.5,0.1)"},
      {"cactus", "product:q=pwl(-2:-1,-1:inf,1:-inf,2:1);d=2"},
      {"square-twice", "iter:n=2(power:d=2)"},
      {"cactus-twice", "iter:n=2(product:q=pwl(-2:-1,-1:inf,1:-inf,2:1);d=2)"},
  };
  return maps;
}

std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  out.push_back(timed("1", "counterexample has two periodic points", 1.0,
                      [](std::ostream& d) { return counterexample(d, "product:q=affine(2,0);d=2"); }));
  auto info = timed("1-info", "(r,θ)↦(2r,2θ) written in log-latitude", 1.0,
                    [](std::ostream& d) { return counterexample(d, "product:q=affine(1,0.69314718056);d=2"); });
  info.informational = true;
  out.push_back(std::move(info));
  out.push_back(timed("2", "z^2 has the rate", 5.0, power_rate));
  out.push_back(timed("3", "at least |d-1| fixed points in repelling annuli", 2.0, theorem3));
  out.push_back(timed("4", "rectangle index certificates", 0.0, rectangle_models));
  out.push_back(timed("5", "strip-lift indices and lift fixed points", 0.0, strip_indices));
  out.push_back(timed("6", "cactus identities", 0.0, cactus));
  out.push_back(timed("7", "hypothesis (H) discrimination", 0.0, hypothesis_h));
  out.push_back(timed("8", "property suites", 0.0, properties));
  return out;
}

bool print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    const char* tag = r.informational ? "INFO" : (r.pass ? "PASS" : "FAIL");
    char seconds[32];
    std::snprintf(seconds, sizeof seconds, "%.3f", r.seconds);
    out << tag << "  criterion " << r.id << ": " << r.title << " -- " << r.detail << " (" << seconds << " s)\n";
    if (!r.informational) all = all && r.pass;
  }
  return all;
}

}  // namespace sphere
