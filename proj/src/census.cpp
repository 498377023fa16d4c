#include "sphere/census.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "sphere/degree.hpp"
#include "sphere/numeric.hpp"
#include "sphere/roots.hpp"

namespace sphere {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDedup = 1e-6;
constexpr double kResidual = 1e-10;
constexpr long kAlgebraicCap = 4096;
constexpr long kAngularCap = 1L << 20;

/// (a : b) with its derivative along the parameter, carried through the
/// stages in homogeneous form and rescaled after each stage.
struct Homogeneous {
  Complex a, b, da, db;
};

void apply_stage(const RationalStage& st, Homogeneous& h) {
  const int D = st.degree;
  std::vector<Complex> pa(static_cast<std::size_t>(D + 1)), pb(static_cast<std::size_t>(D + 1));
  pa[0] = pb[0] = 1.0;
  for (int i = 1; i <= D; ++i) {
    pa[i] = pa[i - 1] * h.a;
    pb[i] = pb[i - 1] * h.b;
  }
  auto form = [&](const Poly& c, Complex& value, Complex& dvalue) {
    value = 0.0;
    Complex da = 0.0, db = 0.0;
    for (int i = 0; i < static_cast<int>(c.size()); ++i) {
      const Complex ci = c[static_cast<std::size_t>(i)];
      if (ci == 0.0) continue;
      value += ci * pa[i] * pb[D - i];
      if (i > 0) da += static_cast<double>(i) * ci * pa[i - 1] * pb[D - i];
      if (D - i > 0) db += static_cast<double>(D - i) * ci * pa[i] * pb[D - i - 1];
    }
    dvalue = da * h.da + db * h.db;
  };
  Homogeneous next{};
  form(st.numerator, next.a, next.da);
  form(st.denominator, next.b, next.db);
  const double scale = std::max(std::abs(next.a), std::abs(next.b));
  if (scale > 0.0 && std::isfinite(scale)) {
    const double inv = 1.0 / scale;
    next.a *= inv;
    next.b *= inv;
    next.da *= inv;
    next.db *= inv;
  }
  h = next;
}

Homogeneous run_stages(const std::vector<RationalStage>& stages, Homogeneous h) {
  for (const auto& st : stages) apply_stage(st, h);
  return h;
}

void add_distinct(std::vector<SpherePoint>& out, const SpherePoint& p) {
  for (const auto& q : out)
    if (chordal_distance(p, q) <= kDedup) return;
  out.push_back(p);
}

void check_residual(const MapSpec& iterate, const SpherePoint& p) {
  const double r = chordal_distance(evaluate(iterate, p), p);
  if (!(r < kResidual))
    throw Error(ErrorKind::NumericalFailure, "fixed point residual " + format_real(r) + " above 1e-10");
}

FixedPointSet algebraic_fixed_points(const MapSpec& iterate, const std::vector<RationalStage>& stages) {
  long total_degree = 1;
  for (const auto& st : stages) {
    total_degree *= st.degree;
    if (total_degree > kAlgebraicCap) throw Error(ErrorKind::DegreeCapExceeded, "iterate degree above 4096");
  }

  FixedPointSet out;
  const bool infinity_fixed = evaluate(iterate, SpherePoint::north_pole()).is_north_pole();
  if (infinity_fixed) {
    const Homogeneous h = run_stages(stages, {1.0, 0.0, 0.0, 1.0});
    const Complex multiplier = h.db / h.a;
    if (std::abs(multiplier - 1.0) < 1e-6)
      throw Error(ErrorKind::UnsupportedSpec, "parabolic fixed point at infinity");
  }

  // h(z) = a(z) - z b(z) has total_degree + 1 roots on the sphere; one of
  // them sits at infinity when infinity is fixed.
  const int finite_roots = static_cast<int>(total_degree) + (infinity_fixed ? 0 : 1);
  auto value = [&stages](Complex z) {
    const Homogeneous h = run_stages(stages, {z, 1.0, 1.0, 0.0});
    return std::pair{h.a - z * h.b, h.da - h.b - z * h.db};
  };
  auto step = [&value](Complex z) {
    const auto [g, dg] = value(z);
    if (g == 0.0) return Complex(0.0);
    return g / dg;
  };
  const auto found = roots::aberth(finite_roots, step);
  for (const auto& c : roots::cluster(found, kDedup)) {
    Complex z = c.center;
    for (int i = 0; i < 5; ++i) {
      const auto [g, dg] = value(z);
      if (g == 0.0 || dg == 0.0) break;
      const Complex next = z - g / dg;
      if (std::abs(value(next).first) < std::abs(g)) z = next; else break;
    }
    const SpherePoint p = SpherePoint::from_north(z);
    check_residual(iterate, p);
    add_distinct(out.points, p);
  }
  if (infinity_fixed) add_distinct(out.points, SpherePoint::north_pole());
  return out;
}

FixedPointSet product_fixed_points(const MapSpec& iterate, const LatitudeForm& form) {
  FixedPointSet out;
  const long D = form.angular_degree();
  if (std::abs(D) > kAngularCap) throw Error(ErrorKind::DegreeCapExceeded, "angular degree above 2^20");

  const auto radial = numeric::sign_change_roots([&form](double s) { return form.radial(s) - s; });
  if (radial.size() > 1000) {
    // R is the identity on a whole band: every latitude there is fixed.
    out.continuum_levels.push_back(radial.front());
  } else {
    for (double s : radial) {
      const double h = form.twist(s);
      if (D == 1) {
        if (std::abs(std::remainder(h, kTwoPi)) < 1e-9) out.continuum_levels.push_back(s);
        continue;
      }
      const long m = D - 1;
      for (long k = 0; k < std::abs(m); ++k) {
        const double theta = (kTwoPi * static_cast<double>(k) - h) / static_cast<double>(m);
        const SpherePoint p = SpherePoint::from_latitude(s, theta);
        check_residual(iterate, p);
        out.points.push_back(p);
      }
    }
  }
  if (form.limit(-1) == -std::numeric_limits<double>::infinity()) out.points.push_back(SpherePoint::south_pole());
  if (form.limit(+1) == std::numeric_limits<double>::infinity()) out.points.push_back(SpherePoint::north_pole());
  return out;
}

}  // namespace

FixedPointSet fixed_points(const MapSpec& map, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidSpec, "iterate count must be positive");
  const MapSpec iterate = n == 1 ? map : MapSpec::iterate(map, n);
  if (auto stages = rational_stages(iterate)) return algebraic_fixed_points(iterate, *stages);
  if (auto form = latitude_form(iterate)) return product_fixed_points(iterate, *form);
  throw Error(ErrorKind::UnsupportedSpec, "no fixed point solver for this map");
}

long count_in_band(const FixedPointSet& fixed, double lo, double hi) {
  long count = 0;
  for (const auto& p : fixed.points) {
    const double s = p.latitude();
    if (s > lo && s < hi) ++count;
  }
  return count;
}

CensusReport growth_report(const MapSpec& map, int n_max, bool with_theorem3) {
  if (n_max < 1) throw Error(ErrorKind::InvalidSpec, "n-max must be at least 1");
  CensusReport report;
  report.map_id = format_map_spec(map);
  report.degree = map.declared_degree();
  for (int n = 1; n <= n_max; ++n) {
    CensusRow row{};
    row.n = n;
    row.bound_dn = std::pow(static_cast<long double>(std::abs(report.degree)), n);
    const auto fixed = fixed_points(map, n);
    if (!fixed.continuum()) {
      row.count = static_cast<long>(fixed.points.size());
      if (*row.count > 0) row.rate = std::log(static_cast<double>(*row.count)) / n;
    }
    if (with_theorem3) {
      try {
        long sum = 0;
        for (const auto& c : decompose(n == 1 ? map : MapSpec::iterate(map, n)))
          if (c.repelling) sum += theorem3_bound(c);
        row.theorem3_sum = sum;
      } catch (const Error&) {
        row.theorem3_sum = std::nullopt;
      }
    }
    report.rows.push_back(row);
  }
  const double target = std::log(static_cast<double>(std::abs(report.degree))) - 0.05;
  for (auto it = report.rows.rbegin(); it != report.rows.rend(); ++it) {
    if (it->rate) {
      report.has_rate_numerically = *it->rate >= target;
      break;
    }
  }
  return report;
}

void write_census_csv(std::ostream& out, const CensusReport& report) {
  out << "n,count,rate,bound_dn,theorem3_sum\n";
  for (const auto& row : report.rows) {
    out << row.n << ',' << (row.count ? std::to_string(*row.count) : std::string("inf")) << ','
        << (row.rate ? format_real(*row.rate) : std::string("na")) << ','
        << format_real(static_cast<double>(row.bound_dn)) << ','
        << (row.theorem3_sum ? std::to_string(*row.theorem3_sum) : std::string("na")) << '\n';
  }
}

bool pole_attracts(const MapSpec& map, bool north) {
  numeric::Rng rng(numeric::default_seed());
  const Complex south = south_pole_coordinate(map);
  for (int i = 0; i < 20; ++i) {
    const Complex offset = std::polar(0.01 * rng.uniform(0.1, 1.0), rng.uniform(0.0, kTwoPi));
    SpherePoint p = north ? SpherePoint(offset, Chart::South) : SpherePoint::from_north(south + offset);
    bool converged = false;
    for (int it = 0; it < 500 && !converged; ++it) {
      p = evaluate(map, p).normalized();
      if (north) {
        converged = p.chart() == Chart::South && std::abs(p.value()) < 1e-8;
      } else {
        const auto z = p.coordinate(Chart::North);
        converged = z && std::abs(*z - south) < 1e-8;
      }
    }
    if (!converged) return false;
  }
  return true;
}

std::string_view to_string(CrosscheckReport::Scope scope) {
  switch (scope) {
    case CrosscheckReport::Scope::InScope: return "in scope";
    case CrosscheckReport::Scope::HypothesisFailed: return "hypothesis (H) fails";
    case CrosscheckReport::Scope::AttractorHypothesisFails: return "attractor hypothesis fails";
  }
  return "in scope";
}

CrosscheckReport theorem_a_crosscheck(const MapSpec& map, int n_max) {
  CrosscheckReport report;
  report.hypothesis = check_hypothesis_H(map);
  if (!report.hypothesis.pass) {
    report.scope = CrosscheckReport::Scope::HypothesisFailed;
    return report;
  }
  report.south_attracts = pole_attracts(map, false);
  report.north_attracts = pole_attracts(map, true);
  if (!report.south_attracts || !report.north_attracts)
    report.scope = CrosscheckReport::Scope::AttractorHypothesisFails;

  const long d = std::abs(map.declared_degree());
  for (int n = 1; n <= n_max; ++n) {
    const MapSpec fn = n == 1 ? map : MapSpec::iterate(map, n);
    CrosscheckRow row{};
    row.n = n;
    for (const auto& c : decompose(fn))
      if (c.repelling) row.theorem3_sum += theorem3_bound(c);
    const auto fixed = fixed_points(map, n);
    row.count = fixed.continuum() ? std::numeric_limits<long>::max() : static_cast<long>(fixed.points.size());
    row.bound_dn = std::pow(static_cast<long double>(d), n);
    row.sum_ok = row.theorem3_sum <= row.count;
    row.bound_ok = row.bound_dn <= static_cast<long double>(row.count);
    report.inequalities_hold = report.inequalities_hold && row.sum_ok && row.bound_ok;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace sphere
