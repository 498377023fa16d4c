#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sphere/annuli.hpp"
#include "sphere/charts.hpp"

namespace sphere {

struct FixedPointSet {
  std::vector<SpherePoint> points;
  /// Latitudes carrying a whole circle of fixed points.
  std::vector<double> continuum_levels;

  bool continuum() const { return !continuum_levels.empty(); }
};

/// Distinct solutions of fⁿ(p) = p (dedup 1e-6 in chart coordinates), each
/// refined to residual below 1e-10. DegreeCapExceeded past degree 4096 for
/// algebraic maps.
FixedPointSet fixed_points(const MapSpec& map, int n);

struct CensusRow {
  int n;
  /// nullopt for a continuum of fixed points.
  std::optional<long> count;
  /// ln(count) / n; nullopt when count is 0 or infinite.
  std::optional<double> rate;
  long double bound_dn;
  /// Σ |δ - 1| over repelling components of fⁿ, when fⁿ decomposes.
  std::optional<long> theorem3_sum;
};

struct CensusReport {
  std::string map_id;
  long degree = 0;
  std::vector<CensusRow> rows;
  /// The last row with a defined rate reaches ln|degree| - 0.05.
  bool has_rate_numerically = false;
};

CensusReport growth_report(const MapSpec& map, int n_max, bool with_theorem3 = true);

/// CSV with header n,count,rate,bound_dn,theorem3_sum.
void write_census_csv(std::ostream& out, const CensusReport& report);

/// Number of fixed points inside the open latitude band (lo, hi).
long count_in_band(const FixedPointSet& fixed, double lo, double hi);

/// Every orbit of 20 seeded points within 0.01 of the pole converges to it.
bool pole_attracts(const MapSpec& map, bool north);

struct CrosscheckRow {
  int n;
  long theorem3_sum;
  long count;
  long double bound_dn;
  bool sum_ok;
  bool bound_ok;
};

struct CrosscheckReport {
  enum class Scope { InScope, HypothesisFailed, AttractorHypothesisFails };
  Scope scope = Scope::InScope;
  HypothesisReport hypothesis{true, std::nullopt};
  bool south_attracts = false;
  bool north_attracts = false;
  std::vector<CrosscheckRow> rows;
  /// All rows satisfy both inequalities.
  bool inequalities_hold = true;
};

std::string_view to_string(CrosscheckReport::Scope scope);

CrosscheckReport theorem_a_crosscheck(const MapSpec& map, int n_max);

}  // namespace sphere
