#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "sphere/charts.hpp"

namespace sphere {

/// A closed curve given by samples in one chart (or in a plain plane when the
/// chart is empty). The last sample connects back to the first.
///
/// Every curve can be evaluated at any parameter t in [0, 1]: through its
/// parameterization when one was supplied, by linear interpolation between
/// samples otherwise. Adaptive refinement inserts points through `at`.
class SampledCurve {
 public:
  using Parameterization = std::function<Complex(double)>;

  explicit SampledCurve(std::vector<Complex> points, std::optional<Chart> chart = Chart::North);

  /// Uniform samples of a closed parametric curve g: [0, 1) -> C.
  static SampledCurve parametric(Parameterization g, std::size_t samples,
                                 std::optional<Chart> chart = Chart::North);
  static SampledCurve circle(Complex center, double radius, std::size_t samples = 64,
                             std::optional<Chart> chart = Chart::North);

  const std::vector<Complex>& points() const { return points_; }
  std::span<const double> params() const { return params_; }
  std::optional<Chart> chart() const { return chart_; }
  bool has_parameterization() const { return static_cast<bool>(param_); }
  std::size_t size() const { return points_.size(); }

  Complex at(double t) const;
  double diameter() const;
  SampledCurve reversed() const;

 private:
  SampledCurve() = default;
  void drop_repeats();

  std::vector<Complex> points_;
  std::vector<double> params_;
  Parameterization param_;
  std::optional<Chart> chart_;
};

/// a followed by b. Both must start at the same base point and share a chart.
SampledCurve concatenate(const SampledCurve& a, const SampledCurve& b);

/// Ind_γ(p): the number of turns of γ(t) - p.
int winding_number(const SampledCurve& curve, Complex p);

enum class Side { Inn, Out };
Side classify(const SampledCurve& curve, Complex p);

/// True when the curve separates the chart origin from infinity.
bool is_essential(const SampledCurve& curve);

// ---------------------------------------------------------------------------
// Shared machinery: turning number of a nonvanishing vector field along a
// closed parameter loop [0, 1].

using Field = std::function<Complex(double)>;

struct FieldOptions {
  /// Field values with modulus at or below this are treated as zeros.
  double zero_tolerance = 0.0;
  ErrorKind zero_error = ErrorKind::PointOnCurve;
  std::size_t max_samples = std::size_t{1} << 20;
  /// Edges are bisected until the argument step is below this.
  double max_step = 1.5707963267948966;
};

/// Summed argument change of field over the closed loop, divided by 2π.
double turning(const Field& field, std::span<const double> params, const FieldOptions& options = {});

/// turning() snapped to the nearest integer; NonIntegralWinding when the
/// residual exceeds 0.05.
int winding_of_field(const Field& field, std::span<const double> params, const FieldOptions& options = {});

/// Argument change of field along the open parameter interval [t0, t1].
double argument_change(const Field& field, double t0, double t1, const FieldOptions& options = {});

/// Winding about S (coordinate `south` in the north chart) of a closed path on
/// the sphere that avoids both poles. Image points near N are handled without
/// leaving the south chart.
int winding_about_south(const std::function<SpherePoint(double)>& path, std::span<const double> params,
                        Complex south, const FieldOptions& options = {});

/// The curve's own parameters merged with a uniform grid of `minimum`
/// points, so maps of high degree do not alias on coarse samples.
std::vector<double> dense_params(const SampledCurve& curve, std::size_t minimum);

/// Initial sample count for integrating along the image of a circle under a
/// map of the given degree.
std::size_t samples_for_degree(long degree);

/// CSV: "# chart=north" header line, then "re,im" rows.
SampledCurve read_curve_csv(std::istream& in);
void write_curve_csv(std::ostream& out, const SampledCurve& curve);

}  // namespace sphere
