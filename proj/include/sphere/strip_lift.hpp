#pragma once

#include <optional>

#include "sphere/annuli.hpp"
#include "sphere/charts.hpp"
#include "sphere/lefschetz.hpp"
#include "sphere/winding.hpp"

namespace sphere {

/// Latitude s ∈ [-inf, inf] ↔ strip height y ∈ [0, 1]. Affine from the
/// window onto [0.25, 0.75], with C¹ exponential tails outside it.
class StripNormalization {
 public:
  explicit StripNormalization(Window window);

  double y_of(double s) const;
  double s_of(double y) const;
  const Window& window() const { return window_; }

 private:
  Window window_;
  double rate_;
};

/// A lift F of f to the strip ℝ × (0, 1), with F(x + 1, y) = F(x, y) + (d, 0).
/// Points are packed as x + iy.
class StripMap {
 public:
  Complex operator()(Complex xy) const;
  PlaneMap as_plane_map() const;

  long translation_degree() const { return degree_; }
  int offset() const { return offset_; }
  const StripNormalization& normalization() const { return norm_; }
  const MapSpec& map() const { return map_; }

  SpherePoint project(Complex xy) const;

 private:
  friend StripMap lift(const MapSpec&, const AnnulusComponent&, int);
  StripMap(MapSpec map, StripNormalization norm, long degree, int offset);

  /// x-coordinate of the image continued along a vertical then a horizontal
  /// path from the base point (0, 0.5); `horizontal_first` swaps the legs.
  double continued_x(double x, double y, bool horizontal_first) const;

  MapSpec map_;
  StripNormalization norm_;
  long degree_;
  int offset_;
  std::optional<LatitudeForm> form_;
  double base_x_ = 0.0;
};

/// The lift F + (k, 0) over the component. LiftDiscontinuity when two path
/// continuations disagree.
StripMap lift(const MapSpec& map, const AnnulusComponent& component, int k);

/// Rectangular loop between y = 0.25 and y = 0.75 spanning x ∈ [-m, max(m, 1)],
/// counterclockwise.
SampledCurve build_beta(const StripMap& F, int m);
Rect beta_rect(int m);

struct LiftIndex {
  int index;
  int m_used;
  /// Fixed point of F inside β and its projection to the sphere.
  std::optional<Complex> lift_fixed_point;
  std::optional<SpherePoint> projection;
  /// Chordal distance between f(p) and p at the projection.
  double residual = 0.0;
};

/// Smallest m ≤ 64 for which the boundary of β is pushed out vertically and
/// out (d ≥ 2) or in (d ≤ 0) horizontally, then the index of F along β.
/// MNotFound past 64; IndexMismatch if the index is not +1 (d ≥ 2) or -1 (d ≤ 0);
/// UnsupportedSpec for d = 1.
LiftIndex verify_index(const StripMap& F);

}  // namespace sphere
