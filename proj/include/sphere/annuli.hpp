#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "sphere/charts.hpp"
#include "sphere/winding.hpp"

namespace sphere {

enum class PoleType { TypeI, TypeII, TypeIII };
std::string_view to_string(PoleType t);

/// One component of f⁻¹({N, S}). Point components (types I and III) carry
/// the point; circle components (type II) carry their latitude level.
struct PolePreimage {
  PoleType type;
  /// Which pole the component maps to.
  bool maps_to_north;
  std::optional<SpherePoint> point;
  std::optional<double> level;
};

/// Pole preimages ordered by latitude (S side first).
std::vector<PolePreimage> pole_preimages(const MapSpec& map);

/// The circle of constant latitude s, counterclockwise as seen from the north
/// chart, stored in whichever chart keeps the radius at most 1.
SampledCurve latitude_circle(double s, std::size_t samples = 128);

struct Window {
  double lo;
  double hi;
};

/// One component U of f⁻¹(A) lying between consecutive pole-preimage circles.
struct AnnulusComponent {
  /// Latitude of the bounding circles; -inf / +inf stand for the poles S / N.
  double lower_s;
  double upper_s;
  /// Closed subannulus used for the repelling test and the strip lift.
  Window window;
  SampledCurve core;
  int delta = 0;
  int d_i = 0;
  bool repelling = false;
  /// The repelling test could not decide (an image touched a boundary).
  bool repelling_inconclusive = false;

  std::optional<SampledCurve> lower_circle() const;
  std::optional<SampledCurve> upper_circle() const;
};

/// Default window for a component between two latitude levels.
Window default_window(double lower_s, double upper_s);

/// Components of f⁻¹(A) from S to N. NotStraightened when a pole preimage is
/// an isolated non-pole point.
std::vector<AnnulusComponent> decompose(const MapSpec& map);

/// Boundary circles of the window map strictly beyond themselves: the upper
/// one above its latitude, the lower one below. BoundaryTouchesImage when an
/// image lands within 1e-9 of a boundary latitude.
bool is_repelling(const MapSpec& map, const AnnulusComponent& component);
bool is_repelling(const MapSpec& map, const Window& window);

/// |δ - 1| for a repelling component; NotRepelling otherwise.
int theorem3_bound(const AnnulusComponent& component);

struct HypothesisReport {
  bool pass;
  std::optional<SampledCurve> witness;
  /// Winding of the witness image about S.
  int witness_winding = 0;
  /// The check only probes small loops around isolated pole preimages.
  bool probe_based = true;
};

HypothesisReport check_hypothesis_H(const MapSpec& map);

}  // namespace sphere
