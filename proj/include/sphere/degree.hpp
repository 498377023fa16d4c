#pragma once

#include <vector>

#include "sphere/annuli.hpp"
#include "sphere/charts.hpp"
#include "sphere/numeric.hpp"
#include "sphere/winding.hpp"

namespace sphere {

struct DegreeWitness {
  SpherePoint point;
  int local_degree;
};

struct DegreeReport {
  long global = 0;
  std::vector<DegreeWitness> witnesses;
  SpherePoint regular_value;
};

/// Winding of the image of the circle of the given radius about x (in x's
/// normalized chart) around y. RadiusTooLarge when the image passes within
/// 1e-9 of y.
int local_degree(const MapSpec& map, const SpherePoint& x, const SpherePoint& y, double radius);

/// Isolated preimages of y, deduplicated at 1e-7. Algebraic maps are solved
/// stage by stage; product maps by latitude then longitude.
std::vector<SpherePoint> preimages(const MapSpec& map, const SpherePoint& y);

/// Sum of local degrees over the preimages of y; DegreeMismatch when it
/// differs from the declared degree, PreimageClusterTooTight when two
/// preimages are too close to separate.
DegreeReport global_degree(const MapSpec& map, const SpherePoint& y);

/// A value from the seeded sequence: latitude uniform in [-1.5, 1.5],
/// longitude uniform.
SpherePoint random_value(numeric::Rng& rng);

/// global_degree at values drawn from rng, rejecting values whose preimages
/// cannot be separated.
DegreeReport global_degree(const MapSpec& map, numeric::Rng& rng);

/// Turns of f∘core about S. ImageHitsPole when the image comes within 1e-6
/// of a pole.
int annular_degree(const MapSpec& map, const SampledCurve& core);

/// Local-degree sum over preimages of a regular value with latitude in
/// (lower_s, upper_s).
int component_degree(const MapSpec& map, double lower_s, double upper_s, numeric::Rng& rng);

struct CactusEntry {
  int d_i;
  int delta;
  bool magnitudes_agree;
  /// +1 when δ and d have the same sign, -1 otherwise, 0 if either is 0.
  int sign;
};

struct CactusReport {
  std::vector<CactusEntry> entries;
  long sum = 0;
  long declared = 0;
  bool pass = false;
};

CactusReport cactus_check(const MapSpec& map, const std::vector<AnnulusComponent>& decomposition);

}  // namespace sphere
