#pragma once

#include <functional>
#include <optional>
#include <string_view>

#include "sphere/charts.hpp"
#include "sphere/winding.hpp"

namespace sphere {

/// A map of the plane, used for model maps and strip lifts.
using PlaneMap = std::function<Complex(Complex)>;

/// Index of f along γ: turns of the displacement f(γ(t)) - γ(t).
/// FixedPointOnCurve when the displacement drops to 1e-7 · diam(γ).
int lefschetz_index(const PlaneMap& f, const SampledCurve& curve);

/// Same for a sphere map; the curve lives in its chart (north when untagged)
/// and images at that chart's infinity are handled without overflow.
int lefschetz_index(const MapSpec& map, const SampledCurve& curve);

struct Rect {
  double x0, x1, y0, y1;

  bool contains(Complex z) const { return z.real() > x0 && z.real() < x1 && z.imag() > y0 && z.imag() < y1; }
  Complex center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  Rect scaled(double factor) const;
  /// Counterclockwise boundary starting at the lower-left corner.
  SampledCurve boundary(int samples_per_side) const;
};

enum class Certificate { ExpandingCase, SaddleCaseH, SaddleCaseV, ContractingCase, NoCertificate };

std::string_view to_string(Certificate c);
/// +1, -1, -1, +1; 0 for NoCertificate.
int certified_index(Certificate c);

/// Which boundary pattern of the rectangle lemma holds for f on ∂rect. The
/// certified index is checked against lefschetz_index; a disagreement throws
/// CertificateIndexMismatch.
Certificate rectangle_certificate(const PlaneMap& f, const Rect& rect, int samples_per_side);
Certificate rectangle_certificate(const MapSpec& map, const Rect& rect, int samples_per_side);

/// A fixed point of f inside rect located by repeated halving of a rectangle
/// with nonzero index, then Newton-polished. nullopt when the index vanishes.
std::optional<Complex> find_fixed_point(const PlaneMap& f, const Rect& rect);

/// Newton iteration on f(z) - z with a finite-difference Jacobian.
Complex polish_fixed_point(const PlaneMap& f, Complex z, int iterations = 50);

}  // namespace sphere
