#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace sphere::numeric {

/// Monotone map of the extended line onto [-1, 1]; ±inf go to ±1.
inline double compactify(double x) { return std::atan(x) * (2.0 / std::numbers::pi); }
inline double expand(double u) { return std::tan(u * (std::numbers::pi / 2.0)); }

/// Roots of a continuous g: R -> R located by sign changes on `grid` cells
/// uniform in the compactified coordinate, refined by bisection to machine
/// precision. Tangential roots are not detected.
std::vector<double> sign_change_roots(const std::function<double(double)>& g, int grid = 10000);

/// Bisection on [a, b] with g(a), g(b) of opposite sign.
double bisect(const std::function<double(double)>& g, double a, double b);

/// Sort and merge values closer than tol.
std::vector<double> unique_sorted(std::vector<double> xs, double tol);

/// Deterministic uniform doubles in [0, 1) from a 64-bit seed (splitmix64);
/// identical on every platform, unlike the <random> distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Seed from SPHERE_CENSUS_SEED, default 0.
std::uint64_t default_seed();

}  // namespace sphere::numeric
