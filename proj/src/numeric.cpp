#include "sphere/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <limits>

namespace sphere::numeric {

double bisect(const std::function<double(double)>& g, double a, double b) {
  double ga = g(a);
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double gm = g(m);
    if (gm == 0.0) return m;
    if ((gm < 0) == (ga < 0)) {
      a = m;
      ga = gm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> sign_change_roots(const std::function<double(double)>& g, int grid) {
  std::vector<double> roots;
  double prev_s = 0, prev_g = 0;
  for (int i = 0; i < grid; ++i) {
    const double u = -1.0 + 2.0 * (i + 0.5) / grid;
    const double s = expand(u);
    const double gs = g(s);
    if (std::isnan(gs)) {
      prev_g = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    if (gs == 0.0) {
      roots.push_back(s);
    } else if (i > 0 && !std::isnan(prev_g) && prev_g != 0.0 && (gs < 0) != (prev_g < 0)) {
      roots.push_back(bisect(g, prev_s, s));
    }
    prev_s = s;
    prev_g = gs;
  }
  return unique_sorted(std::move(roots), 1e-12);
}

std::vector<double> unique_sorted(std::vector<double> xs, double tol) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs) {
    if (out.empty() || std::abs(x - out.back()) > tol * std::max(1.0, std::abs(x))) out.push_back(x);
  }
  return out;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("SPHERE_CENSUS_SEED");
  if (env == nullptr) return 0;
  std::uint64_t seed = 0;
  const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), seed);
  if (ec != std::errc()) return 0;
  return seed;
}

}  // namespace sphere::numeric
