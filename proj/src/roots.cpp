#include "sphere/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sphere/error.hpp"

namespace sphere::roots {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::pair<Complex, Complex> horner(const std::vector<Complex>& c, Complex z) {
  Complex p = 0.0, dp = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

}  // namespace

std::vector<Complex> aberth(int degree, const NewtonStep& step, const AberthOptions& options) {
  if (degree <= 0) return {};
  std::vector<Complex> z(degree);
  for (int k = 0; k < degree; ++k) {
    z[k] = std::polar(options.start_radius, 2.0 * std::numbers::pi * k / degree + 0.4);
  }
  if (degree == 1) {
    // Plain Newton; Aberth's repulsion term is empty.
    for (int it = 0; it < options.max_iterations; ++it) {
      const Complex n = step(z[0]);
      if (!finite(n)) throw Error(ErrorKind::NumericalFailure, "Newton step is not finite");
      z[0] -= n;
      if (std::abs(n) <= options.tolerance * std::max(1.0, std::abs(z[0]))) return z;
    }
    throw Error(ErrorKind::NumericalFailure, "Newton iteration did not converge");
  }

  std::vector<double> last_step(degree, std::numeric_limits<double>::infinity());
  std::vector<char> settled(degree, 0);
  for (int it = 0; it < options.max_iterations; ++it) {
    bool all = true;
    for (int k = 0; k < degree; ++k) {
      if (settled[k]) continue;
      const Complex n = step(z[k]);
      if (!finite(n)) {
        z[k] *= Complex(1.0 + 1e-3, 1e-3);
        all = false;
        continue;
      }
      Complex repulsion = 0.0;
      for (int j = 0; j < degree; ++j) {
        if (j == k) continue;
        const Complex diff = z[k] - z[j];
        if (diff != 0.0) repulsion += 1.0 / diff;
      }
      const Complex w = n / (1.0 - n * repulsion);
      if (!finite(w)) {
        z[k] *= Complex(1.0 + 1e-3, 1e-3);
        all = false;
        continue;
      }
      z[k] -= w;
      last_step[k] = std::abs(w) / std::max(1.0, std::abs(z[k]));
      if (last_step[k] <= options.tolerance) {
        settled[k] = 1;
      } else {
        all = false;
      }
    }
    if (all) return z;
  }
  // Clustered roots converge linearly; accept them once the steps are small.
  const double worst = *std::max_element(last_step.begin(), last_step.end());
  if (worst <= 1e-7) return z;
  throw Error(ErrorKind::NumericalFailure, "Aberth iteration did not converge");
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coefficients) {
  std::vector<Complex> c = coefficients;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.empty()) throw Error(ErrorKind::NumericalFailure, "roots of the zero polynomial");
  std::size_t zeros = 0;
  while (c[zeros] == 0.0) ++zeros;
  std::vector<Complex> roots(zeros, Complex(0.0));
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
  const int m = static_cast<int>(c.size()) - 1;
  if (m <= 0) return roots;

  AberthOptions options;
  options.start_radius = std::pow(std::abs(c.front()) / std::abs(c.back()), 1.0 / m);
  auto step = [&c](Complex z) {
    const auto [p, dp] = horner(c, z);
    if (p == 0.0) return Complex(0.0);
    return p / dp;
  };
  auto found = aberth(m, step, options);
  for (Complex& r : found) {
    // A couple of Newton polishing steps, kept only when they reduce |p|.
    for (int i = 0; i < 3; ++i) {
      const auto [p, dp] = horner(c, r);
      if (p == 0.0 || dp == 0.0) break;
      const Complex next = r - p / dp;
      if (std::abs(horner(c, next).first) < std::abs(p)) r = next; else break;
    }
  }
  roots.insert(roots.end(), found.begin(), found.end());
  return roots;
}

std::vector<Cluster> cluster(const std::vector<Complex>& roots, double tol) {
  std::vector<Cluster> out;
  std::vector<Complex> sums;
  for (Complex r : roots) {
    bool merged = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (std::abs(r - out[i].center) <= tol * std::max(1.0, std::abs(r))) {
        sums[i] += r;
        ++out[i].multiplicity;
        out[i].center = sums[i] / static_cast<double>(out[i].multiplicity);
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.push_back({r, 1});
      sums.push_back(r);
    }
  }
  return out;
}

}  // namespace sphere::roots
