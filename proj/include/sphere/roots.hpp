#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace sphere::roots {

using Complex = std::complex<double>;

/// Newton correction p(z)/p'(z) of a polynomial known only by evaluation.
using NewtonStep = std::function<Complex(Complex)>;

struct AberthOptions {
  /// Radius of the starting circle; the guesses are equally spaced on it with
  /// a fixed angular offset, so results are deterministic.
  double start_radius = 1.0;
  int max_iterations = 1000;
  double tolerance = 1e-14;
};

/// All `degree` roots (with multiplicity) of the polynomial whose Newton
/// correction is `step`, by Aberth–Ehrlich simultaneous iteration.
/// Throws NumericalFailure when the iteration does not settle.
std::vector<Complex> aberth(int degree, const NewtonStep& step, const AberthOptions& options = {});

/// Roots of an explicit polynomial (ascending coefficients). Exact zero
/// roots are split off before iterating.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coefficients);

struct Cluster {
  Complex center;
  int multiplicity;
};

/// Group roots closer than tol (relative to max(1, |root|)).
std::vector<Cluster> cluster(const std::vector<Complex>& roots, double tol);

}  // namespace sphere::roots
