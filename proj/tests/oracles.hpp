#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "isoflect/harmonic.hpp"

namespace oracle {

using isoflect::Complex;
using isoflect::kPi;

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature of a smooth integrand on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson_step(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50);
}

/// Poisson integral on the upper half-plane by direct quadrature of the
/// kernel over each boundary arc in the variable u with s = tan(u).
inline double poisson_halfplane(const isoflect::BoundaryData& bd, Complex w) {
  double sum = 0.0;
  for (const auto& arc : bd.arcs) {
    const double u0 = std::isinf(arc.from) ? -kPi / 2 : std::atan(arc.from);
    const double u1 = std::isinf(arc.to) ? kPi / 2 : std::atan(arc.to);
    auto kernel = [&](double u) {
      const double c = std::cos(u);
      if (c == 0.0) return w.imag() / kPi;
      const double s = std::tan(u);
      const double dx = w.real() - s;
      return w.imag() / (kPi * (dx * dx * c * c + w.imag() * w.imag() * c * c));
    };
    sum += arc.value * simpson(kernel, u0, u1);
  }
  return sum;
}

/// Poisson integral on the unit disk by direct quadrature of the kernel.
inline double poisson_disk(const isoflect::BoundaryData& bd, Complex w) {
  double sum = 0.0;
  const double m = 1.0 - std::norm(w);
  for (const auto& arc : bd.arcs) {
    auto kernel = [&](double phi) { return m / (2.0 * kPi * std::norm(std::polar(1.0, phi) - w)); };
    sum += arc.value * simpson(kernel, arc.from, arc.to);
  }
  return sum;
}

}  // namespace oracle
