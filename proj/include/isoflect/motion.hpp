#pragma once

#include <cstdint>
#include <vector>

#include "isoflect/types.hpp"

namespace isoflect {

/// Affine motion of I^3:
///   planar:   z -> alpha * z + beta        (conformal)
///             z -> alpha * conj(z) + beta  (anti-conformal)
///   vertical: t -> eps * t + Re(conj(grad) * z) + delta
///
/// With |alpha| = 1 the planar part is an isometry of dx^2 + dy^2; a
/// non-zero `grad` is the isotropic shear (x, y, t) -> (x, y, t - a x - b y - c).
struct MotionI3 {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};
  bool anti = false;
  int eps = 1;
  Complex grad{0.0, 0.0};
  double delta = 0.0;

  static MotionI3 identity() { return {}; }
  static MotionI3 translation(const Point3& v);
  /// Planar reflection across the line through p with direction dir; t fixed.
  static MotionI3 line_reflection(Complex p, Complex dir);
  /// 180 degree rotation about the horizontal line through (p, height) with
  /// direction dir: planar reflection and t -> 2 height - t.
  static MotionI3 line_rotation(Complex p, Complex dir, double height);
  /// t -> 2 height - t.
  static MotionI3 height_reflection(double height);
  /// (x, y, t) -> (x, y, t - a x - b y - c).
  static MotionI3 shear(double a, double b, double c);

  Complex apply_planar(Complex z) const;
  Point3 apply(const Point3& p) const;
  Point3 operator()(const Point3& p) const { return apply(p); }

  /// Composite "this after other".
  MotionI3 after(const MotionI3& other) const;
  MotionI3 inverse() const;

  bool is_planar_isometry(double tol = 1e-12) const { return std::abs(std::abs(alpha) - 1.0) <= tol; }
  bool is_translation(double tol = 1e-9) const;
  Point3 translation_part() const { return {beta.real(), beta.imag(), delta}; }

  /// Images of four probe points rounded to 1e-9; equal motions share it.
  std::vector<std::int64_t> fingerprint() const;
};

inline MotionI3 operator*(const MotionI3& a, const MotionI3& b) { return a.after(b); }

/// Exact isotropic shear of a point.
Point3 isotropic_shear(double a, double b, double c, const Point3& p);

}  // namespace isoflect
