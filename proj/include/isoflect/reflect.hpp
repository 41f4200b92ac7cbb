#pragma once

#include <optional>
#include <vector>

#include "isoflect/expr.hpp"
#include "isoflect/harmonic.hpp"
#include "isoflect/mesh.hpp"
#include "isoflect/motion.hpp"
#include "isoflect/surface.hpp"

namespace isoflect {

/// A regular analytic arc Gamma = gamma(I) with a conformal parametrisation
/// gamma defined near the real interval I.
///   line:     gamma(s) = point + s * direction / |direction|
///   circle:   gamma(s) = center + radius * e^{i s}
///   analytic: gamma given as an expression in w, I = [s0, s1]
class ArcChart {
 public:
  enum class Kind { Line, Circle, Analytic };

  static ArcChart line(Complex point, Complex direction);
  static ArcChart circle(Complex center, double radius);
  /// Throws ValidationError if gamma is not analytic or gamma' vanishes on I.
  static ArcChart analytic(Expr gamma, double s0, double s1);

  Kind kind() const { return kind_; }
  Complex gamma(Complex s) const;
  Complex gamma_prime(Complex s) const;
  /// gamma^{-1}(z); exact for lines and circles, Newton for analytic arcs.
  /// Throws DomainError when z lies outside the reflection neighbourhood.
  Complex inverse(Complex z) const;
  /// R_Gamma(z) = gamma(conj(gamma^{-1}(z))).
  Complex reflect(Complex z) const;
  /// Unit tangent of a line arc (direction of increasing s).
  Complex direction() const { return direction_; }
  Complex anchor() const { return point_; }
  double radius() const { return radius_; }
  const Expr& expression() const { return expr_; }
  std::pair<double, double> interval() const { return {s0_, s1_}; }
  /// The planar motion equal to R_Gamma when Gamma is a line.
  std::optional<MotionI3> as_motion() const;

 private:
  Kind kind_ = Kind::Line;
  Complex point_{};
  Complex direction_{1.0, 0.0};
  double radius_ = 1.0;
  Expr expr_;
  Expr derivative_;
  double s0_ = 0.0, s1_ = 0.0;
  std::vector<double> samples_s_;
  std::vector<Complex> samples_;
};

Complex reflect_arc(const ArcChart& arc, Complex z);

/// Tolerances of boundary validation.
struct ReflectOptions {
  double height_tol = 1e-6;
  double straightness_tol = 1e-8;
  double arc_tol = 1e-6;
  /// Distance from the jump point within which boundary data is checked.
  double validation_radius = 1e-2;
  int validation_samples = 16;
};

/// Parameter interval (real on the half-plane, angles on the disk) whose
/// image is the boundary arc reflected across.
struct BoundaryPiece {
  double from = 0.0;
  double to = 0.0;
};

/// Extension across a horizontal boundary curve lying on Gamma at height
/// `height`: X(mu(w)) = (R_Gamma(h(w)), 2 height - t(w)) where mu is w -> conj(w)
/// on the half-plane and w -> 1 / conj(w) on the disk. The result is a Plane
/// chart covering both sides and the open boundary piece.
SurfaceMap reflect_horizontal(const SurfaceMap& surface, const ArcChart& arc, double height,
                              const BoundaryPiece& piece, const ReflectOptions& opts = {});

/// Isotropic-line extension to the blow-up strip R x (0, pi):
///   r > 0: X(Pi(r, theta));  r = 0: (z0, seam height);
///   r < 0: (R_Gamma(h(Pi(-r, pi - theta))), a + b - t(Pi(-r, pi - theta))).
SurfaceMap extend_isotropic(const SurfaceMap& surface, const BlowUpChart& jump, const ArcChart& arc,
                            const ReflectOptions& opts = {});

/// The isotropic segment {z0} x [tmin, tmax] of cluster values at the jump
/// point, with the largest deviation of sampled X(Pi(rho, theta)) from the
/// seam parametrisation (z0, a theta/pi + b(1 - theta/pi)) at the smallest rho.
struct ClusterSet {
  Complex z0{};
  double tmin = 0.0;
  double tmax = 0.0;
  double sample_residual = 0.0;
};

ClusterSet cluster_set(const SurfaceMap& surface, const BlowUpChart& jump);

struct ParallelLineExtension {
  SurfaceMap surface;
  /// 180 degree rotation about the horizontal line through the midpoint of
  /// the isotropic segment, parallel to the boundary lines.
  MotionI3 motion;
  Complex z0{};
};

/// Extension for two collinear horizontal boundary segments meeting the
/// isotropic line. Throws ValidationError if the boundary is not straight.
ParallelLineExtension reflect_parallel_lines(const SurfaceMap& surface, const BlowUpChart& jump,
                                             Complex line_direction, const ReflectOptions& opts = {});

/// Elements of the group generated by `generators` (and inverses) of word
/// length <= depth, breadth first, deduplicated by fingerprint. The identity
/// comes first.
std::vector<MotionI3> orbit(const std::vector<MotionI3>& generators, int depth);

/// Up to three linearly independent translation vectors in the group
/// spanned by `motions`, shortest first.
std::vector<Point3> period_basis(const std::vector<MotionI3>& motions);

struct Tiling {
  std::vector<Mesh> meshes;
  std::vector<MotionI3> motions;
  std::vector<Point3> periods;
};

Tiling orbit_tiling(const Mesh& seed, const std::vector<MotionI3>& generators, int depth);

}  // namespace isoflect
