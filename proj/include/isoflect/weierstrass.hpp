#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "isoflect/expr.hpp"
#include "isoflect/quad.hpp"
#include "isoflect/surface.hpp"

namespace isoflect {

/// Weierstrass data (F, G) of the deformation family
///
///   X_c(w) = origin + Re int_{w0}^{w} (1 - c G^2, -i (1 + c G^2), 2 G) F dzeta
///
/// c = 0 is a zero mean curvature surface in I^3, c = 1 a minimal surface in
/// E^3 and c = -1 a maximal surface in L^3. `planar_sign` multiplies the
/// (x, y) part; conjugation flips it (X* := -(h*, t*)).
struct WeierstrassData {
  Expr F = Expr::constant(1.0);
  Expr G = Expr::constant(0.0);
  Complex basepoint{1.0, 0.0};
  double c = 0.0;
  ChartKind chart = ChartKind::HalfPlane;
  std::vector<Complex> singularities;  // poles of G, declared explicitly
  Point3 origin{};
  int planar_sign = 1;
  double tol = 1e-10;

  /// Base point inside the chart, F analytic, F*G finite near declared
  /// poles lying in the open chart. Throws ValidationError.
  void validate() const;
  std::size_t hash() const;
};

/// Default base point of a chart: 1 on half-planes, 0 on disks.
Complex default_basepoint(ChartKind chart);

/// The three components of (1 - cG^2, -i(1 + cG^2), 2G) F at w.
std::array<Complex, 3> family_integrand(const WeierstrassData& data, Complex w);

/// X_c(w) by quadrature from the base point.
Point3 evaluate_family(const WeierstrassData& data, Complex w);

/// X_c(w) - X_c(from) integrated along the straight segment; accurate to
/// roundoff for short segments, used by finite-difference checks.
Point3 family_offset(const WeierstrassData& data, Complex from, Complex to);

/// Data (iF, G) with the sign convention that makes the result -(h*, t*),
/// t* normalised to vanish at the base point.
WeierstrassData conjugate(const WeierstrassData& data);

/// |F(w)|^2, the conformal factor of the induced metric.
double metric_factor(const WeierstrassData& data, Complex w);

/// Zeros of F in `region` (grid scan plus Newton polish), each with |F| <= 1e-10.
std::vector<Complex> singular_points(const WeierstrassData& data, const Rect& region, int resolution);

/// Quadrature-backed surface with a shared primitive cache.
SurfaceMap make_surface(const WeierstrassData& data);

/// (Re h, Im h, t).
SurfaceMap from_harmonic_pair(std::function<Complex(Complex)> h, std::function<double(Complex)> t,
                              ChartKind chart);

/// Residual of the graph equation of a zero mean curvature surface in the
/// metric dx^2 + dy^2 + c dt^2,
///   (1 + c u_y^2) u_xx - 2 c u_x u_y u_xy + (1 + c u_x^2) u_yy,
/// for the graph t = u(x, y) of X_c around X_c(w). The graph is recovered by
/// Newton inversion of the planar part; derivatives by central differences
/// of step h in the xy-plane.
double graph_pde_residual(const WeierstrassData& data, Complex w, double h);

// Presets.

/// (F, G) = (1, 1/(2 pi i w)) on the upper half-plane, base point 1, origin
/// chosen so X(r e^{i theta}) = (r cos theta, r sin theta, theta / pi).
WeierstrassData helicoid_data();
SurfaceMap helicoid_closed_form();
/// (r sin theta, -r cos theta, log(r) / pi).
SurfaceMap isotropic_catenoid_closed_form();

}  // namespace isoflect
