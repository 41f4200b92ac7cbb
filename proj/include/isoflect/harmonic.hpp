#pragma once

#include <functional>
#include <vector>

#include "isoflect/surface.hpp"

namespace isoflect {

/// One boundary arc with a constant height. On the half-plane `from`/`to`
/// are points of the real axis (+-infinity allowed at the ends); on the
/// disk they are angles with from < to.
struct BoundaryArc {
  double from = 0.0;
  double to = 0.0;
  double value = 0.0;
};

/// A jump of piecewise-constant boundary data; `left`/`right` are the values
/// before and after the point in boundary orientation.
struct BoundaryJump {
  double at = 0.0;
  double left = 0.0;
  double right = 0.0;
};

/// Piecewise-constant boundary heights on the boundary of the upper
/// half-plane or the unit disk.
struct BoundaryData {
  ChartKind chart = ChartKind::HalfPlane;
  std::vector<BoundaryArc> arcs;

  /// Half-plane data with jumps s_1 < ... < s_m and m + 1 values.
  static BoundaryData half_plane(const std::vector<double>& jumps, const std::vector<double>& values);
  /// Disk data: angles theta_0 < ... < theta_{m-1} < theta_0 + 2 pi where
  /// values[k] holds on [theta_k, theta_{k+1}].
  static BoundaryData disk(const std::vector<double>& angles, const std::vector<double>& values);
  /// 1 on I_1, 0 on I_2, 1 on I_3, ... where I_k joins w_k = e^{i(k pi/n - pi/(2n))}
  /// and w_{k+1} (the polygon patch heights).
  static BoundaryData alternating_disk(int n);

  /// Arcs must partition the boundary and values be finite. Throws ValidationError.
  void validate() const;
  double min_value() const;
  double max_value() const;
  /// Boundary value at a real point (half-plane) or angle (disk).
  double value_at(double s) const;
  std::vector<BoundaryJump> jumps() const;
};

/// Bounded harmonic extension on the upper half-plane as an arg sum:
///   t(w) = v_inf + sum_j ((left_j - right_j) / pi) arg(w - s_j).
double poisson_halfplane(const BoundaryData& bd, Complex w);

/// Harmonic extension into the unit disk as a sum of inscribed angles.
double poisson_disk(const BoundaryData& bd, Complex w);

/// Dispatches on bd.chart.
double poisson(const BoundaryData& bd, Complex w);

/// Harmonic conjugate t* of the Poisson extension (log-modulus sum), with
/// t*(i) = 0 on the half-plane and t*(0) = 0 on the disk. Throws DomainError
/// at jump points where t* diverges.
double conjugate_harmonic(const BoundaryData& bd, Complex w);

/// Blow-up of a boundary jump. On the half-plane `jump` is a real point and
/// Pi(r, theta) = jump + r e^{i theta}. On the disk `jump` is the angle of the
/// boundary point w0 = e^{i jump} and Pi(r, theta) = w0 (i - z) / (i + z) with
/// z = r e^{i theta}, which sends the upper half-plane onto the disk and 0 to w0.
/// `a` is the height before the jump and `b` the height after it in boundary
/// orientation (left/right on the real axis, clockwise/counterclockwise on the circle).
struct BlowUpChart {
  double jump = 0.0;
  double a = 0.0;
  double b = 0.0;
  ChartKind chart = ChartKind::HalfPlane;

  /// Conformal coordinate of the jump point.
  Complex point() const;
  Complex pi(double r, double theta) const;
  /// Height on the isotropic seam r = 0.
  double seam_height(double theta) const { return a * theta / kPi + b * (1.0 - theta / kPi); }
};

/// Real-analytic extension of t o Pi to R x (0, pi):
///   r > 0: t(Pi(r, theta)); r = 0: a theta/pi + b (1 - theta/pi);
///   r < 0: a + b - t(Pi(-r, pi - theta)).
double extend_blowup(const std::function<double(Complex)>& t, const BlowUpChart& chart, double r,
                     double theta);

}  // namespace isoflect
