#pragma once

#include <memory>
#include <vector>

#include "isoflect/harmonic.hpp"
#include "isoflect/mesh.hpp"
#include "isoflect/motion.hpp"
#include "isoflect/reflect.hpp"
#include "isoflect/surface.hpp"

namespace isoflect {

/// f(w) = int_0^w (1 - zeta^{2n})^{-1/n} dzeta along the radial segment.
/// Near a root of unity omega the tail is integrated in u = (1 - zeta/omega)^{1 - 1/n},
/// which makes the endpoint singularity smooth. Requires 2 <= n and |w| <= 1.
Complex sc_map(int n, Complex w, double tol = 1e-12);

/// sum_k (1/pi) arg((w_{2k} - w) / (w_{2k-1} - w)) - 1/2 for |w| < 1.
double polygon_height(int n, Complex w);
/// polygon_height(n, jump.pi(r, theta)) evaluated without forming the point,
/// accurate to roundoff relative to r next to the jump.
double polygon_height(int n, const BlowUpChart& jump, double r, double theta);

/// Regular 2n-gon image of the unit disk under sc_map.
class PolygonChart {
 public:
  /// 2 <= n <= 8.
  explicit PolygonChart(int n, double tol = 1e-12);

  int n() const { return n_; }
  double tol() const { return tol_; }
  /// e^{k pi i / n}, k = 1..2n (index k - 1).
  const std::vector<Complex>& vertex_preimages() const { return vertex_pre_; }
  /// w_k = e^{k pi i / n - pi i / (2n)}, k = 1..2n (index k - 1).
  const std::vector<Complex>& midpoint_preimages() const { return midpoint_pre_; }
  /// f at the vertex and midpoint preimages.
  const std::vector<Complex>& vertices() const { return vertices_; }
  const std::vector<Complex>& midpoints() const { return midpoints_; }
  /// Height of arc I_k (1 for odd k, 0 for even k), k = 1..2n.
  static double arc_height(int k) { return k % 2 == 1 ? 1.0 : 0.0; }
  /// Unit direction of the edge through midpoint k (from vertex k-1 to vertex k).
  Complex edge_direction(int k) const;
  /// Blow-up chart at w_k: height of I_{k-1} before, of I_k after.
  BlowUpChart jump(int k) const;

  Complex map(Complex w) const { return sc_map(n_, w, tol_); }

 private:
  int n_;
  double tol_;
  std::vector<Complex> vertex_pre_, midpoint_pre_, vertices_, midpoints_;
};

/// X = (f, t) on the disk with t = polygon_height.
SurfaceMap schwarz_patch(int n, double tol = 1e-12);
SurfaceMap schwarz_patch(std::shared_ptr<const PolygonChart> chart);

/// 180 degree rotations generating the Schwarz-D-type surface: one about the
/// mid-height line parallel to each edge (the isotropic-line extension at w_k)
/// and one about the horizontal half-edge from midpoint k to vertex k at the
/// height of I_k (the horizontal-line extension across that half-edge).
std::vector<MotionI3> schwarz_d_generators(const PolygonChart& chart);

/// Largest gap between the patch and its image under each generator along
/// the shared seam: points of the half-edge for horizontal generators,
/// mirrored points next to the isotropic line for the others.
double schwarz_seam_residual(std::shared_ptr<const PolygonChart> chart, int samples = 32);

/// Orbit tiling of the n-gon patch mesh sampled at `resolution`.
Tiling schwarz_d_tiling(int depth, int resolution = 17, int n = 2);

}  // namespace isoflect
