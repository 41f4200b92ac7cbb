#pragma once

#include <functional>
#include <string>

#include "isoflect/types.hpp"

namespace isoflect {

/// Parameter domain of a surface chart.
///
/// BlowUpStrip charts take the parameter encoded as r + i*theta with
/// (r, theta) in R x (0, pi); all other charts take the conformal
/// coordinate w directly.
enum class ChartKind { HalfPlane, Disk, Plane, BlowUpStrip };

enum class Provenance { Weierstrass, ClosedForm, HarmonicPair, Reflected };

std::string to_string(ChartKind kind);
ChartKind chart_from_string(const std::string& name);
std::string to_string(Provenance p);

/// Default open domain of a chart kind.
bool in_chart(ChartKind kind, Complex p);

/// Evaluatable chart p -> (x, y, t). Pure and safe to call concurrently.
class SurfaceMap {
 public:
  using Evaluator = std::function<Point3(Complex)>;
  using Domain = std::function<bool(Complex)>;

  SurfaceMap() = default;
  /// An empty `domain` means the chart kind's default domain.
  SurfaceMap(ChartKind chart, Provenance provenance, Evaluator eval, Domain domain = {});

  /// Throws DomainError outside the domain.
  Point3 operator()(Complex p) const;
  bool contains(Complex p) const;

  ChartKind chart() const { return chart_; }
  Provenance provenance() const { return provenance_; }
  bool is_blow_up() const { return chart_ == ChartKind::BlowUpStrip; }

  /// Parameter mapped into the conformal w-plane (Pi(r, theta) for strips).
  Complex conformal_point(Complex p) const;

 private:
  ChartKind chart_ = ChartKind::Plane;
  Provenance provenance_ = Provenance::ClosedForm;
  Evaluator eval_;
  Domain domain_;
};

/// Blow-up map Pi(r, theta) = w0 + r e^{i theta}.
inline Complex blow_up_point(double r, double theta, Complex w0 = 0.0) {
  return w0 + r * Complex{std::cos(theta), std::sin(theta)};
}

/// Max over the three coordinates of the finite-difference Laplacian at p
/// with step h. For blow-up strips the regular operator
/// r^2 f_rr + r f_r + f_thth (= r^2 times the conformal Laplacian) is used so
/// the isotropic seam r = 0 can be straddled.
double laplacian_residual(const SurfaceMap& s, Complex p, double h);

/// |d(x+iy)/d conj(w)| by central differences: zero for holomorphic x+iy.
double cauchy_riemann_residual(const SurfaceMap& s, Complex w, double h);

}  // namespace isoflect
