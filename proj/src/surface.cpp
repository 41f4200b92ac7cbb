#include "isoflect/surface.hpp"

#include <algorithm>

namespace isoflect {

std::string to_string(ChartKind kind) {
  switch (kind) {
    case ChartKind::HalfPlane: return "half-plane";
    case ChartKind::Disk: return "disk";
    case ChartKind::Plane: return "plane";
    case ChartKind::BlowUpStrip: return "strip";
  }
  return "unknown";
}

ChartKind chart_from_string(const std::string& name) {
  if (name == "half-plane") return ChartKind::HalfPlane;
  if (name == "disk") return ChartKind::Disk;
  if (name == "plane") return ChartKind::Plane;
  if (name == "strip") return ChartKind::BlowUpStrip;
  throw Error("unknown chart '" + name + "' (expected half-plane, disk, plane or strip)");
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Weierstrass: return "weierstrass";
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::HarmonicPair: return "harmonic-pair";
    case Provenance::Reflected: return "reflected";
  }
  return "unknown";
}

bool in_chart(ChartKind kind, Complex p) {
  switch (kind) {
    case ChartKind::HalfPlane: return p.imag() > 0.0;
    case ChartKind::Disk: return std::abs(p) < 1.0;
    case ChartKind::Plane: return true;
    case ChartKind::BlowUpStrip: return p.imag() > 0.0 && p.imag() < kPi;
  }
  return false;
}

SurfaceMap::SurfaceMap(ChartKind chart, Provenance provenance, Evaluator eval, Domain domain)
    : chart_(chart), provenance_(provenance), eval_(std::move(eval)), domain_(std::move(domain)) {}

bool SurfaceMap::contains(Complex p) const {
  return domain_ ? domain_(p) : in_chart(chart_, p);
}

Point3 SurfaceMap::operator()(Complex p) const {
  if (!contains(p)) throw DomainError("parameter outside the " + to_string(chart_) + " chart", p);
  return eval_(p);
}

Complex SurfaceMap::conformal_point(Complex p) const {
  return is_blow_up() ? blow_up_point(p.real(), p.imag()) : p;
}

double laplacian_residual(const SurfaceMap& s, Complex p, double h) {
  const Complex dx{h, 0.0}, dy{0.0, h};
  const Point3 c = s(p);
  const Point3 e = s(p + dx), wv = s(p - dx), n = s(p + dy), so = s(p - dy);
  Point3 lap;
  if (s.is_blow_up()) {
    const double r = p.real();
    const Point3 frr = (e - 2.0 * c + wv) * (1.0 / (h * h));
    const Point3 fr = (e - wv) * (1.0 / (2.0 * h));
    const Point3 ftt = (n - 2.0 * c + so) * (1.0 / (h * h));
    lap = r * r * frr + r * fr + ftt;
  } else {
    lap = (e + wv + n + so - 4.0 * c) * (1.0 / (h * h));
  }
  return std::max({std::abs(lap.x), std::abs(lap.y), std::abs(lap.t)});
}

double cauchy_riemann_residual(const SurfaceMap& s, Complex w, double h) {
  const Complex dx{h, 0.0}, dy{0.0, h};
  const Complex hx = (s(w + dx).planar() - s(w - dx).planar()) / (2.0 * h);
  const Complex hy = (s(w + dy).planar() - s(w - dy).planar()) / (2.0 * h);
  // d/d(conj w) = (d/dx + i d/dy) / 2
  return std::abs(0.5 * (hx + Complex{0.0, 1.0} * hy));
}

}  // namespace isoflect
