#include "isoflect/scpoly.hpp"

#include <cmath>
#include <limits>

#include "isoflect/quad.hpp"

namespace isoflect {

namespace {

constexpr double kAnchorDistance = 0.25;

void check_n(int n) {
  if (n < 2) throw Error("polygon parameter n must be >= 2");
}

Complex radial_integral(int n, Complex w, double tol) {
  if (w == Complex{}) return {};
  const auto f = [n](Complex z) { return std::pow(1.0 - std::pow(z, 2 * n), -1.0 / n); };
  QuadOptions opts;
  opts.tol = tol;
  return integrate_along(f, PathInC::line(0.0, w), opts);
}

// (1 - (1 - v)^{2n}) / v, expanded so that it stays accurate near v = 0.
Complex reduced_factor(int n, Complex v) {
  Complex sum{}, binom = 1.0, vpow = 1.0;
  for (int k = 1; k <= 2 * n; ++k) {
    binom *= static_cast<double>(2 * n - k + 1) / k;
    sum += (k % 2 == 1 ? 1.0 : -1.0) * binom * vpow;
    vpow *= v;
  }
  return sum;
}

}  // namespace

Complex sc_map(int n, Complex w, double tol) {
  check_n(n);
  if (!(std::abs(w) <= 1.0 + 1e-15)) throw DomainError("Schwarz-Christoffel map evaluated outside the closed disk", w);
  if (w == Complex{}) return {};
  const int k = static_cast<int>(std::lround(std::arg(w) * n / kPi));
  const Complex omega = std::polar(1.0, k * kPi / n);
  if (std::abs(w - omega) >= kAnchorDistance) return radial_integral(n, w, tol);

  const Complex anchor = omega * (1.0 - kAnchorDistance);
  const double p = static_cast<double>(n) / (n - 1);
  const Complex u0 = std::pow(Complex{kAnchorDistance, 0.0}, 1.0 / p);
  Complex vw = 1.0 - w / omega;
  if (std::abs(vw) <= 4.0 * std::numeric_limits<double>::epsilon()) vw = 0.0;
  const Complex u1 = vw == Complex{} ? Complex{} : std::pow(vw, 1.0 / p);
  const auto g = [n, p](Complex u) {
    const Complex v = u == Complex{} ? Complex{} : std::pow(u, p);
    return std::pow(reduced_factor(n, v), -1.0 / n);
  };
  QuadOptions opts;
  opts.tol = tol;
  const Complex tail = integrate_along(g, PathInC::line(u0, u1), opts);
  return radial_integral(n, anchor, tol) - omega * p * tail;
}

double polygon_height(int n, Complex w) {
  check_n(n);
  if (!(std::abs(w) < 1.0)) throw DomainError("polygon height evaluated outside the open disk", w);
  double t = -0.5;
  for (int k = 1; k <= n; ++k) {
    const Complex a = std::polar(1.0, (2 * k - 1) * kPi / n - kPi / (2.0 * n));
    const Complex b = std::polar(1.0, 2 * k * kPi / n - kPi / (2.0 * n));
    double angle = std::arg((b - w) / (a - w));
    if (angle <= 0.0) angle += 2.0 * kPi;
    t += angle / kPi;
  }
  return t;
}

double polygon_height(int n, const BlowUpChart& jump, double r, double theta) {
  check_n(n);
  if (jump.chart != ChartKind::Disk) throw Error("polygon height blow-up needs a disk chart");
  // p - Pi(z) = e^{i sigma} 2 (z cos(d/2) - sin(d/2)) / (i + z) with d = arg p - jump and
  // sigma = (arg p + jump) / 2, free of cancellation next to the jump point.
  const Complex z = blow_up_point(r, theta);
  auto factor = [&](double phi) {
    const double half = 0.5 * (phi - jump.jump);
    return z * std::cos(half) - std::sin(half);
  };
  double t = -0.5;
  for (int k = 1; k <= n; ++k) {
    const double a = (2 * k - 1) * kPi / n - kPi / (2.0 * n);
    const double b = 2 * k * kPi / n - kPi / (2.0 * n);
    double angle = std::arg(std::polar(1.0, 0.5 * (b - a)) * factor(b) / factor(a));
    if (angle <= 0.0) angle += 2.0 * kPi;
    t += angle / kPi;
  }
  return t;
}

PolygonChart::PolygonChart(int n, double tol) : n_(n), tol_(tol) {
  if (n < 2 || n > 8) throw ValidationError("polygon parameter n must lie in [2, 8]");
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  for (int k = 1; k <= 2 * n; ++k) {
    vertex_pre_.push_back(std::polar(1.0, k * kPi / n));
    midpoint_pre_.push_back(std::polar(1.0, k * kPi / n - kPi / (2.0 * n)));
  }
  for (const auto& w : vertex_pre_) vertices_.push_back(map(w));
  for (const auto& w : midpoint_pre_) midpoints_.push_back(map(w));
}

Complex PolygonChart::edge_direction(int k) const {
  const int m = 2 * n_;
  const Complex from = vertices_[static_cast<std::size_t>((k - 2 + m) % m)];
  const Complex to = vertices_[static_cast<std::size_t>((k - 1) % m)];
  return (to - from) / std::abs(to - from);
}

BlowUpChart PolygonChart::jump(int k) const {
  BlowUpChart b;
  b.chart = ChartKind::Disk;
  b.jump = k * kPi / n_ - kPi / (2.0 * n_);
  b.a = arc_height(k == 1 ? 2 * n_ : k - 1);
  b.b = arc_height(k);
  return b;
}

SurfaceMap schwarz_patch(std::shared_ptr<const PolygonChart> chart) {
  return SurfaceMap(ChartKind::Disk, Provenance::HarmonicPair, [chart](Complex w) {
    return Point3::from(chart->map(w), polygon_height(chart->n(), w));
  });
}

SurfaceMap schwarz_patch(int n, double tol) {
  return schwarz_patch(std::make_shared<const PolygonChart>(n, tol));
}

std::vector<MotionI3> schwarz_d_generators(const PolygonChart& chart) {
  std::vector<MotionI3> gens;
  const int m = 2 * chart.n();
  for (int k = 1; k <= m; ++k) {
    const BlowUpChart j = chart.jump(k);
    gens.push_back(MotionI3::line_rotation(chart.midpoints()[static_cast<std::size_t>(k - 1)], chart.edge_direction(k),
                                           0.5 * (j.a + j.b)));
  }
  for (int k = 1; k <= m; ++k)
    gens.push_back(MotionI3::line_rotation(chart.midpoints()[static_cast<std::size_t>(k - 1)], chart.edge_direction(k),
                                           PolygonChart::arc_height(k)));
  return gens;
}

double schwarz_seam_residual(std::shared_ptr<const PolygonChart> chart, int samples) {
  const SurfaceMap patch = schwarz_patch(chart);
  const std::vector<MotionI3> gens = schwarz_d_generators(*chart);
  const int n = chart->n(), m = 2 * n;
  double worst = 0.0;
  for (int k = 1; k <= m; ++k) {
    const MotionI3& iso = gens[static_cast<std::size_t>(k - 1)];
    const MotionI3& hor = gens[static_cast<std::size_t>(m + k - 1)];
    const BlowUpChart jump = chart->jump(k);
    for (int j = 0; j < samples; ++j) {
      const double frac = (j + 0.5) / samples;
      const double theta = kPi * frac;
      auto at = [&](double th) {
        return Point3::from(patch(jump.pi(1e-10, th)).planar(), polygon_height(n, jump, 1e-10, th));
      };
      const Point3 near = at(theta);
      const Point3 mirrored = iso(at(kPi - theta));
      worst = std::max(worst, distance(near, mirrored));
      const double phi = (k - 0.5) * kPi / n + frac * 0.5 * kPi / n;
      const Point3 edge = patch(std::polar(1.0 - 1e-13, phi));
      worst = std::max(worst, distance(edge, hor(edge)));
    }
  }
  return worst;
}

Tiling schwarz_d_tiling(int depth, int resolution, int n) {
  if (depth < 1) throw Error("tiling depth must be >= 1");
  const auto chart = std::make_shared<const PolygonChart>(n);
  const SurfaceMap patch = schwarz_patch(chart);
  const Mesh seed = build_mesh(patch, sample_grid(ChartKind::Disk, resolution, {}));
  return orbit_tiling(seed, schwarz_d_generators(*chart), depth);
}

}  // namespace isoflect
