#include "isoflect/reflect.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "isoflect/parallel.hpp"

namespace isoflect {

namespace {

constexpr int kArcSamples = 256;
constexpr int kNewtonSteps = 20;
constexpr double kBoundaryOffset = 1e-9;
constexpr double kSeamOffset = 1e-13;

double wrap_angle(double a, double lo) {
  double d = std::fmod(a - lo, 2.0 * kPi);
  if (d < 0.0) d += 2.0 * kPi;
  return lo + d;
}

// Point of the open chart at distance `offset` from boundary coordinate s.
Complex inner_point(ChartKind chart, double s, double offset) {
  if (chart == ChartKind::Disk) return std::polar(1.0 - offset, s);
  return {s, offset};
}

Complex mirror(ChartKind chart, Complex w) {
  return chart == ChartKind::Disk ? 1.0 / std::conj(w) : std::conj(w);
}

Complex extrapolated_seam_point(const SurfaceMap& surface, const BlowUpChart& jump) {
  const double rho = 1e-5;
  const Complex z1 = surface(jump.pi(rho, kPi / 2)).planar();
  const Complex z2 = surface(jump.pi(rho / 2, kPi / 2)).planar();
  return 2.0 * z2 - z1;
}

void check_jump_chart(const SurfaceMap& surface, const BlowUpChart& jump) {
  if (surface.chart() != ChartKind::HalfPlane && surface.chart() != ChartKind::Disk)
    throw ValidationError("isotropic extension needs a half-plane or disk surface");
  if (surface.chart() != jump.chart)
    throw ValidationError("jump chart (" + to_string(jump.chart) + ") differs from surface chart (" +
                          to_string(surface.chart()) + ")");
}

// Boundary samples next to the jump on both sides: (planar point, height, side value).
struct SideSample {
  Complex z;
  double t;
  double expected;
};

std::vector<SideSample> side_samples(const SurfaceMap& surface, const BlowUpChart& jump,
                                     const ReflectOptions& opts) {
  std::vector<SideSample> out;
  const int n = std::max(1, opts.validation_samples);
  for (int k = 1; k <= n; ++k) {
    const double rho = opts.validation_radius * k / n;
    for (const auto& [theta, value] : {std::pair{kPi - kBoundaryOffset, jump.a}, std::pair{kBoundaryOffset, jump.b}}) {
      const Point3 p = surface(jump.pi(rho, theta));
      out.push_back({p.planar(), p.t, value});
    }
  }
  return out;
}

void check_side_heights(const std::vector<SideSample>& samples, const ReflectOptions& opts) {
  for (const auto& s : samples)
    if (std::abs(s.t - s.expected) > opts.height_tol)
      throw ValidationError("boundary height near the jump is " + std::to_string(s.t) + ", expected " +
                            std::to_string(s.expected));
}

}  // namespace

ArcChart ArcChart::line(Complex point, Complex direction) {
  if (!(std::abs(direction) > 0.0)) throw ValidationError("line direction must be non-zero");
  ArcChart a;
  a.kind_ = Kind::Line;
  a.point_ = point;
  a.direction_ = direction / std::abs(direction);
  return a;
}

ArcChart ArcChart::circle(Complex center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("circle radius must be positive");
  ArcChart a;
  a.kind_ = Kind::Circle;
  a.point_ = center;
  a.radius_ = radius;
  return a;
}

ArcChart ArcChart::analytic(Expr gamma, double s0, double s1) {
  if (!(s1 > s0)) throw ValidationError("analytic arc interval is empty");
  if (!gamma.is_analytic()) throw ValidationError("arc parametrisation is not analytic");
  ArcChart a;
  a.kind_ = Kind::Analytic;
  a.expr_ = std::move(gamma);
  a.derivative_ = differentiate(a.expr_);
  a.s0_ = s0;
  a.s1_ = s1;
  std::vector<Complex> derivs;
  for (int k = 0; k < kArcSamples; ++k) {
    const double s = s0 + (s1 - s0) * k / (kArcSamples - 1);
    const Complex d = a.derivative_.eval(s);
    if (!(std::abs(d) > 1e-12)) throw ValidationError("arc is not regular: gamma' vanishes at s = " + std::to_string(s));
    a.samples_s_.push_back(s);
    a.samples_.push_back(a.expr_.eval(s));
    derivs.push_back(d);
  }
  // A zero of gamma' between samples shows up as a chord through the origin.
  double scale = 0.0;
  for (const Complex& d : derivs) scale = std::max(scale, std::abs(d));
  for (std::size_t k = 1; k < derivs.size(); ++k) {
    const Complex p = derivs[k - 1], q = derivs[k] - derivs[k - 1];
    const double tau = std::norm(q) > 0.0 ? std::clamp(-std::real(std::conj(q) * p) / std::norm(q), 0.0, 1.0) : 0.0;
    if (std::abs(p + tau * q) <= 1e-8 * scale)
      throw ValidationError("arc is not regular: gamma' vanishes near s = " + std::to_string(a.samples_s_[k]));
  }
  return a;
}

Complex ArcChart::gamma(Complex s) const {
  switch (kind_) {
    case Kind::Line: return point_ + s * direction_;
    case Kind::Circle: return point_ + radius_ * std::exp(Complex{0.0, 1.0} * s);
    case Kind::Analytic: return expr_.eval(s);
  }
  return {};
}

Complex ArcChart::gamma_prime(Complex s) const {
  switch (kind_) {
    case Kind::Line: return direction_;
    case Kind::Circle: return Complex{0.0, 1.0} * radius_ * std::exp(Complex{0.0, 1.0} * s);
    case Kind::Analytic: return derivative_.eval(s);
  }
  return {};
}

Complex ArcChart::inverse(Complex z) const {
  switch (kind_) {
    case Kind::Line: return std::conj(direction_) * (z - point_);
    case Kind::Circle:
      if (z == point_) throw DomainError("circle centre has no preimage", z);
      return Complex{0.0, -1.0} * std::log((z - point_) / radius_);
    case Kind::Analytic: break;
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < samples_.size(); ++k)
    if (std::abs(samples_[k] - z) < std::abs(samples_[best] - z)) best = k;
  Complex s = samples_s_[best];
  const double scale = 1.0 + std::abs(z);
  for (int step = 0; step < kNewtonSteps; ++step) {
    const Complex d = derivative_.eval(s);
    if (!(std::abs(d) > 0.0)) break;
    const Complex delta = (expr_.eval(s) - z) / d;
    s -= delta;
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) break;
    if (std::abs(delta) <= 1e-15 * (1.0 + std::abs(s)) ||
        (std::abs(expr_.eval(s) - z) <= 1e-15 * scale && std::abs(delta) <= 1e-8))
      return s;
  }
  throw DomainError("point outside the reflection neighbourhood of the arc", z);
}

Complex ArcChart::reflect(Complex z) const {
  switch (kind_) {
    case Kind::Line: return point_ + direction_ * direction_ * std::conj(z - point_);
    case Kind::Circle:
      if (z == point_) throw DomainError("circle inversion is undefined at the centre", z);
      return point_ + radius_ * radius_ / std::conj(z - point_);
    case Kind::Analytic: return gamma(std::conj(inverse(z)));
  }
  return z;
}

std::optional<MotionI3> ArcChart::as_motion() const {
  if (kind_ != Kind::Line) return std::nullopt;
  return MotionI3::line_reflection(point_, direction_);
}

Complex reflect_arc(const ArcChart& arc, Complex z) { return arc.reflect(z); }

SurfaceMap reflect_horizontal(const SurfaceMap& surface, const ArcChart& arc, double height,
                              const BoundaryPiece& piece, const ReflectOptions& opts) {
  const ChartKind chart = surface.chart();
  if (chart != ChartKind::HalfPlane && chart != ChartKind::Disk)
    throw ValidationError("horizontal reflection needs a half-plane or disk surface");
  if (!(piece.to > piece.from) || !std::isfinite(piece.from) || !std::isfinite(piece.to))
    throw ValidationError("boundary piece must be a finite non-empty interval");
  if (chart == ChartKind::Disk && piece.to - piece.from > 2.0 * kPi)
    throw ValidationError("boundary piece covers more than the circle");

  const int n = std::max(1, opts.validation_samples);
  for (int k = 0; k < n; ++k) {
    const double s = piece.from + (piece.to - piece.from) * (k + 0.5) / n;
    const Point3 p = surface(inner_point(chart, s, kBoundaryOffset));
    if (std::abs(p.t - height) > opts.height_tol)
      throw ValidationError("boundary height " + std::to_string(p.t) + " differs from plane height " +
                            std::to_string(height));
    double off;
    try {
      off = std::abs(arc.reflect(p.planar()) - p.planar());
    } catch (const DomainError&) {
      throw ValidationError("projected boundary leaves the arc's reflection neighbourhood");
    }
    if (off > opts.arc_tol) throw ValidationError("projected boundary does not lie on the reflection arc");
  }

  const auto on_piece = [chart, piece](Complex w) {
    if (chart == ChartKind::Disk)
      return std::abs(w) == 1.0 && wrap_angle(std::arg(w), piece.from) < piece.to;
    return w.imag() == 0.0 && w.real() > piece.from && w.real() < piece.to;
  };
  const auto domain = [surface, chart, on_piece](Complex w) {
    if (surface.contains(w) || on_piece(w)) return true;
    if (w == Complex{}) return false;
    return surface.contains(mirror(chart, w));
  };
  const auto eval = [surface, arc, height, chart, on_piece](Complex w) {
    if (surface.contains(w)) return surface(w);
    if (on_piece(w)) {
      const double s = chart == ChartKind::Disk ? std::arg(w) : w.real();
      const Point3 p = surface(inner_point(chart, s, kSeamOffset));
      return p;
    }
    const Point3 p = surface(mirror(chart, w));
    return Point3::from(arc.reflect(p.planar()), 2.0 * height - p.t);
  };
  return SurfaceMap(ChartKind::Plane, Provenance::Reflected, eval, domain);
}

SurfaceMap extend_isotropic(const SurfaceMap& surface, const BlowUpChart& jump, const ArcChart& arc,
                            const ReflectOptions& opts) {
  check_jump_chart(surface, jump);
  const auto samples = side_samples(surface, jump, opts);
  check_side_heights(samples, opts);
  for (const auto& s : samples) {
    double off;
    try {
      off = std::abs(arc.reflect(s.z) - s.z);
    } catch (const DomainError&) {
      throw ValidationError("projected boundary near the jump leaves the arc's reflection neighbourhood");
    }
    if (off > opts.arc_tol) throw ValidationError("projected boundary near the jump does not lie on the arc");
  }
  Complex z0 = extrapolated_seam_point(surface, jump);
  z0 = 0.5 * (z0 + arc.reflect(z0));

  const auto eval = [surface, jump, arc, z0](Complex p) {
    const double r = p.real(), theta = p.imag();
    if (r > 0.0) return surface(jump.pi(r, theta));
    if (r == 0.0) return Point3::from(z0, jump.seam_height(theta));
    const Point3 q = surface(jump.pi(-r, kPi - theta));
    return Point3::from(arc.reflect(q.planar()), jump.a + jump.b - q.t);
  };
  return SurfaceMap(ChartKind::BlowUpStrip, Provenance::Reflected, eval);
}

ClusterSet cluster_set(const SurfaceMap& surface, const BlowUpChart& jump) {
  check_jump_chart(surface, jump);
  ClusterSet cs;
  cs.z0 = extrapolated_seam_point(surface, jump);
  cs.tmin = std::min(jump.a, jump.b);
  cs.tmax = std::max(jump.a, jump.b);
  const int n = 16;
  for (int k = 0; k < n; ++k) {
    const double theta = kPi * (k + 0.5) / n;
    const Point3 p = surface(jump.pi(1e-7, theta));
    cs.sample_residual = std::max(cs.sample_residual, distance(p, Point3::from(cs.z0, jump.seam_height(theta))));
  }
  return cs;
}

ParallelLineExtension reflect_parallel_lines(const SurfaceMap& surface, const BlowUpChart& jump,
                                             Complex line_direction, const ReflectOptions& opts) {
  check_jump_chart(surface, jump);
  if (!(std::abs(line_direction) > 0.0)) throw ValidationError("line direction must be non-zero");
  const Complex u = line_direction / std::abs(line_direction);
  const auto samples = side_samples(surface, jump, opts);
  check_side_heights(samples, opts);
  const Complex z0 = extrapolated_seam_point(surface, jump);
  for (const auto& s : samples)
    if (std::abs((std::conj(u) * (s.z - z0)).imag()) > opts.straightness_tol)
      throw ValidationError("boundary near the jump is not a straight segment in the given direction");

  const ArcChart line = ArcChart::line(z0, u);
  ReflectOptions relaxed = opts;
  relaxed.arc_tol = std::max(opts.arc_tol, 2.0 * opts.straightness_tol);
  return {extend_isotropic(surface, jump, line, relaxed), MotionI3::line_rotation(z0, u, 0.5 * (jump.a + jump.b)),
          z0};
}

namespace {

// Fingerprint-based set of motions. Buckets use a coarse rounding so that
// roundoff on either side of a fine rounding boundary still finds its match.
class MotionSet {
 public:
  bool insert(const MotionI3& m) {
    const auto probes = probe_values(m);
    std::vector<std::int64_t> key;
    for (double v : probes) key.push_back(std::llround(v * 1e6));
    auto& bucket = buckets_[key];
    for (const auto& other : bucket) {
      double diff = 0.0;
      for (std::size_t i = 0; i < probes.size(); ++i) diff = std::max(diff, std::abs(probes[i] - other[i]));
      if (diff <= 1e-9) return false;
    }
    bucket.push_back(probes);
    return true;
  }

 private:
  static std::array<double, 12> probe_values(const MotionI3& m) {
    static const Point3 probes[4] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    std::array<double, 12> out{};
    for (int p = 0; p < 4; ++p) {
      const Point3 r = m.apply(probes[p]);
      for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(3 * p + i)] = r[i];
    }
    return out;
  }

  std::map<std::vector<std::int64_t>, std::vector<std::array<double, 12>>> buckets_;
};

}  // namespace

std::vector<MotionI3> orbit(const std::vector<MotionI3>& generators, int depth) {
  if (depth < 0) throw Error("orbit depth must be >= 0");
  std::vector<MotionI3> gens;
  MotionSet gen_seen;
  for (const auto& g : generators)
    for (const auto& h : {g, g.inverse()})
      if (gen_seen.insert(h)) gens.push_back(h);

  std::vector<MotionI3> out{MotionI3::identity()};
  MotionSet seen;
  seen.insert(out.front());
  std::vector<MotionI3> frontier = out;
  for (int level = 0; level < depth && !frontier.empty(); ++level) {
    std::vector<MotionI3> next;
    for (const auto& m : frontier)
      for (const auto& g : gens) {
        MotionI3 c = m.after(g);
        if (seen.insert(c)) next.push_back(c);
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

std::vector<Point3> period_basis(const std::vector<MotionI3>& motions) {
  const auto linear_key = [](MotionI3 m) {
    m.beta = {};
    m.delta = 0.0;
    return m.fingerprint();
  };
  std::map<std::vector<std::int64_t>, MotionI3> class_rep;
  std::vector<Point3> candidates;
  for (const auto& m : motions) {
    auto [it, inserted] = class_rep.emplace(linear_key(m), m);
    if (inserted) continue;
    const MotionI3 d = m.after(it->second.inverse());
    if (d.is_translation()) candidates.push_back(d.translation_part());
  }
  for (const auto& m : motions)
    if (m.is_translation()) candidates.push_back(m.translation_part());

  for (auto& v : candidates) {
    // canonical sign: first non-negligible coordinate positive
    for (int i = 0; i < 3; ++i) {
      if (std::abs(v[i]) <= 1e-9) continue;
      if (v[i] < 0.0) v = -1.0 * v;
      break;
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Point3& p, const Point3& q) {
    const double np = std::round(p.norm() * 1e9), nq = std::round(q.norm() * 1e9);
    if (np != nq) return np < nq;
    for (int i = 0; i < 3; ++i)
      if (std::abs(p[i] - q[i]) > 1e-9) return p[i] > q[i];
    return false;
  });

  std::vector<Point3> basis, ortho;
  for (const auto& v : candidates) {
    if (basis.size() == 3) break;
    if (v.norm() <= 1e-9) continue;
    Point3 r = v;
    for (const auto& e : ortho) {
      const double dot = r.x * e.x + r.y * e.y + r.t * e.t;
      r = r - dot * e;
    }
    if (r.norm() <= 1e-6 * v.norm()) continue;
    basis.push_back(v);
    ortho.push_back((1.0 / r.norm()) * r);
  }
  return basis;
}

Tiling orbit_tiling(const Mesh& seed, const std::vector<MotionI3>& generators, int depth) {
  Tiling t;
  t.motions = orbit(generators, depth);
  t.meshes.resize(t.motions.size());
  parallel_for(t.motions.size(), [&](std::size_t k) { t.meshes[k] = seed.transformed(t.motions[k]); });
  t.periods = period_basis(t.motions);
  return t;
}

}  // namespace isoflect
