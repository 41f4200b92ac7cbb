#include "isoflect/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace isoflect {

namespace {

// Kronrod 21-point abscissae (non-negative half); odd indices are the
// 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478877, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

double wrap_positive(double a) {
  a = std::fmod(a, 2.0 * kPi);
  return a < 0.0 ? a + 2.0 * kPi : a;
}

struct Panel {
  std::size_t seg;
  double lo, hi;
  bool from_end;
  std::vector<Complex> value;
  double error;
};

struct PanelLess {
  bool operator()(const Panel& a, const Panel& b) const { return a.error < b.error; }
};

Panel evaluate_panel(const VectorIntegrand& f, std::size_t dims, const PathSegment& seg,
                     std::size_t seg_index, double lo, double hi, bool from_end, std::vector<Complex>& scratch) {
  // Panels in the far half of a line live in u = 1 - s, so bisection towards a
  // tiny endpoint keeps full relative precision at any depth.
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  std::vector<Complex> kron(dims), gauss(dims);
  auto sample = [&](double s, double wk, double wg) {
    const Complex z = from_end ? seg.b + s * (seg.a - seg.b) : seg.point(s);
    const Complex dz = from_end ? seg.b - seg.a : seg.derivative(s);
    f(z, scratch);
    for (std::size_t d = 0; d < dims; ++d) {
      const Complex v = scratch[d] * dz;
      kron[d] += wk * v;
      gauss[d] += wg * v;
    }
  };
  sample(mid, kWgk[10], 0.0);
  for (int j = 0; j < 10; ++j) {
    const double wg = (j % 2 == 1) ? kWg[static_cast<std::size_t>(j / 2)] : 0.0;
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    sample(mid - dx, kWgk[static_cast<std::size_t>(j)], wg);
    sample(mid + dx, kWgk[static_cast<std::size_t>(j)], wg);
  }
  double err = 0.0;
  for (std::size_t d = 0; d < dims; ++d) {
    kron[d] *= half;
    gauss[d] *= half;
    err = std::max(err, std::abs(kron[d] - gauss[d]));
  }
  return Panel{seg_index, lo, hi, from_end, std::move(kron), err};
}

void check_exclusion(const PathInC& path, const QuadOptions& opts) {
  const auto& segs = path.segments();
  const double rho = opts.exclusion_radius;
  for (const Complex& sigma : opts.singularities) {
    for (std::size_t k = 0; k < segs.size(); ++k) {
      const auto [d, s] = segs[k].distance_to(sigma);
      if (d == 0.0) throw DomainError("integration path hits a singularity", sigma);
      if (d >= rho * (1.0 - 1e-9)) continue;
      const bool at_start = (k == 0 && s == 0.0);
      const bool at_end = (k + 1 == segs.size() && s == 1.0);
      if (!at_start && !at_end)
        throw DomainError("integration path passes inside the exclusion radius of a singularity",
                          sigma);
    }
  }
}

}  // namespace

PathSegment PathSegment::line(Complex from, Complex to) {
  PathSegment s;
  s.kind = Kind::Line;
  s.a = from;
  s.b = to;
  return s;
}

PathSegment PathSegment::arc(Complex center, double radius, double from_angle, double to_angle) {
  PathSegment s;
  s.kind = Kind::Arc;
  s.center = center;
  s.radius = radius;
  s.angle0 = from_angle;
  s.angle1 = to_angle;
  return s;
}

Complex PathSegment::point(double s) const {
  if (kind == Kind::Line) {
    if (s == 0.0) return a;
    if (s == 1.0) return b;
    return a + s * (b - a);
  }
  return center + std::polar(radius, angle0 + s * (angle1 - angle0));
}

Complex PathSegment::derivative(double s) const {
  if (kind == Kind::Line) return b - a;
  const double th = angle0 + s * (angle1 - angle0);
  return Complex{0.0, 1.0} * std::polar(radius, th) * (angle1 - angle0);
}

PathSegment PathSegment::reversed() const {
  PathSegment r = *this;
  if (kind == Kind::Line) std::swap(r.a, r.b);
  else std::swap(r.angle0, r.angle1);
  return r;
}

std::pair<double, double> PathSegment::distance_to(Complex z) const {
  if (kind == Kind::Line) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    double s = len2 > 0.0 ? ((z - a) * std::conj(d)).real() / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return {std::abs(point(s) - z), s};
  }
  const double sweep = angle1 - angle0;
  const Complex rel = z - center;
  const double phi = std::arg(rel);
  double s = -1.0;
  if (sweep != 0.0) {
    const double delta = sweep > 0.0 ? wrap_positive(phi - angle0) : wrap_positive(angle0 - phi);
    if (delta <= std::abs(sweep)) s = delta / std::abs(sweep);
  }
  double best = std::abs(point(0.0) - z);
  double best_s = 0.0;
  if (const double e = std::abs(point(1.0) - z); e < best) {
    best = e;
    best_s = 1.0;
  }
  if (s >= 0.0) {
    const double d = std::abs(std::abs(rel) - radius);
    if (d < best) {
      best = d;
      best_s = s;
    }
  }
  return {best, best_s};
}

PathInC::PathInC(std::vector<PathSegment> segments) {
  for (const auto& s : segments) append(s);
}

void PathInC::append(const PathSegment& seg) {
  if (!segments_.empty()) {
    const Complex e = segments_.back().end();
    const double scale = std::max({1.0, std::abs(e)});
    if (std::abs(seg.start() - e) > 1e-12 * scale)
      throw Error("path segments are not continuous");
  }
  segments_.push_back(seg);
}

PathInC PathInC::reversed() const {
  std::vector<PathSegment> r;
  r.reserve(segments_.size());
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) r.push_back(it->reversed());
  return PathInC(std::move(r));
}

void integrate_vector(const VectorIntegrand& f, std::size_t dims, const PathInC& path,
                      const QuadOptions& opts, std::span<Complex> result) {
  check_exclusion(path, opts);
  std::vector<Complex> scratch(dims);
  std::priority_queue<Panel, std::vector<Panel>, PanelLess> heap;
  double total_err = 0.0;
  int panels = 0;
  const auto& segs = path.segments();
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const bool line = segs[k].kind == PathSegment::Kind::Line;
    const int initial = line ? 2 : 4;
    for (int j = 0; j < initial; ++j) {
      Panel p = line ? evaluate_panel(f, dims, segs[k], k, 0.0, 0.5, j == 1, scratch)
                     : evaluate_panel(f, dims, segs[k], k, double(j) / initial, double(j + 1) / initial, false, scratch);
      total_err += p.error;
      heap.push(std::move(p));
      ++panels;
    }
  }

  auto magnitude = [&] {
    double m = 0.0;
    auto copy = heap;
    std::vector<Complex> sum(dims);
    while (!copy.empty()) {
      for (std::size_t d = 0; d < dims; ++d) sum[d] += copy.top().value[d];
      copy.pop();
    }
    for (const auto& v : sum) m = std::max(m, std::abs(v));
    return m;
  };

  double floor_tol = opts.tol;
  bool floor_checked = false;
  while (total_err > floor_tol) {
    if (panels >= opts.max_panels) {
      if (!floor_checked) {
        // Relative floor for integrals so large that tol is below roundoff.
        floor_tol = std::max(opts.tol, 1e3 * std::numeric_limits<double>::epsilon() * magnitude());
        floor_checked = true;
        continue;
      }
      throw QuadratureError("quadrature tolerance not reached within " +
                            std::to_string(opts.max_panels) + " panels (error estimate " +
                            std::to_string(total_err) + ")");
    }
    Panel worst = heap.top();
    heap.pop();
    total_err -= worst.error;
    const double mid = 0.5 * (worst.lo + worst.hi);
    Panel left = evaluate_panel(f, dims, segs[worst.seg], worst.seg, worst.lo, mid, worst.from_end, scratch);
    Panel right = evaluate_panel(f, dims, segs[worst.seg], worst.seg, mid, worst.hi, worst.from_end, scratch);
    total_err += left.error + right.error;
    heap.push(std::move(left));
    heap.push(std::move(right));
    ++panels;
    if (total_err < 0.0) total_err = 0.0;
  }

  // Sum in path order for reproducible rounding.
  std::vector<Panel> all;
  all.reserve(heap.size());
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) {
    if (a.seg != b.seg) return a.seg < b.seg;
    if (a.from_end != b.from_end) return b.from_end;
    return a.from_end ? a.lo > b.lo : a.lo < b.lo;
  });
  for (std::size_t d = 0; d < dims; ++d) result[d] = 0.0;
  for (const auto& p : all)
    for (std::size_t d = 0; d < dims; ++d) result[d] += p.value[d];
}

Complex integrate_along(const std::function<Complex(Complex)>& f, const PathInC& path,
                        const QuadOptions& opts) {
  Complex out[1];
  integrate_vector([&](Complex z, std::span<Complex> o) { o[0] = f(z); }, 1, path, opts, out);
  return out[0];
}

Complex integrate_along(const Expr& f, const PathInC& path, const QuadOptions& opts) {
  return integrate_along([&](Complex z) { return f.eval(z); }, path, opts);
}

PathInC route(Complex w0, Complex w, std::span<const Complex> singularities, double exclusion) {
  struct Detour {
    double s_in, s_out;
    Complex sigma;
  };
  const Complex dir = w - w0;
  const double len2 = std::norm(dir);
  std::vector<Detour> detours;
  for (const Complex& sigma : singularities) {
    if (sigma == w || sigma == w0) throw DomainError("path endpoint is a singularity", sigma);
    if (len2 == 0.0) continue;
    // Solve |w0 + s dir - sigma| = exclusion for s.
    const Complex rel = w0 - sigma;
    const double b = (rel * std::conj(dir)).real() / len2;
    const double c = (std::norm(rel) - exclusion * exclusion) / len2;
    const double disc = b * b - c;
    if (disc <= 0.0) continue;
    const double root = std::sqrt(disc);
    const double s_in = -b - root, s_out = -b + root;
    if (s_out <= 0.0 || s_in >= 1.0) continue;
    // Monotone approach to an endpoint lying inside the disk needs no detour.
    if (s_out >= 1.0 && -b >= 1.0) continue;
    if (s_in <= 0.0 && -b <= 0.0) continue;
    detours.push_back({s_in, s_out, sigma});
  }
  std::sort(detours.begin(), detours.end(),
            [](const Detour& a, const Detour& b) { return a.s_in < b.s_in; });
  for (std::size_t k = 1; k < detours.size(); ++k)
    if (detours[k].s_in < detours[k - 1].s_out)
      throw DomainError("exclusion disks of singularities overlap along the path", detours[k].sigma);

  PathInC path;
  Complex cursor = w0;
  auto line_to = [&](Complex z) {
    if (z != cursor) path.append(PathSegment::line(cursor, z));
    cursor = z;
  };
  for (const auto& d : detours) {
    const Complex p_in = d.s_in <= 0.0 ? w0 : w0 + d.s_in * dir;
    const Complex p_out = d.s_out >= 1.0 ? w : w0 + d.s_out * dir;
    const double a_in = std::arg(p_in - d.sigma);
    const double sweep = std::arg((p_out - d.sigma) / (p_in - d.sigma));
    line_to(p_in);
    const Complex q_in = d.sigma + std::polar(exclusion, a_in);
    line_to(q_in);  // radial exit when w0 sits inside the disk
    const auto arc = PathSegment::arc(d.sigma, exclusion, a_in, a_in + sweep);
    if (sweep != 0.0) {
      path.append(arc);
      cursor = arc.end();
    }
    if (d.s_out < 1.0) cursor = p_out;  // arc already ends on p_out
    else line_to(p_out);
  }
  line_to(w);
  if (path.empty()) path = PathInC::line(w0, w);
  return path;
}

Complex integrate_from_basepoint(const Expr& f, Complex w0, Complex w,
                                 std::span<const Complex> singularities, double tol) {
  QuadOptions opts;
  opts.tol = tol;
  opts.singularities.assign(singularities.begin(), singularities.end());
  if (w == w0) return 0.0;
  return integrate_along(f, route(w0, w, singularities, opts.exclusion_radius), opts);
}

std::size_t PrimitiveCache::KeyHash::operator()(const Key& k) const {
  std::size_t h = k.hash;
  h ^= std::hash<double>{}(k.re) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= std::hash<double>{}(k.im) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace isoflect
