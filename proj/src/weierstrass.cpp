#include "isoflect/weierstrass.hpp"

#include <algorithm>
#include <cmath>

namespace isoflect {

namespace {

constexpr Complex kI{0.0, 1.0};

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool in_closed_chart(ChartKind chart, Complex w) {
  switch (chart) {
    case ChartKind::HalfPlane: return w.imag() >= 0.0;
    case ChartKind::Disk: return std::abs(w) <= 1.0;
    case ChartKind::BlowUpStrip: return w.imag() >= 0.0 && w.imag() <= kPi;
    case ChartKind::Plane: return true;
  }
  return false;
}

std::array<Complex, 3> integrate_primitive(const WeierstrassData& data, const PathInC& path,
                                           double tol) {
  QuadOptions opts;
  opts.tol = tol;
  opts.singularities = data.singularities;
  std::array<Complex, 3> out{};
  integrate_vector(
      [&](Complex z, std::span<Complex> o) {
        const auto v = family_integrand(data, z);
        o[0] = v[0];
        o[1] = v[1];
        o[2] = v[2];
      },
      3, path, opts, out);
  return out;
}

Point3 assemble(const WeierstrassData& data, const std::array<Complex, 3>& integral) {
  const double s = static_cast<double>(data.planar_sign);
  return data.origin + Point3{s * integral[0].real(), s * integral[1].real(), integral[2].real()};
}

}  // namespace

void WeierstrassData::validate() const {
  if (!F.is_analytic()) throw ValidationError("F contains non-analytic nodes: " + print(F));
  if (!G.is_analytic()) throw ValidationError("G contains non-analytic nodes: " + print(G));
  if (!in_closed_chart(chart, basepoint))
    throw ValidationError("base point lies outside the closed " + to_string(chart) + " chart");
  for (const Complex& sigma : singularities)
    if (std::abs(sigma - basepoint) < 1e-12) throw ValidationError("base point coincides with a declared pole of G");
  if (planar_sign != 1 && planar_sign != -1) throw ValidationError("planar_sign must be +1 or -1");
  if (!(tol > 0.0)) throw ValidationError("quadrature tolerance must be positive");
  auto fg_max = [&](Complex sigma, double eps) {
    double m = 0.0;
    for (int k = 0; k < 8; ++k) {
      const Complex w = sigma + std::polar(eps, 2.0 * kPi * (k + 0.5) / 8.0);
      m = std::max(m, std::abs(F.eval(w) * G.eval(w)));
    }
    return m;
  };
  for (const Complex& sigma : singularities) {
    if (!in_chart(chart, sigma)) continue;
    try {
      const double far = fg_max(sigma, 1e-3);
      const double near = fg_max(sigma, 1e-6);
      if (near > 10.0 * far + 1.0)
        throw ValidationError("F*G is not holomorphic at a declared pole of G inside the chart");
    } catch (const DomainError& e) {
      throw ValidationError(std::string("F*G cannot be evaluated near a declared pole: ") + e.what());
    }
  }
}

std::size_t WeierstrassData::hash() const {
  std::size_t h = mix(F.hash(), G.hash());
  h = mix(h, std::hash<double>{}(c));
  h = mix(h, std::hash<double>{}(basepoint.real()));
  h = mix(h, std::hash<double>{}(basepoint.imag()));
  for (const auto& s : singularities) {
    h = mix(h, std::hash<double>{}(s.real()));
    h = mix(h, std::hash<double>{}(s.imag()));
  }
  return h;
}

Complex default_basepoint(ChartKind chart) {
  return chart == ChartKind::Disk ? Complex{0.0} : Complex{1.0};
}

std::array<Complex, 3> family_integrand(const WeierstrassData& data, Complex w) {
  const Complex f = data.F.eval(w);
  const Complex g = data.G.eval(w);
  const Complex cg2 = data.c * g * g;
  return {(1.0 - cg2) * f, -kI * (1.0 + cg2) * f, 2.0 * g * f};
}

Point3 evaluate_family(const WeierstrassData& data, Complex w) {
  if (!in_closed_chart(data.chart, w))
    throw DomainError("point outside the " + to_string(data.chart) + " chart", w);
  if (w == data.basepoint) return data.origin;
  const PathInC path = route(data.basepoint, w, data.singularities, QuadOptions{}.exclusion_radius);
  return assemble(data, integrate_primitive(data, path, data.tol));
}

Point3 family_offset(const WeierstrassData& data, Complex from, Complex to) {
  if (from == to) return {};
  WeierstrassData local = data;
  local.origin = {};
  return assemble(local, integrate_primitive(data, PathInC::line(from, to), 1e-15));
}

WeierstrassData conjugate(const WeierstrassData& data) {
  WeierstrassData out = data;
  out.F = Expr::mul(Expr::constant(kI), data.F);
  out.planar_sign = -data.planar_sign;
  const Complex h0 = -kI * data.origin.planar();
  out.origin = Point3::from(h0, 0.0);
  return out;
}

double metric_factor(const WeierstrassData& data, Complex w) { return std::norm(data.F.eval(w)); }

std::vector<Complex> singular_points(const WeierstrassData& data, const Rect& region, int resolution) {
  resolution = std::max(resolution, 2);
  const int n = resolution + 1;
  const double dx = (region.re_max - region.re_min) / resolution;
  const double dy = (region.im_max - region.im_min) / resolution;
  std::vector<double> mag(static_cast<std::size_t>(n * n), HUGE_VAL);
  auto node = [&](int i, int j) { return Complex{region.re_min + i * dx, region.im_min + j * dy}; };
  auto at = [&](int i, int j) -> double& { return mag[static_cast<std::size_t>(j * n + i)]; };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      try {
        at(i, j) = std::abs(data.F.eval(node(i, j)));
      } catch (const DomainError&) {
      }
    }
  const Expr dF = differentiate(data.F);
  std::vector<Complex> roots;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double v = at(i, j);
      if (!std::isfinite(v)) continue;
      bool is_min = true;
      for (int dj = -1; dj <= 1 && is_min; ++dj)
        for (int di = -1; di <= 1; ++di) {
          const int ii = i + di, jj = j + dj;
          if ((di || dj) && ii >= 0 && jj >= 0 && ii < n && jj < n && at(ii, jj) < v) {
            is_min = false;
            break;
          }
        }
      if (!is_min) continue;
      Complex z = node(i, j);
      try {
        for (int it = 0; it < 100; ++it) {
          const Complex fz = data.F.eval(z);
          if (std::abs(fz) <= 1e-14) break;
          const Complex d = dF.eval(z);
          if (d == Complex{}) break;
          z -= fz / d;
        }
        if (std::abs(data.F.eval(z)) > 1e-10) continue;
      } catch (const DomainError&) {
        continue;
      }
      const double slack = 1e-9 * (1.0 + std::abs(z));
      if (z.real() < region.re_min - slack || z.real() > region.re_max + slack ||
          z.imag() < region.im_min - slack || z.imag() > region.im_max + slack)
        continue;
      const bool dup = std::any_of(roots.begin(), roots.end(),
                                   [&](Complex r) { return std::abs(r - z) < 1e-8; });
      if (!dup) roots.push_back(z);
    }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

SurfaceMap make_surface(const WeierstrassData& data) {
  data.validate();
  auto cache = std::make_shared<PrimitiveCache>();
  const std::size_t key = data.hash();
  auto eval = [data, cache, key](Complex w) -> Point3 {
    if (w == data.basepoint) return data.origin;
    const auto integral = cache->get_or_compute(key, w, [&] {
      const PathInC path = route(data.basepoint, w, data.singularities, QuadOptions{}.exclusion_radius);
      return integrate_primitive(data, path, data.tol);
    });
    return assemble(data, integral);
  };
  const ChartKind chart = data.chart;
  return SurfaceMap(chart, Provenance::Weierstrass, eval,
                    [chart](Complex w) { return in_closed_chart(chart, w); });
}

SurfaceMap from_harmonic_pair(std::function<Complex(Complex)> h, std::function<double(Complex)> t,
                              ChartKind chart) {
  return SurfaceMap(chart, Provenance::HarmonicPair,
                    [h = std::move(h), t = std::move(t)](Complex w) { return Point3::from(h(w), t(w)); });
}

double graph_pde_residual(const WeierstrassData& data, Complex w, double h) {
  const double s = static_cast<double>(data.planar_sign);
  auto jacobian_solve = [&](Complex at, Complex rhs) {
    const auto phi = family_integrand(data, at);
    const double a = s * phi[0].real(), b = -s * phi[0].imag();
    const double c = s * phi[1].real(), d = -s * phi[1].imag();
    const double det = a * d - b * c;
    if (det == 0.0) throw DomainError("planar part is not a local diffeomorphism", at);
    return Complex{(d * rhs.real() - b * rhs.imag()) / det, (-c * rhs.real() + a * rhs.imag()) / det};
  };
  // u at planar offset q from X(w).
  auto height = [&](Complex q) {
    Complex z = w + jacobian_solve(w, q);
    for (int it = 0; it < 30; ++it) {
      const Complex r = family_offset(data, w, z).planar() - q;
      if (std::abs(r) <= 1e-16 * (1.0 + std::abs(q))) break;
      z -= jacobian_solve(z, r);
    }
    return family_offset(data, w, z).t;
  };
  double u[3][3];
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) u[i + 1][j + 1] = (i == 0 && j == 0) ? 0.0 : height(Complex{i * h, j * h});
  const double ux = (u[2][1] - u[0][1]) / (2.0 * h);
  const double uy = (u[1][2] - u[1][0]) / (2.0 * h);
  const double uxx = (u[2][1] - 2.0 * u[1][1] + u[0][1]) / (h * h);
  const double uyy = (u[1][2] - 2.0 * u[1][1] + u[1][0]) / (h * h);
  const double uxy = (u[2][2] - u[2][0] - u[0][2] + u[0][0]) / (4.0 * h * h);
  const double c = data.c;
  return std::abs((1.0 + c * uy * uy) * uxx - 2.0 * c * ux * uy * uxy + (1.0 + c * ux * ux) * uyy);
}

WeierstrassData helicoid_data() {
  WeierstrassData d;
  d.F = Expr::constant(1.0);
  d.G = parse("1/(2*pi*i*w)");
  d.basepoint = 1.0;
  d.chart = ChartKind::HalfPlane;
  d.singularities = {0.0};
  d.origin = {1.0, 0.0, 0.0};
  return d;
}

SurfaceMap helicoid_closed_form() {
  return SurfaceMap(ChartKind::HalfPlane, Provenance::ClosedForm,
                    [](Complex w) { return Point3{w.real(), w.imag(), std::arg(w) / kPi}; });
}

SurfaceMap isotropic_catenoid_closed_form() {
  return SurfaceMap(ChartKind::HalfPlane, Provenance::ClosedForm, [](Complex w) {
    const Complex h = -kI * w;
    return Point3{h.real(), h.imag(), std::log(std::abs(w)) / kPi};
  });
}

}  // namespace isoflect
