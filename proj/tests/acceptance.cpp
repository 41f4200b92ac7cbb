#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "isoflect/mesh.hpp"
#include "isoflect/reflect.hpp"
#include "isoflect/scpoly.hpp"
#include "isoflect/weierstrass.hpp"
#include "oracles.hpp"

using namespace isoflect;
namespace fs = std::filesystem;

namespace {
const Complex I{0.0, 1.0};

struct Criterion {
  int id = 0;
  bool passed = true;
  std::string detail;
};

class Clock {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::vector<Complex> polar_samples(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> r(0.0, 3.0), th(0.0, kPi);
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < count) {
    const double rr = r(rng), tt = th(rng);
    if (rr > 0.0 && tt > 0.0) out.push_back(std::polar(rr, tt));
  }
  return out;
}

Criterion helicoid_golden() {
  Criterion c{1};
  const Clock clock;
  const SurfaceMap s = make_surface(helicoid_data());
  double err = 0.0;
  for (Complex w : polar_samples(1, 1000)) {
    const double r = std::abs(w), th = std::arg(w);
    err = std::max(err, distance(s(w), {r * std::cos(th), r * std::sin(th), th / kPi}));
  }
  const double t = clock.seconds();
  c.passed = err <= 1e-8 && t <= 5.0;
  c.detail = fmt("max error %.3g over 1000 samples, %.2f s", err, t);
  return c;
}

Criterion catenoid_conjugate() {
  Criterion c{2};
  const Clock clock;
  const SurfaceMap s = make_surface(conjugate(helicoid_data()));
  double err = 0.0;
  for (Complex w : polar_samples(1, 1000)) {
    const double r = std::abs(w), th = std::arg(w);
    err = std::max(err, distance(s(w), {r * std::sin(th), -r * std::cos(th), std::log(r) / kPi}));
  }
  double smallest = HUGE_VAL;
  for (int k = 1; k <= 10; ++k) {
    const double th = kPi * k / 11.0;
    for (double r : {0.9 * std::exp(-10.0 * kPi), 1e-20}) smallest = std::min(smallest, std::abs(s(std::polar(r, th)).t));
  }
  const double t = clock.seconds();
  c.passed = err <= 1e-8 && smallest > 10.0 && t <= 5.0;
  c.detail = fmt("max error %.3g, min |t*| below e^{-10 pi} %.4g, %.2f s", err, smallest, t);
  return c;
}

Criterion blowup_identities() {
  Criterion c{3};
  const SurfaceMap heli = make_surface(helicoid_data());
  const SurfaceMap ext = extend_isotropic(heli, {0.0, 1.0, 0.0, ChartKind::HalfPlane}, ArcChart::line(0.0, 1.0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> r(1e-6, 3.0), ang(1e-6, kPi - 1e-6);
  int inexact = 0;
  for (int k = 0; k < 1000; ++k) {
    const double rr = r(rng), mirrored = ang(rng), th = kPi - mirrored;
    if (ext(Complex{-rr, mirrored}).t + ext(Complex{rr, th}).t != 1.0) ++inexact;
  }
  double seam = 0.0;
  for (int k = 1; k <= 7; ++k) {
    const double th = k * kPi / 8;
    seam = std::max(seam, distance(ext(Complex{0.0, th}), {0.0, 0.0, th / kPi}));
  }
  c.passed = inexact == 0 && seam <= 1e-12;
  c.detail = fmt("%.0f of 1000 sums differ from 1, seam error %.3g", inexact, seam);
  return c;
}

Criterion involutions() {
  Criterion c{4};
  const ArcChart arcs[] = {ArcChart::line(Complex{0.5, -1.0}, Complex{1.0, 2.0}), ArcChart::circle(Complex{0.3, 0.2}, 1.5),
                           ArcChart::analytic(parse("w+i*w^2"), -1.0, 1.0)};
  double fixed = 0.0, invol = 0.0;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> off(-0.1, 0.1);
  for (const ArcChart& arc : arcs)
    for (int k = 0; k < 50; ++k) {
      const double s = -0.95 + 1.9 * k / 49.0;
      const Complex on = arc.gamma(s);
      fixed = std::max(fixed, std::abs(arc.reflect(on) - on));
      const Complex normal = I * arc.gamma_prime(s) / std::abs(arc.gamma_prime(s));
      const Complex z = on + off(rng) * normal;
      invol = std::max(invol, std::abs(arc.reflect(arc.reflect(z)) - z));
    }
  c.passed = fixed <= 1e-10 && invol <= 1e-10;
  c.detail = fmt("fixed-point error %.3g, involution error %.3g (line, circle, s+is^2; 50 samples each)", fixed, invol);
  return c;
}

Criterion poisson_vs_quadrature() {
  Criterion c{5};
  const BoundaryData hp = BoundaryData::half_plane({-1.0, 0.5, 2.0}, {0.3, 1.0, -0.5, 0.8});
  const BoundaryData dk = BoundaryData::disk({0.4, 1.9, 3.3, 5.0}, {1.0, -0.2, 0.6, 0.0});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> x(-4.0, 4.0), y(0.02, 4.0), u(0.0, 1.0), a(0.0, 2 * kPi);
  double err = 0.0;
  bool max_principle = true;
  for (int k = 0; k < 100; ++k) {
    const Complex w{x(rng), y(rng)};
    const double t = poisson_halfplane(hp, w);
    err = std::max(err, std::abs(t - oracle::poisson_halfplane(hp, w)));
    max_principle = max_principle && t >= hp.min_value() && t <= hp.max_value();
    const Complex z = std::polar(0.98 * std::sqrt(u(rng)), a(rng));
    const double s = poisson_disk(dk, z);
    err = std::max(err, std::abs(s - oracle::poisson_disk(dk, z)));
    max_principle = max_principle && s >= dk.min_value() && s <= dk.max_value();
  }
  c.passed = err <= 1e-9 && max_principle;
  c.detail = fmt("max deviation from kernel quadrature %.3g, max principle ", err) + (max_principle ? "holds" : "violated");
  return c;
}

Criterion schwarz_christoffel() {
  Criterion c{6};
  const Clock clock;
  double spread = 0.0, sym = 0.0;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0), a(0.0, 2 * kPi);
  for (int n = 2; n <= 4; ++n) {
    const PolygonChart chart(n);
    const auto& v = chart.vertices();
    double lo = HUGE_VAL, hi = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const double len = std::abs(v[(k + 1) % v.size()] - v[k]);
      lo = std::min(lo, len);
      hi = std::max(hi, len);
    }
    spread = std::max(spread, hi - lo);
    const Complex rot = std::polar(1.0, kPi / n);
    for (int k = 0; k < 100; ++k) {
      const Complex w = std::polar(std::sqrt(u(rng)), a(rng));
      const Complex f = chart.map(w);
      sym = std::max(sym, std::abs(chart.map(rot * w) - rot * f));
      sym = std::max(sym, std::abs(chart.map(std::conj(w)) - std::conj(f)));
    }
  }
  // int_0^1 (1 - x^4)^{-1/2} dx with x = 1 - u^2.
  const double oracle = oracle::simpson(
      [](double s) {
        const double x = 1.0 - s * s;
        return 2.0 / std::sqrt((1.0 + x) * (1.0 + x * x));
      },
      0.0, 1.0, 1e-14);
  const double half = std::abs(sc_map(2, 1.0) - oracle);
  const double t = clock.seconds();
  c.passed = spread <= 1e-7 && sym <= 1e-8 && half <= 1e-6 && t <= 30.0;
  c.detail = fmt("edge spread %.3g, symmetry error %.3g, |f(1) - %.7f| = %.3g", spread, sym, oracle, half) +
             fmt(", %.2f s", t);
  return c;
}

struct Sweep {
  std::string name;
  SurfaceMap surface;
  ParameterGrid grid;
};

Criterion harmonicity_everywhere() {
  Criterion c{7};
  const int res = 25;
  const SurfaceMap heli = make_surface(helicoid_data());
  const GridBounds upper{0.05, 3.0, 0.05, kPi - 0.05, true, 0.0};
  const GridBounds strip{-3.0, 3.0, 0.05, kPi - 0.05, true, 0.0};
  const BlowUpChart origin{0.0, 1.0, 0.0, ChartKind::HalfPlane};
  std::vector<Sweep> sweeps;
  sweeps.push_back({"helicoid", heli, sample_grid(ChartKind::HalfPlane, res, upper)});
  sweeps.push_back({"catenoid", make_surface(conjugate(helicoid_data())), sample_grid(ChartKind::HalfPlane, res, upper)});
  for (double cc : {-1.0, 1.0}) {
    WeierstrassData d = helicoid_data();
    d.c = cc;
    sweeps.push_back({fmt("helicoid family c=%g", cc), make_surface(d), sample_grid(ChartKind::HalfPlane, res, upper)});
  }
  sweeps.push_back({"helicoid across the isotropic line",
                    extend_isotropic(heli, origin, ArcChart::line(0.0, 1.0)), sample_grid(ChartKind::BlowUpStrip, res, strip)});
  sweeps.push_back({"helicoid across parallel lines", reflect_parallel_lines(heli, origin, 1.0).surface,
                    sample_grid(ChartKind::BlowUpStrip, res, strip)});
  sweeps.push_back({"helicoid across the positive axis", reflect_horizontal(heli, ArcChart::line(0.0, 1.0), 0.0, {0.0, 6.0}),
                    sample_grid(ChartKind::Plane, res, {0.05, 3.0, -(kPi - 0.05), kPi - 0.05, true, 0.0})});
  for (int n : {2, 3}) {
    auto chart = std::make_shared<const PolygonChart>(n);
    const SurfaceMap patch = schwarz_patch(chart);
    sweeps.push_back({fmt("polygon patch n=%g", n), patch, sample_grid(ChartKind::Disk, res, {})});
    const double reach = 0.5 * std::tan(kPi / (4.0 * n));
    const BlowUpChart jump = chart->jump(1);
    sweeps.push_back({fmt("polygon patch n=%g across an isotropic line", n),
                      reflect_parallel_lines(patch, jump, chart->edge_direction(1)).surface,
                      sample_grid(ChartKind::BlowUpStrip, res, {-reach, reach, 0.05, kPi - 0.05, true, 0.0})});
    const double from = kPi / n - kPi / (2.0 * n), to = kPi / n, inset = 1e-3 * (to - from);
    sweeps.push_back({fmt("polygon patch n=%g across a half-edge", n),
                      reflect_horizontal(patch, ArcChart::line(chart->midpoints()[0], chart->edge_direction(1)),
                                         PolygonChart::arc_height(1), {from, to}),
                      sample_grid(ChartKind::Plane, res, {0.6, 1.0 / 0.6, from + inset, to - inset, true, 0.0})});
  }
  double worst = 0.0;
  std::string worst_name;
  for (const Sweep& s : sweeps) {
    const Mesh mesh = build_mesh(s.surface, s.grid);
    const HarmonicityReport rep = harmonicity_report(s.surface, s.grid, mesh);
    const double rel = rep.max_residual / rep.bbox_diagonal;
    if (rel >= worst) {
      worst = rel;
      worst_name = s.name;
    }
    if (!rep.passed(1e-5) || rep.samples < 500) {
      c.passed = false;
      std::printf("  %s: residual %.3g, bbox %.3g, %zu samples\n", s.name.c_str(), rep.max_residual, rep.bbox_diagonal,
                  rep.samples);
    }
  }
  c.detail = fmt("%.0f maps, worst residual/bbox %.3g", static_cast<double>(sweeps.size()), worst) + " (" + worst_name + ")";
  return c;
}

Criterion triple_periodicity() {
  Criterion c{8};
  const Clock clock;
  const Tiling tiling = schwarz_d_tiling(4, 9);
  double det = 0.0;
  if (tiling.periods.size() == 3) {
    const Point3 &p = tiling.periods[0], &q = tiling.periods[1], &r = tiling.periods[2];
    det = p.x * (q.y * r.t - q.t * r.y) - p.y * (q.x * r.t - q.t * r.x) + p.t * (q.x * r.y - q.y * r.x);
  }
  const double seam = schwarz_seam_residual(std::make_shared<const PolygonChart>(2));
  const double t = clock.seconds();
  c.passed = tiling.periods.size() == 3 && std::abs(det) > 1e-6 && seam <= 1e-8 && t <= 60.0;
  c.detail = fmt("%.0f patches, %.0f periods, det %.4g, seam %.3g", static_cast<double>(tiling.meshes.size()),
                 static_cast<double>(tiling.periods.size()), det, seam) +
             fmt(", %.2f s", t);
  return c;
}

Criterion family_endpoints() {
  Criterion c{9};
  WeierstrassData d = conjugate(helicoid_data());
  std::mt19937_64 rng(9);
  // Graph patches clear of the c = 1 neck at |w| = 1/(2 pi).
  std::uniform_real_distribution<double> r(0.5, 3.0), th(0.1, kPi - 0.1);
  double worst = 0.0;
  for (double cc : {-1.0, 1.0}) {
    d.c = cc;
    for (int k = 0; k < 50; ++k) worst = std::max(worst, graph_pde_residual(d, std::polar(r(rng), th(rng)), 1e-3));
  }
  c.passed = worst <= 1e-4;
  c.detail = fmt("max graph PDE residual %.3g at c = -1 and 1 (50 samples each, 0.5 <= |w| <= 3)", worst);
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Criterion cli_determinism() {
  Criterion c{10};
  const fs::path root = fs::temp_directory_path() / "isoflect_acceptance";
  std::string files[2][2];
  bool ran = true;
  for (int k = 0; k < 2; ++k) {
    const fs::path dir = root / ("run" + std::to_string(k));
    fs::create_directories(dir);
    fs::remove(dir / "schwarz-d.obj");
    fs::remove(dir / "schwarz-d.json");
    const std::string cmd = "cd '" + dir.string() + "' && '" + ISOFLECT_BIN +
                            "' generate --preset schwarz-d --out schwarz-d.obj > /dev/null";
    const int status = std::system(cmd.c_str());
    ran = ran && WIFEXITED(status) && WEXITSTATUS(status) == 0;
    files[k][0] = slurp(dir / "schwarz-d.obj");
    files[k][1] = slurp(dir / "schwarz-d.json");
  }
  const bool obj = !files[0][0].empty() && files[0][0] == files[1][0];
  const bool json = !files[0][1].empty() && files[0][1] == files[1][1];
  c.passed = ran && obj && json;
  c.detail = std::string("exit ") + (ran ? "ok" : "failed") + ", OBJ " + (obj ? "identical" : "differs") + ", JSON " +
             (json ? "identical" : "differs");
  return c;
}
}  // namespace

int main() {
  Criterion (*const checks[])() = {helicoid_golden,      catenoid_conjugate,    blowup_identities, involutions,
                                   poisson_vs_quadrature, schwarz_christoffel,  harmonicity_everywhere,
                                   triple_periodicity,   family_endpoints,      cli_determinism};
  int failed = 0, id = 0;
  for (auto check : checks) {
    Criterion c{++id};
    try {
      c = check();
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = std::string("threw: ") + e.what();
    }
    std::printf("criterion %d: %s  %s\n", c.id, c.passed ? "PASS" : "FAIL", c.detail.c_str());
    std::fflush(stdout);
    failed += !c.passed;
  }
  return failed == 0 ? 0 : 1;
}
