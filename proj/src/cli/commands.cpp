#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>

#include "isoflect/harmonic.hpp"
#include "isoflect/mesh.hpp"
#include "isoflect/reflect.hpp"
#include "isoflect/scpoly.hpp"
#include "isoflect/weierstrass.hpp"

namespace isoflect::cli {

namespace {

struct Built {
  SurfaceMap surface;
  std::optional<WeierstrassData> data;
  std::shared_ptr<const PolygonChart> polygon;
  std::function<double(Complex)> metric;
};

Json point_json(const Point3& p) { return Json::array({p.x, p.y, p.t}); }
Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json motion_json(const MotionI3& m) {
  Json j;
  j["planar"] = {{"kind", m.anti ? "anti-conformal" : "conformal"},
                 {"alpha", complex_json(m.alpha)},
                 {"beta", complex_json(m.beta)}};
  j["eps"] = m.eps;
  j["delta"] = m.delta;
  if (m.grad != Complex{}) j["shear"] = complex_json(-m.grad);
  return j;
}

Json tolerance_json(const Tolerances& t) {
  return {{"quad", t.quad},     {"harmonic", t.harmonic},         {"conformal", t.conformal},
          {"height", t.height}, {"straightness", t.straightness}, {"seam", t.seam}};
}

ReflectOptions reflect_options(const JobConfig& cfg) {
  ReflectOptions o;
  o.height_tol = cfg.tol.height;
  o.straightness_tol = cfg.tol.straightness;
  o.arc_tol = cfg.tol.height;
  return o;
}

Built build(const JobConfig& cfg, bool conjugated = false) {
  Built b;
  if (cfg.source == SourceKind::Preset && cfg.preset == "schwarz-d") {
    if (conjugated) throw ConfigError("surface", "conjugation needs Weierstrass data");
    b.polygon = std::make_shared<const PolygonChart>(cfg.n, std::min(cfg.tol.quad, 1e-12));
    b.surface = schwarz_patch(b.polygon);
    return b;
  }
  if (cfg.source == SourceKind::HarmonicPair) {
    if (conjugated) throw ConfigError("surface", "conjugation needs Weierstrass data");
    const Expr h = parse(cfg.h_expr), t = parse(cfg.t_expr);
    b.surface = from_harmonic_pair([h](Complex w) { return h.eval(w); }, [t](Complex w) { return t.eval(w).real(); },
                                   cfg.chart);
    return b;
  }
  WeierstrassData data = conjugated ? conjugate(cfg.data) : cfg.data;
  b.surface = make_surface(data);
  b.metric = [data](Complex w) { return metric_factor(data, w); };
  b.data = data;
  return b;
}

ParameterGrid grid_for(const JobConfig& cfg) { return sample_grid(cfg.chart, cfg.resolution, cfg.bounds); }

Json bbox_json(const Mesh& mesh) {
  const auto [lo, hi] = mesh.bounding_box();
  return {{"min", point_json(lo)}, {"max", point_json(hi)}, {"diagonal", mesh.bbox_diagonal()}};
}

Json harmonicity_json(const HarmonicityReport& h, double rel_tol) {
  return {{"max_residual", h.max_residual},
          {"bbox_diagonal", h.bbox_diagonal},
          {"samples", h.samples},
          {"passed", h.passed(rel_tol)}};
}

std::string default_mesh_path(const JobConfig& cfg, const std::string& command) {
  if (!cfg.mesh_path.empty()) return cfg.mesh_path;
  return command + (cfg.format == MeshFormat::Ply ? ".ply" : ".obj");
}

void emit_report(const JobConfig& cfg, const std::string& command, Json body, std::ostream& out) {
  body["command"] = command;
  body["config_hash"] = cfg.hash;
  body["tolerances"] = tolerance_json(cfg.tol);
  const std::string text = body.dump(2) + "\n";
  if (cfg.report_path.empty()) {
    out << text;
    return;
  }
  std::ofstream os(cfg.report_path, std::ios::binary);
  if (!os) throw Error("cannot open " + cfg.report_path + " for writing");
  os << text;
}

Json mesh_summary(const Mesh& mesh) {
  return {{"vertices", mesh.vertices.size()}, {"triangles", mesh.triangles.size()}, {"bbox", bbox_json(mesh)}};
}

// Largest vertex distance from a closed-form surface at the grid nodes.
double closed_form_error(const Mesh& mesh, const ParameterGrid& grid, const SurfaceMap& exact) {
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.nodes.size(); ++k)
    worst = std::max(worst, distance(mesh.vertices[k], exact(grid.nodes[k])));
  return worst;
}

int surface_command(const std::string& name, const JobConfig& cfg, std::ostream& out, bool conjugated) {
  const Built b = build(cfg, conjugated);
  const ParameterGrid grid = grid_for(cfg);
  const Mesh mesh = build_mesh(b.surface, grid, b.metric);
  const HarmonicityReport h = harmonicity_report(b.surface, grid, mesh);

  Json report;
  report["surface"] = {{"chart", to_string(b.surface.chart())},
                       {"provenance", to_string(b.surface.provenance())},
                       {"c", cfg.c},
                       {"conjugated", conjugated}};
  report["mesh"] = mesh_summary(mesh);
  report["harmonicity"] = harmonicity_json(h, cfg.tol.harmonic);
  Json singular = Json::array();
  if (b.data) {
    Rect region{HUGE_VAL, -HUGE_VAL, HUGE_VAL, -HUGE_VAL};
    for (const Complex& w : grid.nodes) {
      region.re_min = std::min(region.re_min, w.real());
      region.re_max = std::max(region.re_max, w.real());
      region.im_min = std::min(region.im_min, w.imag());
      region.im_max = std::max(region.im_max, w.imag());
    }
    for (const Complex& z : singular_points(*b.data, region, 64)) singular.push_back(complex_json(z));
  }
  report["singular_points"] = singular;
  std::size_t flagged = 0;
  for (auto f : mesh.flags) flagged += (f & kSingular) ? 1 : 0;
  report["mesh"]["singular_vertices"] = flagged;

  if (cfg.source == SourceKind::Preset && cfg.c == 0.0 &&
      (cfg.preset == "helicoid" || cfg.preset == "isotropic-catenoid")) {
    const bool catenoid = (cfg.preset == "helicoid") == conjugated;
    const SurfaceMap exact = catenoid ? isotropic_catenoid_closed_form() : helicoid_closed_form();
    report["closed_form"] = {{"surface", catenoid ? "isotropic-catenoid" : "helicoid"},
                             {"max_error", closed_form_error(mesh, grid, exact)}};
    if (conjugated && cfg.preset == "isotropic-catenoid") report.erase("closed_form");
  }

  const std::string path = default_mesh_path(cfg, name);
  export_mesh(mesh, cfg.format, path);
  emit_report(cfg, name, report, out);
  return h.passed(cfg.tol.harmonic) ? kExitOk : kExitFailure;
}

ArcChart make_arc(const ArcSpec& spec) {
  if (spec.kind == "circle") return ArcChart::circle(spec.center, spec.radius);
  if (spec.kind == "analytic") return ArcChart::analytic(parse(spec.gamma), spec.s0, spec.s1);
  return ArcChart::line(spec.point, spec.direction);
}

Json arc_json(const ArcSpec& spec) {
  if (spec.kind == "circle") return {{"kind", "circle"}, {"center", complex_json(spec.center)}, {"radius", spec.radius}};
  if (spec.kind == "analytic")
    return {{"kind", "analytic"}, {"gamma", print(parse(spec.gamma))}, {"interval", {spec.s0, spec.s1}}};
  return {{"kind", "line"}, {"point", complex_json(spec.point)}, {"direction", complex_json(spec.direction)}};
}

ReflectSpec default_reflect(const JobConfig& cfg) {
  if (cfg.reflect) return *cfg.reflect;
  if (cfg.source == SourceKind::Preset && (cfg.preset == "helicoid" || cfg.preset == "schwarz-d")) {
    ReflectSpec spec;
    spec.kind = "isotropic";
    return spec;
  }
  throw ConfigError("reflect", "required for this surface source");
}

Mesh mirrored_mesh(const SurfaceMap& ext, const ParameterGrid& grid, ChartKind chart) {
  ParameterGrid mirror = grid;
  for (auto& w : mirror.nodes) w = chart == ChartKind::Disk ? 1.0 / std::conj(w) : std::conj(w);
  Mesh m = build_mesh(ext, mirror);
  for (auto& tri : m.triangles) std::swap(tri[1], tri[2]);
  return m;
}

int cmd_reflect(const JobConfig& cfg, std::ostream& out) {
  const Built b = build(cfg);
  const ReflectSpec spec = default_reflect(cfg);
  const ReflectOptions opts = reflect_options(cfg);
  Json report;
  report["surface"] = {{"chart", to_string(b.surface.chart())}, {"provenance", to_string(b.surface.provenance())}};
  std::vector<Mesh> parts;
  double seam = 0.0, involution = 0.0;
  HarmonicityReport h;

  if (spec.kind == "horizontal") {
    if (cfg.chart != ChartKind::HalfPlane && cfg.chart != ChartKind::Disk)
      throw ConfigError("reflect.kind", "horizontal reflection needs a half-plane or disk chart");
    ArcSpec arc_spec = spec.arc.value_or(ArcSpec{});
    if (!spec.arc && cfg.chart == ChartKind::Disk) throw ConfigError("reflect.arc", "required on disk charts");
    const ArcChart arc = make_arc(arc_spec);
    const SurfaceMap ext =
        reflect_horizontal(b.surface, arc, spec.height, {spec.piece_from, spec.piece_to}, opts);
    ParameterGrid grid;
    if (cfg.chart == ChartKind::Disk) {
      const double inset = 1e-3 * (spec.piece_to - spec.piece_from);
      grid = sample_grid(ChartKind::Plane, cfg.resolution,
                         {0.6, 1.0 / 0.6, spec.piece_from + inset, spec.piece_to - inset, true, 0.0});
    } else {
      GridBounds gb = cfg.bounds;
      gb.v0 = -cfg.bounds.v1;
      grid = sample_grid(ChartKind::Plane, cfg.resolution, gb);
    }
    parts.push_back(build_mesh(ext, grid));
    h = harmonicity_report(ext, grid, parts.back());
    const auto back = [&](const Point3& p) { return Point3::from(arc.reflect(p.planar()), 2.0 * spec.height - p.t); };
    for (int j = 0; j < 64; ++j) {
      const double s = spec.piece_from + (spec.piece_to - spec.piece_from) * (j + 0.5) / 64;
      const double d = 1e-12;
      const Complex above = cfg.chart == ChartKind::Disk ? std::polar(1.0 - d, s) : Complex{s, d};
      const Complex below = cfg.chart == ChartKind::Disk ? 1.0 / std::conj(above) : std::conj(above);
      seam = std::max(seam, distance(ext(above), ext(below)));
      involution = std::max(involution, distance(back(ext(below)), ext(above)));
    }
    report["reflection"] = {{"kind", "horizontal"},
                            {"arc", arc_json(arc_spec)},
                            {"height", spec.height},
                            {"piece", {spec.piece_from, spec.piece_to}}};
    if (auto m = arc.as_motion()) {
      MotionI3 rot = *m;
      rot.eps = -1;
      rot.delta = 2.0 * spec.height;
      report["motion"] = motion_json(rot);
    } else {
      report["motion"] = {{"planar", arc_json(arc_spec)}, {"eps", -1}, {"delta", 2.0 * spec.height}};
    }
  } else {
    BlowUpChart jump{spec.jump, spec.a, spec.b, cfg.chart};
    Complex direction = spec.arc && spec.arc->kind == "line" ? spec.arc->direction : Complex{1.0, 0.0};
    if (b.polygon) {
      jump = b.polygon->jump(spec.midpoint);
      if (!spec.arc) direction = b.polygon->edge_direction(spec.midpoint);
    }
    SurfaceMap ext;
    std::function<Point3(const Point3&)> back;
    if (!spec.arc || spec.arc->kind == "line") {
      const ParallelLineExtension pl = reflect_parallel_lines(b.surface, jump, direction, opts);
      ext = pl.surface;
      back = pl.motion;
      report["motion"] = motion_json(pl.motion);
      report["reflection"] = {{"kind", "isotropic"}, {"z0", complex_json(pl.z0)}};
      report["reflection"]["arc"] = {{"kind", "line"}, {"point", complex_json(pl.z0)}, {"direction", complex_json(direction)}};
    } else {
      const ArcChart arc = make_arc(*spec.arc);
      ext = extend_isotropic(b.surface, jump, arc, opts);
      const double sum = jump.a + jump.b;
      back = [arc, sum](const Point3& p) { return Point3::from(arc.reflect(p.planar()), sum - p.t); };
      report["motion"] = {{"planar", arc_json(*spec.arc)}, {"eps", -1}, {"delta", jump.a + jump.b}};
      report["reflection"] = {{"kind", "isotropic"}, {"arc", arc_json(*spec.arc)}};
    }
    const ClusterSet cs = cluster_set(b.surface, jump);
    report["reflection"]["jump"] = {{"chart", to_string(jump.chart)}, {"at", jump.jump}, {"a", jump.a}, {"b", jump.b}};
    report["cluster_set"] = {{"z0", complex_json(cs.z0)},
                             {"t_min", cs.tmin},
                             {"t_max", cs.tmax},
                             {"sample_residual", cs.sample_residual}};
    // On the disk |r| = tan(pi / (4n)) reaches the neighbouring polygon vertices.
    const double reach =
        cfg.chart != ChartKind::Disk ? cfg.bounds.u1 : 0.5 * std::tan(kPi / (4.0 * (b.polygon ? b.polygon->n() : 1)));
    const double th0 = cfg.chart == ChartKind::Disk ? 0.05 : cfg.bounds.v0;
    const double th1 = cfg.chart == ChartKind::Disk ? kPi - 0.05 : std::min(cfg.bounds.v1, kPi - 1e-6);
    const ParameterGrid grid = sample_grid(ChartKind::BlowUpStrip, cfg.resolution, {-reach, reach, th0, th1, true, 0.0});
    parts.push_back(build_mesh(ext, grid));
    h = harmonicity_report(ext, grid, parts.back());
    for (int j = 0; j < 64; ++j) {
      const double theta = kPi * (j + 0.5) / 64;
      const double d = 1e-12;
      seam = std::max(seam, distance(ext(Complex{d, theta}), ext(Complex{-d, theta})));
      const double r = 0.5 * reach * (j + 1) / 64;
      const Point3 q = ext(Complex{-r, kPi - theta});
      involution = std::max(involution, distance(back(q), ext(Complex{r, theta})));
    }
  }

  report["seam_residual"] = seam;
  report["involution_residual"] = involution;
  report["harmonicity"] = harmonicity_json(h, cfg.tol.harmonic);
  const Mesh mesh = weld(parts);
  report["mesh"] = mesh_summary(mesh);
  report["passed"] = seam <= cfg.tol.seam && h.passed(cfg.tol.harmonic);
  export_mesh(mesh, cfg.format, default_mesh_path(cfg, "reflect"));
  emit_report(cfg, "reflect", report, out);
  return report["passed"].get<bool>() ? kExitOk : kExitFailure;
}

double determinant(const std::vector<Point3>& v) {
  if (v.size() != 3) return 0.0;
  return v[0].x * (v[1].y * v[2].t - v[1].t * v[2].y) - v[0].y * (v[1].x * v[2].t - v[1].t * v[2].x) +
         v[0].t * (v[1].x * v[2].y - v[1].y * v[2].x);
}

int cmd_tile(const JobConfig& cfg, std::ostream& out) {
  const Built b = build(cfg);
  std::vector<MotionI3> gens = cfg.generators;
  if (gens.empty()) {
    if (!b.polygon) throw ConfigError("tiling.generators", "required unless the preset is schwarz-d");
    gens = schwarz_d_generators(*b.polygon);
  }
  const ParameterGrid grid = grid_for(cfg);
  const Mesh seed = build_mesh(b.surface, grid, b.metric);
  const Tiling tiling = orbit_tiling(seed, gens, cfg.depth);
  const Mesh merged = weld(tiling.meshes);

  Json report;
  report["patches"] = tiling.meshes.size();
  report["depth"] = cfg.depth;
  report["generators"] = Json::array();
  for (const auto& g : gens) report["generators"].push_back(motion_json(g));
  report["periods"] = Json::array();
  for (const auto& p : tiling.periods) report["periods"].push_back(point_json(p));
  report["period_determinant"] = determinant(tiling.periods);
  report["orientation_defects"] = orientation_defects(merged);
  if (b.polygon) report["seam_residual"] = schwarz_seam_residual(b.polygon);
  report["mesh"] = mesh_summary(merged);
  export_mesh(merged, cfg.format, default_mesh_path(cfg, "tile"));
  emit_report(cfg, "tile", report, out);
  return kExitOk;
}

struct Suite {
  std::string name;
  bool passed = true;
  bool skipped = false;
  Json detail = Json::object();
};

Json suite_json(const Suite& s) {
  Json j = s.detail;
  j["status"] = s.skipped ? "skipped" : (s.passed ? "passed" : "failed");
  return j;
}

Suite involution_suite(const JobConfig& cfg) {
  Suite s{"reflection-involution"};
  std::vector<std::pair<std::string, ArcChart>> arcs = {
      {"line", ArcChart::line({0.5, -0.25}, {1.0, 2.0})},
      {"circle", ArcChart::circle({0.25, 0.5}, 1.5)},
      {"analytic", ArcChart::analytic(parse("w+i*w^2"), -1.0, 1.0)}};
  if (cfg.reflect && cfg.reflect->arc) arcs.emplace_back("config", make_arc(*cfg.reflect->arc));
  for (const auto& [name, arc] : arcs) {
    double inv = 0.0, fix = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double s0 = arc.kind() == ArcChart::Kind::Analytic ? arc.interval().first : -1.0;
      const double s1 = arc.kind() == ArcChart::Kind::Analytic ? arc.interval().second : 1.0;
      const double s = s0 + (s1 - s0) * (k + 0.5) / 50;
      const Complex on = arc.gamma(s);
      fix = std::max(fix, std::abs(arc.reflect(on) - on));
      const Complex off = on + 0.05 * Complex{0.0, 1.0} * arc.gamma_prime(s) / std::abs(arc.gamma_prime(s));
      inv = std::max(inv, std::abs(arc.reflect(arc.reflect(off)) - off));
    }
    s.detail[name] = {{"involution", inv}, {"fixed_points", fix}};
    s.passed = s.passed && inv <= 1e-10 && fix <= 1e-10;
  }
  return s;
}

int cmd_verify(const JobConfig& cfg, std::ostream& out) {
  std::vector<Suite> suites;
  Suite data{"data"};
  std::optional<Built> built;
  try {
    built = build(cfg);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    data.passed = false;
    data.detail["error"] = e.what();
  }
  suites.push_back(data);

  if (built) {
    const Built& b = *built;
    const ParameterGrid grid = grid_for(cfg);
    Suite harm{"harmonicity"}, conf{"conformality"};
    try {
      const Mesh mesh = build_mesh(b.surface, grid, b.metric);
      const HarmonicityReport h = harmonicity_report(b.surface, grid, mesh);
      harm.detail = harmonicity_json(h, cfg.tol.harmonic);
      harm.passed = h.passed(cfg.tol.harmonic);
      double cr = 0.0;
      for (std::size_t k = 0; k < grid.nodes.size(); ++k)
        if (!(grid.flags[k] & kBoundary)) cr = std::max(cr, cauchy_riemann_residual(b.surface, grid.nodes[k], 1e-4));
      conf.detail = {{"max_residual", cr}};
      conf.passed = cr <= cfg.tol.conformal;
    } catch (const Error& e) {
      harm.passed = conf.passed = false;
      harm.detail["error"] = e.what();
    }
    suites.push_back(harm);
    suites.push_back(conf);

    Suite poisson_suite{"poisson-recovery"};
    std::function<double(Complex)> expected;
    if (cfg.source == SourceKind::Preset && cfg.c == 0.0) {
      if (cfg.preset == "helicoid") {
        const BoundaryData bd = BoundaryData::half_plane({0.0}, {1.0, 0.0});
        expected = [bd](Complex w) { return poisson(bd, w); };
      } else if (cfg.preset == "isotropic-catenoid") {
        const BoundaryData bd = BoundaryData::half_plane({0.0}, {1.0, 0.0});
        expected = [bd](Complex w) { return -conjugate_harmonic(bd, w); };
      } else {
        const BoundaryData bd = BoundaryData::alternating_disk(cfg.n);
        expected = [bd](Complex w) { return poisson(bd, w); };
      }
    }
    if (expected) {
      double err = 0.0;
      for (std::size_t k = 0; k < grid.nodes.size(); ++k)
        err = std::max(err, std::abs(b.surface(grid.nodes[k]).t - expected(grid.nodes[k])));
      poisson_suite.detail = {{"max_error", err}};
      poisson_suite.passed = err <= 1e-8;
    } else {
      poisson_suite.skipped = true;
    }
    suites.push_back(poisson_suite);

    Suite sc{"sc-symmetry"};
    if (b.polygon) {
      const PolygonChart& pc = *b.polygon;
      const int n = pc.n();
      const Complex rot = std::polar(1.0, kPi / n);
      double sym = 0.0, conj = 0.0;
      for (int k = 0; k < 100; ++k) {
        const Complex w = std::polar(0.98 * std::sqrt((k + 0.5) / 100.0), 2.0 * kPi * k * 0.6180339887498949);
        sym = std::max(sym, std::abs(pc.map(rot * w) - rot * pc.map(w)));
        conj = std::max(conj, std::abs(pc.map(std::conj(w)) - std::conj(pc.map(w))));
      }
      double lo = HUGE_VAL, hi = 0.0, mid = 0.0;
      const auto& v = pc.vertices();
      for (std::size_t k = 0; k < v.size(); ++k) {
        const double len = std::abs(v[(k + 1) % v.size()] - v[k]);
        lo = std::min(lo, len);
        hi = std::max(hi, len);
        mid = std::max(mid, std::abs(pc.midpoints()[k] - 0.5 * (v[(k + v.size() - 1) % v.size()] + v[k])));
      }
      sc.detail = {{"rotation", sym}, {"conjugation", conj}, {"edge_spread", hi - lo}, {"midpoints", mid}};
      sc.passed = sym <= 1e-8 && conj <= 1e-8 && hi - lo <= 1e-8 && mid <= 1e-7;
    } else {
      sc.skipped = true;
    }
    suites.push_back(sc);
  }
  suites.push_back(involution_suite(cfg));

  Json report;
  bool ok = true;
  for (const auto& s : suites) {
    report["suites"][s.name] = suite_json(s);
    ok = ok && (s.skipped || s.passed);
  }
  report["passed"] = ok;
  emit_report(cfg, "verify", report, out);
  return ok ? kExitOk : kExitFailure;
}

int cmd_sc_map(const JobConfig& cfg, std::ostream& out) {
  const PolygonChart pc(cfg.n, std::min(cfg.tol.quad, 1e-12));
  std::vector<Complex> points = cfg.points;
  if (points.empty()) points = {0.0, 1.0, pc.midpoint_preimages().front()};
  Json report;
  report["n"] = cfg.n;
  report["half_diagonal"] = pc.map(1.0).real();
  report["values"] = Json::array();
  for (const Complex& w : points) {
    Json entry = {{"w", complex_json(w)}, {"f", complex_json(pc.map(w))}};
    if (std::abs(w) < 1.0) entry["height"] = polygon_height(cfg.n, w);
    report["values"].push_back(entry);
  }
  report["vertices"] = Json::array();
  for (const Complex& v : pc.vertices()) report["vertices"].push_back(complex_json(v));
  report["midpoints"] = Json::array();
  for (const Complex& m : pc.midpoints()) report["midpoints"].push_back(complex_json(m));
  emit_report(cfg, "sc-map", report, out);
  return kExitOk;
}

}  // namespace

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> table = {
      {"generate", "mesh X_c with a harmonicity and singular-point report"},
      {"reflect", "extend across a horizontal arc or an isotropic line"},
      {"tile", "orbit tiling by reflection generators, with periods"},
      {"conjugate", "mesh the conjugate surface of the data (iF, G)"},
      {"verify", "run the data, harmonicity, conformality and reflection checks"},
      {"sc-map", "Schwarz-Christoffel map onto the regular 2n-gon"}};
  return table;
}

int run_command(const std::string& name, const JobConfig& cfg, std::ostream& out) {
  if (name == "generate") return surface_command("generate", cfg, out, false);
  if (name == "conjugate") return surface_command("conjugate", cfg, out, true);
  if (name == "reflect") return cmd_reflect(cfg, out);
  if (name == "tile") return cmd_tile(cfg, out);
  if (name == "verify") return cmd_verify(cfg, out);
  if (name == "sc-map") return cmd_sc_map(cfg, out);
  throw ConfigError("command", "unknown subcommand '" + name + "'");
}

}  // namespace isoflect::cli
