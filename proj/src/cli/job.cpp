#include "job.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace isoflect::cli {

namespace {

std::string join(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }

void allow_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw ConfigError(join(path, key), "unknown field");
}

double number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
  return x;
}

int integer(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<int>();
}

std::string string(const Json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

Complex complex_value(const Json& v, const std::string& path) {
  if (v.is_number()) return number(v, path);
  if (!v.is_array() || v.size() != 2) throw ConfigError(path, "expected a number or [re, im]");
  return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
}

std::pair<double, double> interval(const Json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(path, "expected [lo, hi]");
  const double lo = number(v[0], path + "[0]"), hi = number(v[1], path + "[1]");
  if (!(hi > lo)) throw ConfigError(path, "empty interval");
  return {lo, hi};
}

double positive(const Json& v, const std::string& path) {
  const double x = number(v, path);
  if (!(x > 0.0)) throw ConfigError(path, "must be positive");
  return x;
}

Expr expression(const Json& v, const std::string& path) {
  const std::string text = string(v, path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ConfigError(path, e.what());
  }
}

ChartKind chart_value(const Json& v, const std::string& path) {
  try {
    return chart_from_string(string(v, path));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

ArcSpec parse_arc(const Json& j, const std::string& path) {
  allow_keys(j, path, {"line", "circle", "analytic"});
  if (j.size() != 1) throw ConfigError(path, "expected exactly one of line, circle, analytic");
  ArcSpec arc;
  if (j.contains("line")) {
    const std::string p = path + ".line";
    const Json& l = j["line"];
    allow_keys(l, p, {"point", "direction"});
    arc.kind = "line";
    if (l.contains("point")) arc.point = complex_value(l["point"], p + ".point");
    if (l.contains("direction")) arc.direction = complex_value(l["direction"], p + ".direction");
    if (arc.direction == Complex{}) throw ConfigError(p + ".direction", "must be non-zero");
  } else if (j.contains("circle")) {
    const std::string p = path + ".circle";
    const Json& c = j["circle"];
    allow_keys(c, p, {"center", "radius"});
    arc.kind = "circle";
    if (c.contains("center")) arc.center = complex_value(c["center"], p + ".center");
    if (c.contains("radius")) arc.radius = positive(c["radius"], p + ".radius");
  } else {
    const std::string p = path + ".analytic";
    const Json& a = j["analytic"];
    allow_keys(a, p, {"gamma", "interval"});
    arc.kind = "analytic";
    if (!a.contains("gamma")) throw ConfigError(p + ".gamma", "required");
    arc.gamma = string(a["gamma"], p + ".gamma");
    expression(a["gamma"], p + ".gamma");
    if (a.contains("interval")) std::tie(arc.s0, arc.s1) = interval(a["interval"], p + ".interval");
  }
  return arc;
}

MotionI3 parse_generator(const Json& j, const std::string& path) {
  allow_keys(j, path, {"rotation", "translation", "reflection"});
  if (j.size() != 1) throw ConfigError(path, "expected exactly one of rotation, translation, reflection");
  if (j.contains("translation")) {
    const Json& t = j["translation"];
    if (!t.is_array() || t.size() != 3) throw ConfigError(path + ".translation", "expected [x, y, t]");
    return MotionI3::translation({number(t[0], path + ".translation[0]"), number(t[1], path + ".translation[1]"),
                                  number(t[2], path + ".translation[2]")});
  }
  const std::string key = j.contains("rotation") ? "rotation" : "reflection";
  const std::string p = path + "." + key;
  const Json& r = j[key];
  allow_keys(r, p, {"point", "direction", "height"});
  const Complex point = r.contains("point") ? complex_value(r["point"], p + ".point") : Complex{};
  const Complex dir = r.contains("direction") ? complex_value(r["direction"], p + ".direction") : Complex{1.0, 0.0};
  if (dir == Complex{}) throw ConfigError(p + ".direction", "must be non-zero");
  if (key == "reflection") return MotionI3::line_reflection(point, dir);
  const double height = r.contains("height") ? number(r["height"], p + ".height") : 0.0;
  return MotionI3::line_rotation(point, dir, height);
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("--config", "cannot open " + path);
  try {
    return Json::parse(is);
  } catch (const Json::parse_error& e) {
    throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
  }
}

Json apply_overrides(Json doc, const Overrides& o) {
  if (doc.is_null()) doc = Json::object();
  if (!doc.is_object()) throw ConfigError("<root>", "expected an object");
  if (o.preset) {
    Json surface = {{"preset", *o.preset}};
    if (doc.contains("surface") && doc["surface"].is_object() && doc["surface"].contains("n"))
      surface["n"] = doc["surface"]["n"];
    doc["surface"] = surface;
  }
  if (o.n) {
    if (!doc.contains("surface")) doc["surface"] = {{"preset", "schwarz-d"}};
    doc["surface"]["n"] = *o.n;
  }
  if (o.depth) doc["tiling"]["depth"] = *o.depth;
  if (o.out) doc["output"]["mesh"] = *o.out;
  if (o.format) doc["output"]["format"] = *o.format;
  if (o.tol) doc["tolerances"]["quad"] = *o.tol;
  return doc;
}

JobConfig parse_config(const Json& doc) {
  allow_keys(doc, "", {"surface", "c", "grid", "reflect", "tiling", "points", "output", "tolerances"});
  JobConfig cfg;
  cfg.effective = doc;
  Json hashed = doc;
  hashed.erase("output");
  cfg.hash = fnv1a_hex(hashed.dump());

  if (doc.contains("tolerances")) {
    const Json& t = doc["tolerances"];
    allow_keys(t, "tolerances", {"quad", "harmonic", "conformal", "height", "straightness", "seam"});
    const auto opt = [&](const char* key, double& slot) {
      if (t.contains(key)) slot = positive(t[key], std::string("tolerances.") + key);
    };
    opt("quad", cfg.tol.quad);
    opt("harmonic", cfg.tol.harmonic);
    opt("conformal", cfg.tol.conformal);
    opt("height", cfg.tol.height);
    opt("straightness", cfg.tol.straightness);
    opt("seam", cfg.tol.seam);
  }

  if (doc.contains("c")) cfg.c = number(doc["c"], "c");

  const Json surface = doc.contains("surface") ? doc["surface"] : Json{{"preset", "helicoid"}};
  allow_keys(surface, "surface", {"preset", "n", "weierstrass", "harmonic_pair"});
  const int sources = static_cast<int>(surface.contains("preset")) + static_cast<int>(surface.contains("weierstrass")) +
                      static_cast<int>(surface.contains("harmonic_pair"));
  if (sources != 1) throw ConfigError("surface", "expected exactly one of preset, weierstrass, harmonic_pair");
  if (surface.contains("n")) {
    cfg.n = integer(surface["n"], "surface.n");
    if (cfg.n < 2 || cfg.n > 8) throw ConfigError("surface.n", "must lie in [2, 8]");
  }

  if (surface.contains("preset")) {
    cfg.source = SourceKind::Preset;
    cfg.preset = string(surface["preset"], "surface.preset");
    if (cfg.preset == "helicoid" || cfg.preset == "isotropic-catenoid") {
      cfg.data = cfg.preset == "helicoid" ? helicoid_data() : conjugate(helicoid_data());
      cfg.chart = ChartKind::HalfPlane;
    } else if (cfg.preset == "schwarz-d") {
      cfg.chart = ChartKind::Disk;
    } else {
      throw ConfigError("surface.preset", "unknown preset '" + cfg.preset +
                                              "' (expected helicoid, isotropic-catenoid or schwarz-d)");
    }
  } else if (surface.contains("weierstrass")) {
    cfg.source = SourceKind::Weierstrass;
    const std::string p = "surface.weierstrass";
    const Json& w = surface["weierstrass"];
    allow_keys(w, p, {"F", "G", "basepoint", "chart", "singularities", "origin"});
    if (!w.contains("F")) throw ConfigError(p + ".F", "required");
    cfg.data.F = expression(w["F"], p + ".F");
    cfg.data.G = w.contains("G") ? expression(w["G"], p + ".G") : Expr::constant(0.0);
    cfg.data.chart = w.contains("chart") ? chart_value(w["chart"], p + ".chart") : ChartKind::HalfPlane;
    if (cfg.data.chart == ChartKind::BlowUpStrip) throw ConfigError(p + ".chart", "strip charts are produced by reflection");
    cfg.data.basepoint =
        w.contains("basepoint") ? complex_value(w["basepoint"], p + ".basepoint") : default_basepoint(cfg.data.chart);
    if (w.contains("singularities")) {
      if (!w["singularities"].is_array()) throw ConfigError(p + ".singularities", "expected an array");
      for (std::size_t k = 0; k < w["singularities"].size(); ++k)
        cfg.data.singularities.push_back(
            complex_value(w["singularities"][k], p + ".singularities[" + std::to_string(k) + "]"));
    }
    if (w.contains("origin")) {
      const Json& o = w["origin"];
      if (!o.is_array() || o.size() != 3) throw ConfigError(p + ".origin", "expected [x, y, t]");
      cfg.data.origin = {number(o[0], p + ".origin[0]"), number(o[1], p + ".origin[1]"), number(o[2], p + ".origin[2]")};
    }
    cfg.chart = cfg.data.chart;
  } else {
    cfg.source = SourceKind::HarmonicPair;
    const std::string p = "surface.harmonic_pair";
    const Json& h = surface["harmonic_pair"];
    allow_keys(h, p, {"h", "t", "chart"});
    if (!h.contains("h")) throw ConfigError(p + ".h", "required");
    if (!h.contains("t")) throw ConfigError(p + ".t", "required");
    cfg.h_expr = string(h["h"], p + ".h");
    cfg.t_expr = string(h["t"], p + ".t");
    expression(h["h"], p + ".h");
    expression(h["t"], p + ".t");
    cfg.chart = h.contains("chart") ? chart_value(h["chart"], p + ".chart") : ChartKind::HalfPlane;
    if (cfg.chart == ChartKind::BlowUpStrip) throw ConfigError(p + ".chart", "strip charts are produced by reflection");
  }
  cfg.data.c = cfg.c;
  cfg.data.tol = cfg.tol.quad;

  // grid defaults per chart
  cfg.resolution = cfg.chart == ChartKind::Disk ? 17 : 33;
  if (cfg.chart == ChartKind::HalfPlane) {
    cfg.bounds = {0.05, 3.0, 0.05, kPi - 0.05, true, 1e-4};
  } else if (cfg.chart == ChartKind::Plane) {
    cfg.bounds = {-1.0, 1.0, -1.0, 1.0, false, 1e-4};
  }
  if (doc.contains("grid")) {
    const Json& g = doc["grid"];
    allow_keys(g, "grid", {"resolution", "u", "v", "polar", "disk_margin"});
    if (g.contains("resolution")) {
      cfg.resolution = integer(g["resolution"], "grid.resolution");
      if (cfg.resolution < 2) throw ConfigError("grid.resolution", "must be >= 2");
      if (cfg.resolution > 4096) throw ConfigError("grid.resolution", "must be <= 4096");
    }
    if (g.contains("u")) std::tie(cfg.bounds.u0, cfg.bounds.u1) = interval(g["u"], "grid.u");
    if (g.contains("v")) std::tie(cfg.bounds.v0, cfg.bounds.v1) = interval(g["v"], "grid.v");
    if (g.contains("polar")) {
      if (!g["polar"].is_boolean()) throw ConfigError("grid.polar", "expected true or false");
      cfg.bounds.polar = g["polar"].get<bool>();
    }
    if (g.contains("disk_margin")) {
      cfg.bounds.disk_margin = number(g["disk_margin"], "grid.disk_margin");
      if (!(cfg.bounds.disk_margin >= 0.0 && cfg.bounds.disk_margin < 1.0))
        throw ConfigError("grid.disk_margin", "must lie in [0, 1)");
    }
  }

  if (doc.contains("reflect")) {
    const Json& r = doc["reflect"];
    allow_keys(r, "reflect", {"kind", "arc", "height", "piece", "jump", "a", "b", "midpoint"});
    ReflectSpec spec;
    if (r.contains("kind")) spec.kind = string(r["kind"], "reflect.kind");
    if (spec.kind != "isotropic" && spec.kind != "horizontal")
      throw ConfigError("reflect.kind", "expected isotropic or horizontal");
    if (r.contains("arc")) spec.arc = parse_arc(r["arc"], "reflect.arc");
    if (r.contains("height")) spec.height = number(r["height"], "reflect.height");
    if (r.contains("piece")) std::tie(spec.piece_from, spec.piece_to) = interval(r["piece"], "reflect.piece");
    if (r.contains("jump")) spec.jump = number(r["jump"], "reflect.jump");
    if (r.contains("a")) spec.a = number(r["a"], "reflect.a");
    if (r.contains("b")) spec.b = number(r["b"], "reflect.b");
    if (r.contains("midpoint")) {
      spec.midpoint = integer(r["midpoint"], "reflect.midpoint");
      if (spec.midpoint < 1 || spec.midpoint > 2 * cfg.n) throw ConfigError("reflect.midpoint", "must lie in [1, 2n]");
    }
    if (spec.kind == "horizontal" && !r.contains("piece") && cfg.preset == "helicoid" &&
        cfg.source == SourceKind::Preset)
      std::tie(spec.piece_from, spec.piece_to) = std::pair{0.0, 2.0 * cfg.bounds.u1};
    cfg.reflect = spec;
  }

  if (doc.contains("tiling")) {
    const Json& t = doc["tiling"];
    allow_keys(t, "tiling", {"depth", "generators"});
    if (t.contains("depth")) {
      cfg.depth = integer(t["depth"], "tiling.depth");
      if (cfg.depth < 0) throw ConfigError("tiling.depth", "must be >= 0");
      if (cfg.depth > 12) throw ConfigError("tiling.depth", "must be <= 12");
    }
    if (t.contains("generators")) {
      if (!t["generators"].is_array()) throw ConfigError("tiling.generators", "expected an array");
      for (std::size_t k = 0; k < t["generators"].size(); ++k)
        cfg.generators.push_back(parse_generator(t["generators"][k], "tiling.generators[" + std::to_string(k) + "]"));
    }
  }

  if (doc.contains("points")) {
    if (!doc["points"].is_array()) throw ConfigError("points", "expected an array");
    for (std::size_t k = 0; k < doc["points"].size(); ++k)
      cfg.points.push_back(complex_value(doc["points"][k], "points[" + std::to_string(k) + "]"));
  }

  if (doc.contains("output")) {
    const Json& o = doc["output"];
    allow_keys(o, "output", {"mesh", "report", "format"});
    if (o.contains("format")) {
      const std::string f = string(o["format"], "output.format");
      if (f != "obj" && f != "ply") throw ConfigError("output.format", "expected obj or ply");
      cfg.format = format_from_string(f);
    }
    if (o.contains("mesh")) cfg.mesh_path = string(o["mesh"], "output.mesh");
    if (o.contains("report")) cfg.report_path = string(o["report"], "output.report");
  }
  if (!cfg.mesh_path.empty() && cfg.report_path.empty()) {
    std::filesystem::path p(cfg.mesh_path);
    cfg.report_path = p.replace_extension(".json").string();
  }
  return cfg;
}

}  // namespace isoflect::cli
