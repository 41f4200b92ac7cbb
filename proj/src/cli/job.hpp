#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "isoflect/mesh.hpp"
#include "isoflect/motion.hpp"
#include "isoflect/weierstrass.hpp"

namespace isoflect::cli {

using Json = nlohmann::json;

/// Invalid job configuration; `field` is a dotted path into the config.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& msg)
      : Error(field + ": " + msg), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class SourceKind { Preset, Weierstrass, HarmonicPair };

struct ArcSpec {
  std::string kind = "line";  // line | circle | analytic
  Complex point{}, direction{1.0, 0.0};
  Complex center{};
  double radius = 1.0;
  std::string gamma;
  double s0 = -1.0, s1 = 1.0;
};

struct ReflectSpec {
  std::string kind = "isotropic";  // isotropic | horizontal
  std::optional<ArcSpec> arc;
  // horizontal
  double height = 0.0;
  double piece_from = 0.0, piece_to = 1.0;
  // isotropic
  double jump = 0.0;
  double a = 1.0, b = 0.0;
  int midpoint = 1;  // Schwarz-D patch: index k of w_k
};

struct Tolerances {
  double quad = 1e-10;
  double harmonic = 1e-5;
  double conformal = 1e-6;
  double height = 1e-6;
  double straightness = 1e-8;
  double seam = 1e-9;
};

struct JobConfig {
  SourceKind source = SourceKind::Preset;
  std::string preset = "helicoid";  // helicoid | isotropic-catenoid | schwarz-d
  int n = 2;
  double c = 0.0;
  WeierstrassData data;
  std::string h_expr, t_expr;
  ChartKind chart = ChartKind::HalfPlane;

  int resolution = 33;
  GridBounds bounds;

  std::optional<ReflectSpec> reflect;
  int depth = 1;
  std::vector<MotionI3> generators;
  std::vector<Complex> points;

  std::string mesh_path;
  std::string report_path;
  MeshFormat format = MeshFormat::Obj;
  Tolerances tol;

  Json effective;  // merged configuration document
  std::string hash;  // 16 hex digits of FNV-1a over the document without "output"
};

/// Command-line overrides applied on top of a config document.
struct Overrides {
  std::optional<std::string> preset;
  std::optional<int> n;
  std::optional<int> depth;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<double> tol;
};

Json load_config_file(const std::string& path);
Json apply_overrides(Json doc, const Overrides& o);
/// Validates and resolves defaults. Throws ConfigError naming the field.
JobConfig parse_config(const Json& doc);

std::string fnv1a_hex(const std::string& text);

}  // namespace isoflect::cli
