#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "isoflect/mesh.hpp"
#include "isoflect/reflect.hpp"
#include "isoflect/weierstrass.hpp"

using namespace isoflect;
namespace fs = std::filesystem;

namespace {
SurfaceMap flat() {
  return from_harmonic_pair([](Complex w) { return w; }, [](Complex) { return 0.0; }, ChartKind::Plane);
}

Mesh single_triangle() {
  Mesh m;
  m.vertices = {{0.1, 0.2, 0.3}, {1.0 / 3.0, 2.0, -0.5}, {std::sqrt(2.0), -1e-300, 7.0}};
  m.triangles = {{0, 1, 2}};
  m.flags = {kInterior, kBoundary, kSingular};
  return m;
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("isoflect_test_" + name); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("grid construction") {
  const ParameterGrid polar = sample_grid(ChartKind::HalfPlane, 4, {0.5, 2.0, kPi / 8, 7 * kPi / 8, true});
  CHECK(polar.nodes.size() == 16);
  CHECK(std::abs(polar.nodes[0] - std::polar(0.5, kPi / 8)) <= 1e-15);

  const ParameterGrid strip = sample_grid(ChartKind::BlowUpStrip, 4, {-1.0, 1.0, 0.1, 3.0});
  int seam = 0;
  for (std::size_t k = 0; k < strip.nodes.size(); ++k)
    if (strip.nodes[k].real() == 0.0) {
      ++seam;
      CHECK((strip.flags[k] & kIsotropicSeam) != 0);
    }
  CHECK(seam == 4);

  const ParameterGrid disk = sample_grid(ChartKind::Disk, 17, {});
  double radius = 0.0;
  for (const Complex& w : disk.nodes) radius = std::max(radius, std::abs(w));
  CHECK(radius <= 1.0 - 1e-4 + 1e-15);
  CHECK(radius >= 1.0 - 2e-4);

  CHECK_THROWS_AS(sample_grid(ChartKind::Plane, 1, {}), Error);
  CHECK_THROWS_AS(sample_grid(ChartKind::Plane, 3, {1.0, 1.0, 0.0, 1.0}), Error);
}

TEST_CASE("triangulation") {
  const Mesh m = build_mesh(flat(), sample_grid(ChartKind::Plane, 2, {}));
  CHECK(m.vertices.size() == 4);
  CHECK(m.triangles.size() == 2);
  CHECK_NOTHROW(m.validate());
  const Mesh big = build_mesh(flat(), sample_grid(ChartKind::Plane, 5, {}));
  CHECK(big.triangles.size() == 32);
  CHECK(orientation_defects(big) == 0);
}

TEST_CASE("helicoid blow-up mesh") {
  const SurfaceMap heli = make_surface(helicoid_data());
  const SurfaceMap ext = extend_isotropic(heli, {0.0, 1.0, 0.0, ChartKind::HalfPlane}, ArcChart::line(0.0, 1.0));
  const ParameterGrid grid = sample_grid(ChartKind::BlowUpStrip, 9, {-2.0, 2.0, 0.1, kPi - 0.1});
  const Mesh m = build_mesh(ext, grid);
  for (std::size_t k = 0; k < grid.nodes.size(); ++k)
    if (grid.flags[k] & kIsotropicSeam) {
      const double th = grid.nodes[k].imag();
      CHECK(distance(m.vertices[k], {0.0, 0.0, th / kPi}) <= 1e-12);
    }
  const HarmonicityReport rep = harmonicity_report(ext, grid, m);
  CHECK(rep.samples == 49);
  CHECK(rep.passed(1e-5));
}

TEST_CASE("harmonicity report flags non-harmonic maps") {
  const SurfaceMap bad(ChartKind::Plane, Provenance::ClosedForm,
                       [](Complex w) { return Point3{w.real(), w.imag(), std::norm(w)}; });
  const ParameterGrid grid = sample_grid(ChartKind::Plane, 9, {});
  CHECK_FALSE(harmonicity_report(bad, grid, build_mesh(bad, grid)).passed(1e-5));
}

TEST_CASE("singular vertices") {
  WeierstrassData d;
  d.F = parse("w");
  d.G = parse("1");
  d.chart = ChartKind::Plane;
  d.basepoint = 1.0;
  const ParameterGrid grid = sample_grid(ChartKind::Plane, 3, {-1.0, 1.0, -1.0, 1.0});
  const Mesh m = build_mesh(make_surface(d), grid, [d](Complex w) { return metric_factor(d, w); });
  CHECK((m.flags[4] & kSingular) != 0);
  CHECK((m.flags[0] & kSingular) == 0);
}

TEST_CASE("OBJ export and import") {
  const Mesh m = single_triangle();
  const fs::path path = temp_file("one.obj");
  export_mesh(m, MeshFormat::Obj, path);
  const std::string text = slurp(path);
  int v = 0, f = 0;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    v += line.rfind("v ", 0) == 0;
    f += line.rfind("f ", 0) == 0;
  }
  CHECK(v == 3);
  CHECK(f == 1);
  const Mesh back = import_obj(path);
  REQUIRE(back.vertices.size() == 3);
  for (int k = 0; k < 3; ++k) CHECK(back.vertices[static_cast<std::size_t>(k)] == m.vertices[static_cast<std::size_t>(k)]);
  CHECK(back.triangles == m.triangles);
  fs::remove(path);
}

TEST_CASE("PLY export and import") {
  const Mesh m = build_mesh(make_surface(helicoid_data()), sample_grid(ChartKind::HalfPlane, 6, {0.2, 2.0, 0.2, 2.9, true}));
  const fs::path path = temp_file("grid.ply");
  export_mesh(m, MeshFormat::Ply, path);
  const std::string text = slurp(path);
  CHECK(text.rfind("ply\nformat binary_little_endian 1.0\n", 0) == 0);
  CHECK(text.find("element vertex 36\n") != std::string::npos);
  CHECK(text.find("element face 50\n") != std::string::npos);
  const Mesh back = import_ply(path);
  CHECK(back.vertices == m.vertices);
  CHECK(back.triangles == m.triangles);
  CHECK(back.flags == m.flags);
  fs::remove(path);
  CHECK(format_from_string("ply") == MeshFormat::Ply);
  CHECK_THROWS(format_from_string("stl"));
}

TEST_CASE("motions and welding") {
  const Mesh seed = build_mesh(flat(), sample_grid(ChartKind::Plane, 3, {0.0, 1.0, 0.0, 1.0}));
  const MotionI3 mirror = MotionI3::line_reflection(0.0, Complex{0.0, 1.0});
  const Mesh copy = seed.transformed(mirror);
  CHECK(copy.motion.has_value());
  const Mesh merged = weld({seed, copy});
  CHECK(merged.vertices.size() == 2 * seed.vertices.size() - 3);
  CHECK(merged.triangles.size() == 2 * seed.triangles.size());
  CHECK(orientation_defects(merged) == 0);

  Mesh flipped = copy;
  for (auto& t : flipped.triangles) std::swap(t[1], t[2]);
  CHECK(orientation_defects(weld({seed, flipped})) > 0);

  const auto [lo, hi] = merged.bounding_box();
  CHECK(lo == Point3{-1.0, 0.0, 0.0});
  CHECK(hi == Point3{1.0, 1.0, 0.0});
  CHECK(merged.bbox_diagonal() == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("validation catches bad indices") {
  Mesh m = single_triangle();
  m.triangles[0][2] = 7;
  CHECK_THROWS_AS(m.validate(), ValidationError);
}
