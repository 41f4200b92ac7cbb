#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "isoflect/motion.hpp"
#include "isoflect/surface.hpp"

namespace isoflect {

enum VertexFlag : std::uint8_t {
  kInterior = 0,
  kBoundary = 1 << 0,
  kIsotropicSeam = 1 << 1,
  kSingular = 1 << 2,
};

struct Mesh {
  std::vector<Point3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
  std::vector<std::uint8_t> flags;  // VertexFlag bits, one per vertex
  std::vector<Complex> params;      // chart parameter per vertex (may be empty)
  std::optional<MotionI3> motion;   // set on orbit copies

  /// Index ranges, flag count and parameter-space triangle areas. Throws ValidationError.
  void validate() const;
  /// Image under a motion; anti-conformal motions reverse the winding so the
  /// copy is consistently oriented with the seed across a reflection seam.
  Mesh transformed(const MotionI3& m) const;
  std::pair<Point3, Point3> bounding_box() const;
  double bbox_diagonal() const;
};

/// Bounds of a parameter grid. For half-plane and blow-up charts (u, v) are
/// (r, theta) when `polar` is set (always for blow-up strips), otherwise
/// (Re w, Im w). Disk grids ignore the bounds and cover |w| <= 1 - disk_margin.
struct GridBounds {
  double u0 = 0.0, u1 = 1.0;
  double v0 = 0.0, v1 = 1.0;
  bool polar = false;
  double disk_margin = 1e-4;
};

/// Structured resolution x resolution grid, row-major in v.
struct ParameterGrid {
  ChartKind chart = ChartKind::Plane;
  int nu = 0, nv = 0;
  std::vector<Complex> nodes;  // chart parameters (r + i theta on strips)
  std::vector<std::uint8_t> flags;

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nu + i; }
};

/// Throws Error for resolution < 2 or empty bounds. Blow-up grids spanning
/// r = 0 contain the seam r = 0 exactly.
ParameterGrid sample_grid(ChartKind chart, int resolution, const GridBounds& bounds);

/// Two triangles per grid quad; vertices evaluated in parallel. `metric`
/// (optional) marks vertices with metric factor < 1e-10 as singular.
Mesh build_mesh(const SurfaceMap& surface, const ParameterGrid& grid,
                const std::function<double(Complex)>& metric = {});

struct HarmonicityReport {
  double max_residual = 0.0;
  double bbox_diagonal = 0.0;
  std::size_t samples = 0;
  bool passed(double rel_tol = 1e-5) const { return max_residual <= rel_tol * bbox_diagonal; }
};

/// Finite-difference Laplacian residual at interior grid nodes of a mesh
/// built from `surface`. Off blow-up strips the Laplacian is taken in the
/// coordinate rescaled by the local grid spacing s (step h s, residual times
/// s^2); on strips the operator of laplacian_residual is used with step h.
HarmonicityReport harmonicity_report(const SurfaceMap& surface, const ParameterGrid& grid,
                                     const Mesh& mesh, double h = 1e-3);

/// Merges vertices closer than tol (world units) across all meshes.
Mesh weld(const std::vector<Mesh>& meshes, double tol = 1e-9);

/// Number of interior edges whose two triangles traverse them in the same direction.
std::size_t orientation_defects(const Mesh& mesh);

enum class MeshFormat { Obj, Ply };

MeshFormat format_from_string(const std::string& name);

/// OBJ: "v x y t" lines (17 significant digits) then "f i j k" (1-based).
/// PLY: binary little-endian, float64 x/y/z, uchar flags, uint index lists.
void export_mesh(const Mesh& mesh, MeshFormat format, const std::filesystem::path& path);
Mesh import_obj(const std::filesystem::path& path);
Mesh import_ply(const std::filesystem::path& path);

}  // namespace isoflect
