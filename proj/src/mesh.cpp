#include "isoflect/mesh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "isoflect/parallel.hpp"

namespace isoflect {

namespace {

double param_area(Complex a, Complex b, Complex c) {
  return 0.5 * std::abs(((b - a) * std::conj(c - a)).imag());
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    out[static_cast<std::size_t>(k)] = k == n - 1 ? hi : lo + (hi - lo) * k / (n - 1);
  return out;
}

// n nodes on [lo, hi] with 0 included exactly when lo < 0 < hi.
std::vector<double> axis_with_zero(double lo, double hi, int n) {
  if (!(lo < 0.0 && hi > 0.0) || n < 3) return linspace(lo, hi, n);
  int neg = static_cast<int>(std::lround((n - 1) * (-lo) / (hi - lo)));
  neg = std::clamp(neg, 1, n - 2);
  std::vector<double> out = linspace(lo, 0.0, neg + 1);
  const std::vector<double> pos = linspace(0.0, hi, n - neg);
  out.back() = 0.0;
  out.insert(out.end(), pos.begin() + 1, pos.end());
  return out;
}

template <class T>
void write_le(std::ostream& os, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  os.write(bytes, sizeof(T));
}

template <class T>
T read_le(std::istream& is) {
  char bytes[sizeof(T)];
  if (!is.read(bytes, sizeof(T))) throw Error("unexpected end of PLY data");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void Mesh::validate() const {
  if (flags.size() != vertices.size()) throw ValidationError("mesh flag count differs from vertex count");
  if (!params.empty() && params.size() != vertices.size())
    throw ValidationError("mesh parameter count differs from vertex count");
  for (const auto& tri : triangles) {
    for (auto idx : tri)
      if (idx >= vertices.size()) throw ValidationError("triangle index out of range");
    if (!params.empty() && param_area(params[tri[0]], params[tri[1]], params[tri[2]]) <= 1e-12)
      throw ValidationError("degenerate triangle in parameter space");
  }
}

Mesh Mesh::transformed(const MotionI3& m) const {
  Mesh out = *this;
  for (auto& v : out.vertices) v = m.apply(v);
  if (m.anti)
    for (auto& tri : out.triangles) std::swap(tri[1], tri[2]);
  out.motion = motion ? m.after(*motion) : m;
  return out;
}

std::pair<Point3, Point3> Mesh::bounding_box() const {
  if (vertices.empty()) return {};
  Point3 lo = vertices.front(), hi = vertices.front();
  for (const auto& v : vertices) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.t, v.t)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.t, v.t)};
  }
  return {lo, hi};
}

double Mesh::bbox_diagonal() const {
  const auto [lo, hi] = bounding_box();
  return distance(lo, hi);
}

ParameterGrid sample_grid(ChartKind chart, int resolution, const GridBounds& b) {
  if (resolution < 2) throw Error("grid resolution must be >= 2");
  ParameterGrid g;
  g.chart = chart;
  g.nu = g.nv = resolution;
  g.nodes.resize(static_cast<std::size_t>(resolution) * resolution);
  g.flags.assign(g.nodes.size(), kInterior);
  if (chart != ChartKind::Disk && !(b.u1 > b.u0 && b.v1 > b.v0)) throw Error("grid bounds are empty");
  if (chart == ChartKind::Disk && !(b.disk_margin >= 0.0 && b.disk_margin < 1.0))
    throw Error("disk margin must lie in [0, 1)");

  const std::vector<double> us = chart == ChartKind::BlowUpStrip
                                     ? axis_with_zero(b.u0, b.u1, resolution)
                                     : linspace(b.u0, b.u1, resolution);
  const std::vector<double> vs = linspace(b.v0, b.v1, resolution);
  const std::vector<double> unit = linspace(-1.0, 1.0, resolution);
  for (int j = 0; j < resolution; ++j)
    for (int i = 0; i < resolution; ++i) {
      const double u = us[static_cast<std::size_t>(i)], v = vs[static_cast<std::size_t>(j)];
      Complex p;
      switch (chart) {
        case ChartKind::BlowUpStrip: p = {u, v}; break;
        case ChartKind::Disk: {
          const double a = unit[static_cast<std::size_t>(i)], c = unit[static_cast<std::size_t>(j)];
          p = (1.0 - b.disk_margin) * Complex{a * std::sqrt(1.0 - 0.5 * c * c), c * std::sqrt(1.0 - 0.5 * a * a)};
          break;
        }
        default: p = b.polar ? blow_up_point(u, v) : Complex{u, v}; break;
      }
      const std::size_t k = g.index(i, j);
      g.nodes[k] = p;
      if (i == 0 || j == 0 || i == resolution - 1 || j == resolution - 1) g.flags[k] |= kBoundary;
      if (chart == ChartKind::BlowUpStrip && u == 0.0) g.flags[k] |= kIsotropicSeam;
    }
  return g;
}

Mesh build_mesh(const SurfaceMap& surface, const ParameterGrid& grid,
                const std::function<double(Complex)>& metric) {
  Mesh mesh;
  const std::size_t n = grid.nodes.size();
  mesh.vertices.resize(n);
  mesh.flags = grid.flags;
  mesh.params = grid.nodes;
  parallel_for(n, [&](std::size_t k) {
    const Complex p = grid.nodes[k];
    try {
      mesh.vertices[k] = surface(p);
      if (metric && metric(surface.conformal_point(p)) < 1e-10) mesh.flags[k] |= kSingular;
    } catch (const std::exception& e) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "evaluation failed at grid node (%.17g, %.17g): ", p.real(), p.imag());
      throw Error(buf + std::string(e.what()));
    }
  });
  for (int j = 0; j + 1 < grid.nv; ++j)
    for (int i = 0; i + 1 < grid.nu; ++i) {
      const auto a = static_cast<std::uint32_t>(grid.index(i, j));
      const auto b = static_cast<std::uint32_t>(grid.index(i + 1, j));
      const auto c = static_cast<std::uint32_t>(grid.index(i + 1, j + 1));
      const auto d = static_cast<std::uint32_t>(grid.index(i, j + 1));
      for (const auto& tri : {std::array<std::uint32_t, 3>{a, b, c}, std::array<std::uint32_t, 3>{a, c, d}})
        if (param_area(grid.nodes[tri[0]], grid.nodes[tri[1]], grid.nodes[tri[2]]) > 1e-12)
          mesh.triangles.push_back(tri);
    }
  return mesh;
}

HarmonicityReport harmonicity_report(const SurfaceMap& surface, const ParameterGrid& grid,
                                     const Mesh& mesh, double h) {
  HarmonicityReport rep;
  rep.bbox_diagonal = mesh.bbox_diagonal();
  std::vector<double> residual(grid.nodes.size(), 0.0);
  std::vector<char> used(grid.nodes.size(), 0);
  parallel_for(grid.nodes.size(), [&](std::size_t k) {
    if (grid.flags[k] & kBoundary) return;
    if (grid.chart == ChartKind::BlowUpStrip) {
      residual[k] = laplacian_residual(surface, grid.nodes[k], h);
    } else {
      // Laplacian in the rescaled coordinate zeta with w = w_k + s zeta, s the local grid spacing.
      const int i = static_cast<int>(k % static_cast<std::size_t>(grid.nu));
      const int j = static_cast<int>(k / static_cast<std::size_t>(grid.nu));
      double s = 1.0;
      for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}})
        s = std::min(s, std::abs(grid.nodes[grid.index(i + di, j + dj)] - grid.nodes[k]));
      residual[k] = s * s * laplacian_residual(surface, grid.nodes[k], h * s);
    }
    used[k] = 1;
  });
  for (std::size_t k = 0; k < residual.size(); ++k) {
    rep.max_residual = std::max(rep.max_residual, residual[k]);
    rep.samples += static_cast<std::size_t>(used[k]);
  }
  return rep;
}

Mesh weld(const std::vector<Mesh>& meshes, double tol) {
  struct CellHash {
    std::size_t operator()(const std::array<std::int64_t, 3>& c) const {
      std::size_t h = 1469598103934665603ULL;
      for (auto v : c) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
      return h;
    }
  };
  const double cell = std::max(tol, 1e-15);
  std::unordered_map<std::array<std::int64_t, 3>, std::vector<std::uint32_t>, CellHash> grid;
  Mesh out;
  auto key = [&](const Point3& p) {
    return std::array<std::int64_t, 3>{std::llround(std::floor(p.x / cell)), std::llround(std::floor(p.y / cell)),
                                       std::llround(std::floor(p.t / cell))};
  };
  for (const auto& m : meshes) {
    std::vector<std::uint32_t> remap(m.vertices.size());
    for (std::size_t v = 0; v < m.vertices.size(); ++v) {
      const Point3& p = m.vertices[v];
      const auto k = key(p);
      std::optional<std::uint32_t> found;
      for (int dx = -1; dx <= 1 && !found; ++dx)
        for (int dy = -1; dy <= 1 && !found; ++dy)
          for (int dz = -1; dz <= 1 && !found; ++dz) {
            auto it = grid.find({k[0] + dx, k[1] + dy, k[2] + dz});
            if (it == grid.end()) continue;
            for (auto idx : it->second)
              if (distance(out.vertices[idx], p) <= tol) {
                found = idx;
                break;
              }
          }
      if (found) {
        remap[v] = *found;
        out.flags[*found] |= m.flags[v];
      } else {
        const auto idx = static_cast<std::uint32_t>(out.vertices.size());
        out.vertices.push_back(p);
        out.flags.push_back(m.flags[v]);
        grid[k].push_back(idx);
        remap[v] = idx;
      }
    }
    for (const auto& tri : m.triangles) {
      const std::array<std::uint32_t, 3> t{remap[tri[0]], remap[tri[1]], remap[tri[2]]};
      if (t[0] != t[1] && t[1] != t[2] && t[0] != t[2]) out.triangles.push_back(t);
    }
  }
  return out;
}

std::size_t orientation_defects(const Mesh& mesh) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<int, int>> edges;  // forward, backward
  for (const auto& tri : mesh.triangles)
    for (int e = 0; e < 3; ++e) {
      const std::uint32_t a = tri[static_cast<std::size_t>(e)], b = tri[static_cast<std::size_t>((e + 1) % 3)];
      auto& slot = edges[{std::min(a, b), std::max(a, b)}];
      (a < b ? slot.first : slot.second)++;
    }
  std::size_t defects = 0;
  for (const auto& [edge, count] : edges)
    if (count.first > 1 || count.second > 1) ++defects;
  return defects;
}

MeshFormat format_from_string(const std::string& name) {
  if (name == "obj") return MeshFormat::Obj;
  if (name == "ply") return MeshFormat::Ply;
  throw Error("unknown mesh format '" + name + "' (expected obj or ply)");
}

void export_mesh(const Mesh& mesh, MeshFormat format, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  if (format == MeshFormat::Obj) {
    char buf[128];
    for (const auto& v : mesh.vertices) {
      std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x, v.y, v.t);
      os << buf;
    }
    for (const auto& t : mesh.triangles) os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  } else {
    os << "ply\nformat binary_little_endian 1.0\ncomment isoflect mesh, z holds the isotropic height t\n"
       << "element vertex " << mesh.vertices.size() << "\n"
       << "property double x\nproperty double y\nproperty double z\nproperty uchar flags\n"
       << "element face " << mesh.triangles.size() << "\n"
       << "property list uchar uint vertex_indices\nend_header\n";
    for (std::size_t k = 0; k < mesh.vertices.size(); ++k) {
      write_le(os, mesh.vertices[k].x);
      write_le(os, mesh.vertices[k].y);
      write_le(os, mesh.vertices[k].t);
      write_le(os, mesh.flags.empty() ? std::uint8_t{0} : mesh.flags[k]);
    }
    for (const auto& t : mesh.triangles) {
      write_le(os, std::uint8_t{3});
      for (auto idx : t) write_le(os, idx);
    }
  }
  if (!os) throw Error("failed writing " + path.string());
}

Mesh import_obj(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path.string());
  Mesh mesh;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      std::string sx, sy, st;
      ls >> sx >> sy >> st;
      mesh.vertices.push_back({std::stod(sx), std::stod(sy), std::stod(st)});
      mesh.flags.push_back(kInterior);
    } else if (tag == "f") {
      std::array<std::uint32_t, 3> t{};
      for (auto& idx : t) {
        long v = 0;
        ls >> v;
        if (v < 1) throw Error("malformed OBJ face");
        idx = static_cast<std::uint32_t>(v - 1);
      }
      mesh.triangles.push_back(t);
    }
  }
  return mesh;
}

Mesh import_ply(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path.string());
  std::string line;
  std::size_t nv = 0, nf = 0;
  while (std::getline(is, line)) {
    if (line.rfind("element vertex ", 0) == 0) nv = std::stoul(line.substr(15));
    if (line.rfind("element face ", 0) == 0) nf = std::stoul(line.substr(13));
    if (line == "end_header") break;
  }
  Mesh mesh;
  for (std::size_t k = 0; k < nv; ++k) {
    Point3 p;
    p.x = read_le<double>(is);
    p.y = read_le<double>(is);
    p.t = read_le<double>(is);
    mesh.vertices.push_back(p);
    mesh.flags.push_back(read_le<std::uint8_t>(is));
  }
  for (std::size_t k = 0; k < nf; ++k) {
    if (read_le<std::uint8_t>(is) != 3) throw Error("PLY face is not a triangle");
    std::array<std::uint32_t, 3> t{};
    for (auto& idx : t) idx = read_le<std::uint32_t>(is);
    mesh.triangles.push_back(t);
  }
  return mesh;
}

}  // namespace isoflect
