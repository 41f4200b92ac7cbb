#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "isoflect/expr.hpp"
#include "isoflect/types.hpp"

namespace isoflect {

/// One piece of an integration contour, parameterised over s in [0, 1].
struct PathSegment {
  enum class Kind { Line, Arc };
  Kind kind = Kind::Line;
  Complex a{}, b{};             // line endpoints
  Complex center{};             // arc
  double radius = 0.0;
  double angle0 = 0.0, angle1 = 0.0;

  static PathSegment line(Complex from, Complex to);
  static PathSegment arc(Complex center, double radius, double from_angle, double to_angle);

  Complex point(double s) const;
  Complex derivative(double s) const;
  Complex start() const { return point(0.0); }
  Complex end() const { return point(1.0); }
  PathSegment reversed() const;
  /// Smallest distance from z to the segment and the parameter where it is attained.
  std::pair<double, double> distance_to(Complex z) const;
};

class PathInC {
 public:
  PathInC() = default;
  explicit PathInC(std::vector<PathSegment> segments);
  static PathInC line(Complex from, Complex to) { return PathInC({PathSegment::line(from, to)}); }
  static PathInC circle(Complex center, double radius) {
    return PathInC({PathSegment::arc(center, radius, 0.0, 2.0 * kPi)});
  }

  /// Appends a segment; throws if it does not start where the path ends.
  void append(const PathSegment& seg);
  PathInC reversed() const;
  bool empty() const { return segments_.empty(); }
  Complex start() const { return segments_.front().start(); }
  Complex end() const { return segments_.back().end(); }
  const std::vector<PathSegment>& segments() const { return segments_; }

 private:
  std::vector<PathSegment> segments_;
};

struct QuadOptions {
  double tol = 1e-10;          // absolute
  int max_panels = 1 << 14;
  double exclusion_radius = 1e-3;
  std::vector<Complex> singularities;
};

/// Integrand producing `out.size()` components at once.
using VectorIntegrand = std::function<void(Complex z, std::span<Complex> out)>;

/// Adaptive Gauss-Kronrod (10/21) integration of all components along a path.
/// Throws QuadratureError when the panel budget runs out and DomainError if
/// the path passes within the exclusion radius of a declared singularity
/// anywhere other than at its own endpoints.
void integrate_vector(const VectorIntegrand& f, std::size_t dims, const PathInC& path,
                      const QuadOptions& opts, std::span<Complex> result);

Complex integrate_along(const std::function<Complex(Complex)>& f, const PathInC& path,
                        const QuadOptions& opts = {});
Complex integrate_along(const Expr& f, const PathInC& path, const QuadOptions& opts = {});

/// Straight segment w0 -> w, detouring on circular arcs of radius
/// `exclusion` around singularities it would pass near. The detour keeps the
/// homotopy class of the straight segment in the punctured plane. Endpoints
/// inside an exclusion disk are reached radially.
PathInC route(Complex w0, Complex w, std::span<const Complex> singularities, double exclusion);

Complex integrate_from_basepoint(const Expr& f, Complex w0, Complex w,
                                 std::span<const Complex> singularities, double tol = 1e-10);

/// Thread-safe memo of primitive values keyed on (integrand hash, endpoint).
class PrimitiveCache {
 public:
  template <class Compute>
  std::array<Complex, 3> get_or_compute(std::size_t integrand_hash, Complex w, Compute&& compute) {
    const Key key{integrand_hash, w.real(), w.imag()};
    {
      std::shared_lock lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    auto value = compute();
    std::unique_lock lock(mutex_);
    map_.emplace(key, value);
    return value;
  }
  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

 private:
  struct Key {
    std::size_t hash;
    double re, im;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  mutable std::shared_mutex mutex_;
  std::unordered_map<Key, std::array<Complex, 3>, KeyHash> map_;
};

}  // namespace isoflect
