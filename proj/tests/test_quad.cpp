#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "isoflect/quad.hpp"

using namespace isoflect;

namespace {
const Complex I{0.0, 1.0};
bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }
}  // namespace

TEST_CASE("elementary line integrals") {
  CHECK(near(integrate_along(parse("1"), PathInC::line(0.0, 1.0)), 1.0, 1e-14));
  CHECK(near(integrate_along(parse("2*w"), PathInC::line(1.0, I)), -2.0, 1e-13));
  CHECK(near(integrate_from_basepoint(parse("1"), 0.0, 5.0 * I, {}), 5.0 * I, 1e-13));
}

TEST_CASE("residue on the unit circle") {
  CHECK(near(integrate_along(parse("1/w"), PathInC::circle(0.0, 1.0)), 2.0 * kPi * I, 1e-12));
  CHECK(near(integrate_along(parse("w^3"), PathInC::circle(0.0, 1.0)), 0.0, 1e-12));
}

TEST_CASE("helicoid height integrand along the detour") {
  const std::vector<Complex> poles{0.0};
  for (double theta : {0.3, kPi / 2, 2.5}) {
    const Complex v = integrate_from_basepoint(parse("1/(2*pi*i*w)"), 1.0, std::polar(1.0, theta), poles);
    CHECK(near(2.0 * v.real(), theta / kPi, 1e-10));
  }
}

TEST_CASE("path independence across two detours") {
  const Expr f = parse("(1-w^4)^(-1/2)");
  const Complex target{0.5, 0.5};
  QuadOptions opts;
  const Complex direct = integrate_along(f, PathInC::line(0.0, target), opts);
  PathInC bent({PathSegment::line(0.0, 0.5), PathSegment::line(0.5, target)});
  PathInC other({PathSegment::line(0.0, 0.5 * I), PathSegment::line(0.5 * I, target)});
  CHECK(near(integrate_along(f, bent, opts), direct, 2 * opts.tol));
  CHECK(near(integrate_along(f, other, opts), direct, 2 * opts.tol));
}

TEST_CASE("endpoint next to a logarithmic singularity") {
  for (double e : {1e-9, 1e-12, 1e-16, 1e-20}) {
    const Complex v = integrate_along(parse("1/w"), PathInC::line(1e-3, e));
    CHECK(near(v, std::log(e / 1e-3), 1e-12));
  }
}

TEST_CASE("routing avoids declared singularities") {
  const std::vector<Complex> poles{0.0};
  const PathInC path = route(-1.0, 1.0, poles, 0.1);
  for (const auto& seg : path.segments()) CHECK(seg.distance_to(0.0).first >= 0.1 - 1e-12);
  CHECK(near(path.start(), -1.0, 1e-15));
  CHECK(near(path.end(), 1.0, 1e-15));
  QuadOptions opts;
  opts.singularities = poles;
  CHECK_THROWS_AS(integrate_along(parse("1/w"), PathInC::line(-1.0, 1.0), opts), DomainError);
}

TEST_CASE("panel budget") {
  QuadOptions opts;
  opts.max_panels = 4;
  opts.tol = 1e-14;
  CHECK_THROWS_AS(integrate_along(parse("exp(30*i*w)"), PathInC::line(0.0, 10.0), opts), QuadratureError);
}

TEST_CASE("vector integrands share panels") {
  std::vector<Complex> out(2);
  integrate_vector(
      [](Complex z, std::span<Complex> r) {
        r[0] = 1.0;
        r[1] = z;
      },
      2, PathInC::line(0.0, 2.0), {}, out);
  CHECK(near(out[0], 2.0, 1e-14));
  CHECK(near(out[1], 2.0, 1e-14));
}

TEST_CASE("primitive cache memoises") {
  PrimitiveCache cache;
  int calls = 0;
  auto compute = [&] {
    ++calls;
    return std::array<Complex, 3>{1.0, 2.0, 3.0};
  };
  cache.get_or_compute(7, I, compute);
  cache.get_or_compute(7, I, compute);
  CHECK(calls == 1);
  CHECK(cache.size() == 1);
}
