#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "isoflect/weierstrass.hpp"

using namespace isoflect;

namespace {
const Complex I{0.0, 1.0};
bool near(const Point3& a, const Point3& b, double tol) { return distance(a, b) <= tol; }
}  // namespace

TEST_CASE("helicoid values") {
  const WeierstrassData d = helicoid_data();
  CHECK(near(evaluate_family(d, I), {0.0, 1.0, 0.5}, 1e-10));
  const double s = std::sqrt(2.0);
  CHECK(near(evaluate_family(d, std::polar(2.0, kPi / 4)), {s, s, 0.25}, 1e-10));
  CHECK(near(evaluate_family(d, d.basepoint), {1.0, 0.0, 0.0}, 0.0));
}

TEST_CASE("empty integral at the base point") {
  WeierstrassData d;
  d.F = parse("exp(w)");
  d.G = parse("w^2");
  d.basepoint = Complex{0.5, 0.5};
  d.chart = ChartKind::Plane;
  CHECK(near(evaluate_family(d, d.basepoint), {0.0, 0.0, 0.0}, 0.0));
}

TEST_CASE("helicoid matches its closed form") {
  const SurfaceMap s = make_surface(helicoid_data());
  const SurfaceMap exact = helicoid_closed_form();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> r(0.01, 3.0), th(0.01, kPi - 0.01);
  for (int k = 0; k < 100; ++k) {
    const Complex w = std::polar(r(rng), th(rng));
    CHECK(near(s(w), exact(w), 1e-8));
  }
}

TEST_CASE("conjugate of the helicoid is the isotropic catenoid") {
  const SurfaceMap s = make_surface(conjugate(helicoid_data()));
  for (double r : {0.1, 1.0, 2.5})
    for (double th : {0.2, 1.3, 2.9}) {
      const Complex w = std::polar(r, th);
      CHECK(near(s(w), {r * std::sin(th), -r * std::cos(th), std::log(r) / kPi}, 1e-8));
    }
}

TEST_CASE("double conjugation negates the surface") {
  const WeierstrassData d = helicoid_data();
  const WeierstrassData dd = conjugate(conjugate(d));
  CHECK(dd.planar_sign == d.planar_sign);
  const Complex w0 = d.basepoint;
  CHECK(std::abs(dd.F(w0) + d.F(w0)) == 0.0);
  const double t0 = evaluate_family(d, w0).t;
  for (Complex w : {Complex{0.3, 0.4}, Complex{-1.5, 0.2}, Complex{2.0, 2.0}}) {
    const Point3 x = evaluate_family(d, w), y = evaluate_family(dd, w);
    CHECK(near(y, Point3{-x.x, -x.y, t0 - x.t}, 1e-9));
  }
}

TEST_CASE("flat plane and its conjugate") {
  WeierstrassData d;
  d.F = parse("1");
  d.G = parse("0");
  d.chart = ChartKind::Plane;
  d.basepoint = 0.0;
  const Complex w{0.7, -0.4};
  CHECK(near(evaluate_family(d, w), {0.7, -0.4, 0.0}, 1e-13));
  const Point3 c = evaluate_family(conjugate(d), w);
  const Complex rotated = Complex{c.x, c.y};
  CHECK(std::abs(std::abs(rotated) - std::abs(w)) <= 1e-13);
  CHECK(std::abs(std::real(rotated * std::conj(w))) <= 1e-13);
  CHECK(c.t == doctest::Approx(0.0));
}

TEST_CASE("deformation family components") {
  WeierstrassData d = helicoid_data();
  const Complex w{0.4, 0.9};
  const Complex G = d.G(w);
  for (double c : {-1.0, 0.0, 1.0}) {
    d.c = c;
    const auto v = family_integrand(d, w);
    CHECK(std::abs(v[0] - (1.0 - c * G * G)) <= 1e-14);
    CHECK(std::abs(v[1] - (-I * (1.0 + c * G * G))) <= 1e-14);
    CHECK(std::abs(v[2] - 2.0 * G) <= 1e-14);
  }
}

TEST_CASE("harmonic coordinates for every c") {
  WeierstrassData d = helicoid_data();
  for (double c : {-1.0, 1.0}) {
    d.c = c;
    const SurfaceMap s = make_surface(d);
    for (Complex w : {Complex{0.5, 0.8}, Complex{-1.2, 0.6}}) CHECK(laplacian_residual(s, w, 1e-3) <= 1e-5);
  }
}

TEST_CASE("graph equations at the deformation endpoints") {
  WeierstrassData d = conjugate(helicoid_data());
  for (double c : {-1.0, 1.0}) {
    d.c = c;
    for (Complex w : {Complex{0.3, 1.1}, Complex{1.6, 0.9}, Complex{-0.8, 0.5}})
      CHECK(graph_pde_residual(d, w, 1e-3) <= 1e-4);
  }
}

TEST_CASE("metric factor and branch points") {
  CHECK(metric_factor(helicoid_data(), Complex{0.3, 0.7}) == doctest::Approx(1.0));
  WeierstrassData d;
  d.F = parse("w");
  d.chart = ChartKind::Plane;
  d.basepoint = 1.0;
  CHECK(metric_factor(d, 2.0 * I) == doctest::Approx(4.0));

  const Rect square{-1.0, 1.0, -1.0, 1.0};
  CHECK(singular_points(helicoid_data(), square, 32).empty());
  const auto zero = singular_points(d, square, 32);
  REQUIRE(zero.size() == 1);
  CHECK(std::abs(zero[0]) <= 1e-10);

  d.F = parse("w^2-1/4");
  auto roots = singular_points(d, square, 32);
  REQUIRE(roots.size() == 2);
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(std::abs(roots[0] + 0.5) <= 1e-8);
  CHECK(std::abs(roots[1] - 0.5) <= 1e-8);
}

TEST_CASE("harmonic pair charts") {
  const SurfaceMap flat = from_harmonic_pair([](Complex w) { return w; }, [](Complex) { return 0.0; }, ChartKind::Plane);
  CHECK(near(flat(Complex{1.0, 2.0}), {1.0, 2.0, 0.0}, 0.0));
  const SurfaceMap heli = from_harmonic_pair([](Complex w) { return w; },
                                             [](Complex w) { return std::arg(w) / kPi; }, ChartKind::HalfPlane);
  const Complex w = std::polar(1.5, 1.0);
  CHECK(near(heli(w), helicoid_closed_form()(w), 1e-15));
  CHECK_THROWS_AS(heli(Complex{0.0, -1.0}), DomainError);
}

TEST_CASE("validation") {
  WeierstrassData d = helicoid_data();
  CHECK_NOTHROW(d.validate());
  d.basepoint = Complex{0.0, -1.0};
  CHECK_THROWS_AS(d.validate(), ValidationError);
  d = helicoid_data();
  d.F = parse("conj(w)");
  CHECK_THROWS_AS(d.validate(), ValidationError);
  d = helicoid_data();
  d.basepoint = 0.0;
  CHECK_THROWS_AS(d.validate(), ValidationError);
}
