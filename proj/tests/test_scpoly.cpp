#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>

#include "isoflect/scpoly.hpp"
#include "oracles.hpp"

using namespace isoflect;

namespace {
const Complex I{0.0, 1.0};

// int_0^1 (1 - x^4)^{-1/2} dx with x = 1 - u^2, which removes the endpoint singularity.
double half_diagonal_oracle() {
  return oracle::simpson(
      [](double u) {
        const double x = 1.0 - u * u;
        return 2.0 / std::sqrt((1.0 + x) * (1.0 + x * x));
      },
      0.0, 1.0, 1e-14);
}
}  // namespace

TEST_CASE("half-diagonal of the square") {
  const double oracle = half_diagonal_oracle();
  CHECK(oracle == doctest::Approx(std::pow(std::tgamma(0.25), 2) / (4.0 * std::sqrt(2.0 * kPi))).epsilon(1e-12));
  CHECK(std::abs(sc_map(2, 1.0) - oracle) <= 1e-6);
  CHECK(std::abs(sc_map(2, 1.0) - 1.311029) <= 1e-6);
}

TEST_CASE("origin is fixed") {
  for (int n = 2; n <= 8; ++n) CHECK(sc_map(n, 0.0) == Complex{0.0, 0.0});
}

TEST_CASE("rotation and conjugation symmetry") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> rad(0.0, 1.0), ang(0.0, 2 * kPi);
  for (int n = 2; n <= 5; ++n) {
    const PolygonChart chart(n);
    const Complex rot = std::polar(1.0, kPi / n);
    for (int k = 0; k < 30; ++k) {
      const Complex w = std::polar(std::sqrt(rad(rng)), ang(rng));
      CHECK(std::abs(chart.map(rot * w) - rot * chart.map(w)) <= 2e-12);
      CHECK(std::abs(chart.map(std::conj(w)) - std::conj(chart.map(w))) <= 2e-12);
    }
  }
}

TEST_CASE("regular polygon") {
  for (int n = 2; n <= 8; ++n) {
    const PolygonChart chart(n);
    const auto& v = chart.vertices();
    REQUIRE(v.size() == static_cast<std::size_t>(2 * n));
    double lo = HUGE_VAL, hi = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const double len = std::abs(v[(k + 1) % v.size()] - v[k]);
      lo = std::min(lo, len);
      hi = std::max(hi, len);
      CHECK(std::abs(std::abs(v[k]) - std::abs(v[0])) <= 1e-10);
    }
    CHECK(hi - lo <= 1e-7);
    for (int k = 1; k <= 2 * n; ++k) {
      const Complex a = v[static_cast<std::size_t>((k + 2 * n - 2) % (2 * n))], b = v[static_cast<std::size_t>(k - 1)];
      CHECK(std::abs(chart.midpoints()[static_cast<std::size_t>(k - 1)] - 0.5 * (a + b)) <= 1e-8);
      CHECK(std::abs(chart.edge_direction(k) - (b - a) / std::abs(b - a)) <= 1e-8);
    }
  }
  CHECK_THROWS_AS(PolygonChart(1), Error);
  CHECK_THROWS_AS(PolygonChart(9), Error);
}

TEST_CASE("blow-up heights match direct evaluation") {
  for (int n = 2; n <= 4; ++n) {
    const PolygonChart chart(n);
    const BlowUpChart jump = chart.jump(1);
    for (double r : {0.3, 1e-3})
      for (double th : {0.2, 1.5, 2.9})
        CHECK(std::abs(polygon_height(n, jump, r, th) - polygon_height(n, jump.pi(r, th))) <= 1e-11);
    CHECK(std::abs(polygon_height(n, jump, 1e-12, kPi / 3) - jump.seam_height(kPi / 3)) <= 1e-11);
  }
}

TEST_CASE("boundary heights") {
  CHECK(polygon_height(2, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  for (int n = 2; n <= 4; ++n) {
    const PolygonChart chart(n);
    const double mid1 = kPi / n, mid2 = 2 * kPi / n;  // middle of I_1 and I_2
    CHECK(std::abs(polygon_height(n, std::polar(1.0 - 1e-10, mid1)) - 1.0) <= 1e-8);
    CHECK(std::abs(polygon_height(n, std::polar(1.0 - 1e-10, mid2))) <= 1e-8);
    const BoundaryData bd = BoundaryData::alternating_disk(n);
    std::mt19937_64 rng(n);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (int k = 0; k < 20; ++k) {
      const Complex w{u(rng), u(rng)};
      CHECK(std::abs(polygon_height(n, w) - poisson_disk(bd, w)) <= 1e-12);
    }
  }
}

TEST_CASE("Schwarz-D patch") {
  auto chart = std::make_shared<const PolygonChart>(2);
  const SurfaceMap patch = schwarz_patch(chart);
  CHECK(patch.chart() == ChartKind::Disk);
  for (int k = 1; k <= 4; ++k) {
    const double phi = k * kPi / 2;  // middle of I_k
    const Point3 p = patch(std::polar(1.0 - 1e-10, phi));
    CHECK(std::abs(p.t - PolygonChart::arc_height(k)) <= 1e-8);
    // I_k runs from w_k through the vertex preimage to w_{k+1}: the corner at vertex k.
    CHECK(std::abs(p.planar() - chart->vertices()[static_cast<std::size_t>(k - 1)]) <= 1e-4);
    const Point3 half_edge = patch(std::polar(1.0 - 1e-12, phi - kPi / 8));
    const Complex mid = chart->midpoints()[static_cast<std::size_t>(k - 1)];
    const Complex u = chart->edge_direction(k);
    CHECK(std::abs(std::imag((half_edge.planar() - mid) / u)) <= 1e-9);
  }
  for (Complex w : {Complex{0.1, 0.2}, Complex{-0.5, 0.3}, Complex{0.6, -0.6}}) CHECK(laplacian_residual(patch, w, 1e-4) <= 1e-5);
}

TEST_CASE("generators and seams") {
  auto chart = std::make_shared<const PolygonChart>(2);
  const auto gens = schwarz_d_generators(*chart);
  REQUIRE(gens.size() == 8);
  const Point3 probe{0.2, -0.3, 0.4};
  for (const auto& g : gens) CHECK(distance(g(g(probe)), probe) <= 1e-14);
  CHECK(schwarz_seam_residual(chart) <= 1e-8);
  CHECK(schwarz_seam_residual(std::make_shared<const PolygonChart>(3)) <= 1e-8);
}

TEST_CASE("Schwarz-D tiling counts") {
  CHECK(schwarz_d_tiling(1, 9).meshes.size() == 9);
  CHECK_THROWS(schwarz_d_tiling(0, 9));
}
