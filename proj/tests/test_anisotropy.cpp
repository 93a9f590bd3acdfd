#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>

#include "anitv/anisotropy.hpp"
#include "anitv/builtin_potentials.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace anitv;

namespace {

// sector formulas of the crystalline example density
double euclid_phi_reference(double n1, double n2) {
  if (n1 * n2 <= 0.0) return std::abs(n1) + std::abs(n2);
  if (std::abs(n1) >= std::abs(n2))
    return std::sqrt(2.0) * std::abs(n2) + std::abs(n2 - n1);
  return std::sqrt(2.0) * std::abs(n1) + std::abs(n2 - n1);
}

}  // namespace

TEST_CASE("phi of the nearest-neighbor potential is the 1-norm") {
  const AnisotropyDensity density(nearest_neighbor_potential(2));
  CHECK(density.phi(1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(density.phi(0.0, 0.0) == 0.0);
  for (int k = 0; k < 360; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 360.0;
    const double n1 = std::cos(a), n2 = std::sin(a);
    CHECK(std::abs(density.phi(n1, n2) - (std::abs(n1) + std::abs(n2))) <= 1e-12);
  }
}

TEST_CASE("phi of the euclidean potential matches the sector formulas") {
  const AnisotropyDensity density(euclidean_potential_2d());
  CHECK(density.phi(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(density.phi(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(density.phi(1.0, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(density.phi(2.0, 1.0) ==
        doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-15));
  CHECK(density.phi(1.0, -1.0) == doctest::Approx(2.0).epsilon(1e-15));
  for (int k = 0; k < 360; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 360.0;
    const double n1 = std::cos(a), n2 = std::sin(a);
    CHECK(std::abs(density.phi(n1, n2) - euclid_phi_reference(n1, n2)) <= 1e-12);
  }
}

TEST_CASE("phi homogeneity and subadditivity on random directions") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.1, 5.0);
  for (const auto& F : {nearest_neighbor_potential(2), euclidean_potential_2d(),
                        octagonal_potential_2d()}) {
    const AnisotropyDensity density(F);
    for (int k = 0; k < 500; ++k) {
      const double a1 = unit(rng), a2 = unit(rng), b1 = unit(rng), b2 = unit(rng);
      const double lambda = pos(rng);
      const double pa = density.phi(a1, a2);
      CHECK(density.phi(lambda * a1, lambda * a2) ==
            doctest::Approx(lambda * pa).epsilon(1e-9));
      CHECK(density.phi(a1 + b1, a2 + b2) <=
            pa + density.phi(b1, b2) + 1e-9);
    }
  }
}

TEST_CASE("phi is even for complement-symmetric potentials") {
  const AnisotropyDensity density(euclidean_potential_2d());
  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const double n1 = unit(rng), n2 = unit(rng);
    CHECK(density.phi(-n1, -n2) == doctest::Approx(density.phi(n1, n2)).epsilon(1e-12));
  }
}

TEST_CASE("frank diagram") {
  const AnisotropyDensity nn(nearest_neighbor_potential(2));
  const auto points = frank_diagram(nn, 360);
  REQUIRE(points.size() == 360);
  // theta = (1,0) maps to the diamond vertex (1,0)
  CHECK(points[0].point[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(points[0].point[1] == doctest::Approx(0.0).epsilon(1e-15));
  for (const auto& p : points)
    CHECK(std::abs(nn.phi(p.point) - 1.0) <= 1e-9);

  const AnisotropyDensity euclid(euclidean_potential_2d());
  const auto ep = frank_diagram(euclid, 8);
  // theta along the diagonal: phi = 1, the point stays on the unit circle
  CHECK(ep[1].theta[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(ep[1].point[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(ep[1].point[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

  // crystalline: the diagram is not a circle
  double rmin = 1e9, rmax = 0.0;
  for (const auto& p : frank_diagram(euclid, 360)) {
    const double r = std::hypot(p.point[0], p.point[1]);
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  CHECK(rmax / rmin > 1.05);

  // coercivity failure is refused
  const StencilPotential zero(Stencil(2, {{0, 0}, {1, 0}, {0, 1}}),
                              std::vector<double>(8, 0.0));
  CHECK_THROWS_AS(frank_diagram(AnisotropyDensity(zero), 16), std::domain_error);

  // 3D sampling stays on the unit level set as well
  const AnisotropyDensity nn3(nearest_neighbor_potential(3));
  for (const auto& p : frank_diagram(nn3, 100))
    CHECK(std::abs(nn3.phi(p.point) - 1.0) <= 1e-9);
}

TEST_CASE("polygon validation") {
  Polygon square{{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}};
  validate_polygon(square);
  CHECK(point_in_polygon(square, 0.5, 0.5));
  CHECK_FALSE(point_in_polygon(square, 1.5, 0.5));

  Polygon clockwise{{{0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, 0.0}}};
  CHECK_THROWS_AS(validate_polygon(clockwise), std::invalid_argument);
  Polygon bowtie{{{0.0, 0.0}, {1.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}}};
  CHECK_THROWS_AS(validate_polygon(bowtie), std::invalid_argument);
  Polygon degenerate{{{0.0, 0.0}, {0.0, 0.0}, {1.0, 1.0}}};
  CHECK_THROWS_AS(validate_polygon(degenerate), std::invalid_argument);
}

TEST_CASE("polyhedral perimeter: axis square, half plane, diamond") {
  const AnisotropyDensity nn(nearest_neighbor_potential(2));
  const AnisotropyDensity euclid(euclidean_potential_2d());

  // axis square of side 1/2 inside the unit window: 4 * (1/2) * 1
  const Polygon square{{{0.25, 0.25}, {0.75, 0.25}, {0.75, 0.75}, {0.25, 0.75}}};
  CHECK(polyhedral_perimeter(nn, {square, {0, 0}, {1, 1}}) ==
        doctest::Approx(2.0).epsilon(1e-15));

  // half plane {x . nu > c} as a large polygon crossing the window
  const Polygon halfplane{{{0.5, -10.0}, {10.0, -10.0}, {10.0, 10.0}, {0.5, 10.0}}};
  const auto detail = polyhedral_perimeter_detailed(euclid, {halfplane, {0, 0}, {1, 1}});
  CHECK(detail.total == doctest::Approx(1.0 * euclid.phi(1.0, 0.0)).epsilon(1e-12));
  REQUIRE(detail.edges.size() == 1);  // only the interface edge crosses the window
  CHECK(detail.edges[0].normal[0] == doctest::Approx(1.0));

  // diamond of side s: two edges at phi = 1, two at phi = sqrt(2)
  const Polygon diamond{{{0.75, 0.5}, {0.5, 0.75}, {0.25, 0.5}, {0.5, 0.25}}};
  const double side = std::sqrt(2.0) / 4.0;
  CHECK(polyhedral_perimeter(euclid, {diamond, {0, 0}, {1, 1}}) ==
        doctest::Approx(side * (2.0 + 2.0 * std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("polyhedral perimeter: open-window conventions and invariances") {
  const AnisotropyDensity nn(nearest_neighbor_potential(2));

  // edges on the window boundary contribute zero
  const Polygon flush{{{0.0, 0.0}, {0.5, 0.0}, {0.5, 0.5}, {0.0, 0.5}}};
  CHECK(polyhedral_perimeter(nn, {flush, {0, 0}, {1, 1}}) ==
        doctest::Approx(1.0).epsilon(1e-15));  // only the two interior edges

  // translation invariance (window translated alongside)
  const Polygon square{{{0.25, 0.25}, {0.75, 0.25}, {0.75, 0.75}, {0.25, 0.75}}};
  Polygon moved = square;
  for (auto& v : moved.vertices) {
    v[0] += 0.3;
    v[1] -= 0.2;
  }
  CHECK(polyhedral_perimeter(nn, {square, {0, 0}, {1, 1}}) ==
        doctest::Approx(
            polyhedral_perimeter(nn, {moved, {0.3, -0.2}, {1.3, 0.8}}))
            .epsilon(1e-12));

  // additivity over disjoint windows covering the plane slab
  const double whole = polyhedral_perimeter(nn, {square, {0, 0}, {1, 1}});
  const double left = polyhedral_perimeter(nn, {square, {0, 0}, {0.5, 1}});
  const double right = polyhedral_perimeter(nn, {square, {0.5, 0}, {1, 1}});
  // the split line x = 0.5 carries no vertical edge of this square
  CHECK(whole == doctest::Approx(left + right).epsilon(1e-12));
}

TEST_CASE("hyperplane box measures in 1D, 2D, 3D") {
  // 1D: a point either inside or not
  const std::vector<double> lo1{0.0}, hi1{1.0};
  CHECK(hyperplane_box_measure(std::vector<double>{1.0}, 0.5, lo1, hi1) == 1.0);
  CHECK(hyperplane_box_measure(std::vector<double>{1.0}, 1.5, lo1, hi1) == 0.0);

  // 2D: diagonal of the centered unit square
  const std::vector<double> lo2{-0.5, -0.5}, hi2{0.5, 0.5};
  const double s2 = std::sqrt(0.5);
  CHECK(hyperplane_box_measure(std::vector<double>{s2, s2}, 0.0, lo2, hi2) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(hyperplane_box_measure(std::vector<double>{2.0 / std::sqrt(5.0),
                                                   1.0 / std::sqrt(5.0)},
                               0.0, lo2, hi2) ==
        doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-12));
  // a line flush with the boundary has zero open-box measure
  CHECK(hyperplane_box_measure(std::vector<double>{1.0, 0.0}, 0.5, lo2, hi2) == 0.0);

  // 3D: central cross-section orthogonal to (1,1,1) is a regular hexagon
  const std::vector<double> lo3{0.0, 0.0, 0.0}, hi3{1.0, 1.0, 1.0};
  const double s3 = 1.0 / std::sqrt(3.0);
  CHECK(hyperplane_box_measure(std::vector<double>{s3, s3, s3}, 1.5 * s3, lo3, hi3) ==
        doctest::Approx(3.0 * std::sqrt(3.0) / 4.0).epsilon(1e-12));
  CHECK(hyperplane_box_measure(std::vector<double>{1.0, 0.0, 0.0}, 0.25, lo3, hi3) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("hyperplane measure agrees with a finite-difference volume oracle") {
  // volume of {x . nu < c} inside [0,1]^N via corner inclusion-exclusion;
  // its derivative in c is the cross-section measure
  auto halfspace_volume = [](const std::vector<double>& nu, double c) {
    const int n = static_cast<int>(nu.size());
    double prod = 1.0;
    for (double x : nu) prod *= x;
    double vol = 0.0;
    for (int corner = 0; corner < (1 << n); ++corner) {
      double shift = c;
      int bits = 0;
      for (int i = 0; i < n; ++i)
        if ((corner >> i) & 1) {
          shift -= nu[i];
          ++bits;
        }
      if (shift > 0.0) {
        double term = 1.0;
        for (int i = 0; i < n; ++i) term *= shift;
        vol += (bits % 2 ? -1.0 : 1.0) * term;
      }
    }
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    return vol / (fact * prod);
  };

  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> comp(0.2, 1.0);
  for (int dim : {2, 3}) {
    const std::vector<double> lo(dim, 0.0), hi(dim, 1.0);
    for (int k = 0; k < 20; ++k) {
      std::vector<double> nu(dim);
      double norm = 0.0;
      for (auto& x : nu) {
        x = comp(rng);
        norm += x * x;
      }
      norm = std::sqrt(norm);
      for (auto& x : nu) x /= norm;
      double total = 0.0;
      for (double x : nu) total += x;
      const double c = 0.5 * total;  // through the box center
      const double delta = 1e-6;
      const double fd = (halfspace_volume(nu, c + delta) -
                         halfspace_volume(nu, c - delta)) /
                        (2.0 * delta);
      CHECK(hyperplane_box_measure(nu, c, lo, hi) ==
            doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("axis box perimeter in 3D") {
  const AnisotropyDensity nn(nearest_neighbor_potential(3));
  const std::vector<double> box_lo{0.25, 0.25, 0.25}, box_hi{0.75, 0.75, 0.75};
  const std::vector<double> win_lo{0.0, 0.0, 0.0}, win_hi{1.0, 1.0, 1.0};
  // six faces of area 1/4, phi(+-e_i) = 1
  CHECK(axis_box_perimeter(nn, box_lo, box_hi, win_lo, win_hi) ==
        doctest::Approx(1.5).epsilon(1e-15));
  // faces flush with the window vanish; side faces stretch to the window
  const std::vector<double> flush_lo{0.0, 0.25, 0.25};
  CHECK(axis_box_perimeter(nn, flush_lo, box_hi, win_lo, win_hi) ==
        doctest::Approx(0.25 + 4 * 0.75 * 0.5).epsilon(1e-12));
}
