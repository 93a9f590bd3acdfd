#pragma once

#include <array>
#include <span>
#include <vector>

#include "anitv/potential.hpp"

namespace anitv {

// The surface density nu -> F(nu . Sigma) of the continuum limit: the
// extension of F evaluated at the vector of dot products (nu . y) over the
// stencil offsets.  Positively 1-homogeneous; convex when F is submodular;
// strictly positive away from 0 when the coercivity constant is positive.
class AnisotropyDensity {
public:
  explicit AnisotropyDensity(StencilPotential potential)
      : potential_(std::move(potential)) {}

  const StencilPotential& potential() const { return potential_; }
  int dim() const { return potential_.stencil().dim(); }

  double phi(std::span<const double> nu) const;
  double phi(double nu1, double nu2) const {
    const std::array<double, 2> nu{nu1, nu2};
    return phi(std::span<const double>(nu.data(), 2));
  }

private:
  StencilPotential potential_;
};

struct FrankPoint {
  std::vector<double> theta;  // unit direction
  double phi = 0.0;
  std::vector<double> point;  // theta / phi(theta), on {p : phi(p) = 1}
};

// Samples the boundary of the unit ball {p : phi(p) <= 1}: n uniform-angle
// directions on the circle (N=2) or a Fibonacci sphere sweep (N=3), each
// mapped to theta/phi(theta).  Throws std::domain_error if phi vanishes at a
// sampled direction (coercivity failure).
std::vector<FrankPoint> frank_diagram(const AnisotropyDensity& density,
                                      int n_samples);

// Closed simple polygon, counterclockwise, in the plane.
struct Polygon {
  std::vector<std::array<double, 2>> vertices;
};

// Throws std::invalid_argument if the polygon is degenerate, clockwise, or
// self-intersecting.
void validate_polygon(const Polygon& poly);

bool point_in_polygon(const Polygon& poly, double x, double y);

// Polygon together with the rectangular window it is measured in.
struct PolyhedralSet {
  Polygon polygon;
  std::array<double, 2> window_lo{0.0, 0.0};
  std::array<double, 2> window_hi{1.0, 1.0};
};

struct EdgeContribution {
  std::size_t edge_index = 0;
  double length = 0.0;               // clipped length inside the open window
  std::array<double, 2> normal{};    // inner unit normal
  double phi = 0.0;
  double contribution = 0.0;         // length * phi
};

struct PolyhedralPerimeter {
  double total = 0.0;
  std::vector<EdgeContribution> edges;
};

// Limit perimeter of a polygon in the open window: sum over edges of
// (length inside the window) * phi(inner normal).  Edge parts lying exactly
// on the window boundary contribute zero.
PolyhedralPerimeter polyhedral_perimeter_detailed(const AnisotropyDensity& density,
                                                  const PolyhedralSet& set);
double polyhedral_perimeter(const AnisotropyDensity& density,
                            const PolyhedralSet& set);

// (N-1)-measure of the hyperplane {x . nu = c} inside the open box, N <= 3.
double hyperplane_box_measure(std::span<const double> nu, double c,
                              std::span<const double> box_lo,
                              std::span<const double> box_hi);

// Limit perimeter of an axis-aligned box inside an open window: sum over
// faces of (face area inside the window) * phi(inner normal).  Valid in any
// supported dimension; faces on the window boundary contribute zero.
double axis_box_perimeter(const AnisotropyDensity& density,
                          std::span<const double> box_lo, std::span<const double> box_hi,
                          std::span<const double> window_lo,
                          std::span<const double> window_hi);

}  // namespace anitv
