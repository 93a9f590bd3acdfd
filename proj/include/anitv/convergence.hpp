#pragma once

#include <array>
#include <span>
#include <vector>

#include "anitv/anisotropy.hpp"
#include "anitv/functional.hpp"
#include "anitv/grid.hpp"

namespace anitv {

// One mesh size of a discrete-to-continuum comparison: J_h on a rasterized
// reference object against the exact limit value.
struct ConvergenceRow {
  double h = 0.0;
  double jh = 0.0;
  double limit = 0.0;
  double abs_err = 0.0;
  double err_over_h = 0.0;
};

// h = 2^-k for k = k_coarse..k_fine, strictly decreasing.
std::vector<double> dyadic_schedule(int k_coarse, int k_fine);

// Cell marked iff its center x satisfies x . nu > offset.
GridSet rasterize_halfspace(std::span<const double> nu, double offset,
                            const GridDomain& domain);

// Cell marked iff the sample point (cell node + sample_offset * h) lies in
// the polygon.  Default sample point is the cell center; other offsets give
// the shifted-sampling recovery construction.
GridSet rasterize_polygon(const Polygon& poly, const GridDomain& domain,
                          std::array<double, 2> sample_offset = {0.5, 0.5});

struct HalfspaceExperiment {
  std::vector<double> nu;  // unit normal
  double offset = 0.0;     // interface {x . nu = offset}
  std::vector<double> window_lo;
  std::vector<double> window_hi;
  std::vector<double> h_schedule;  // strictly decreasing
};

// J_h of the rasterized half space per mesh size vs phi(nu) * (interface
// measure inside the window).  The node-sampled J_h carries a rasterization
// offset relative to the integral form, so rows report both the raw error
// and the first-order error/h trend.
std::vector<ConvergenceRow> run_halfspace_experiment(const HalfspaceExperiment& exp,
                                                     const StencilPotential& F);

struct PolygonExperiment {
  Polygon polygon;
  std::array<double, 2> window_lo{0.0, 0.0};
  std::array<double, 2> window_hi{1.0, 1.0};
  std::vector<double> h_schedule;
  std::array<double, 2> sample_offset{0.5, 0.5};
};

// J_h of the center-rasterized polygon vs its exact polyhedral perimeter.
// The polygon must keep distance > radius(Sigma) * max h from the window
// boundary so that boundary effects vanish.
std::vector<ConvergenceRow> run_polygon_experiment(const PolygonExperiment& exp,
                                                   const StencilPotential& F);

struct FunctionTvExperiment {
  struct Layer {
    Polygon polygon;
    double coefficient = 1.0;  // positive
  };
  // nested: layers[j+1].polygon inside layers[j].polygon
  std::vector<Layer> layers;
  std::array<double, 2> window_lo{0.0, 0.0};
  std::array<double, 2> window_hi{1.0, 1.0};
  std::vector<double> h_schedule;
  std::array<double, 2> sample_offset{0.5, 0.5};
};

// u = sum_j coeff_j * chi_{P_j} with nested polygons; J_h of the raster vs
// the level-set sum of gaps times polyhedral perimeters.
std::vector<ConvergenceRow> run_function_tv_experiment(const FunctionTvExperiment& exp,
                                                       const StencilPotential& F);

}  // namespace anitv
