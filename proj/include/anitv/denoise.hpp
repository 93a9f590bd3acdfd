#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "anitv/functional.hpp"
#include "anitv/grid.hpp"
#include "anitv/potential.hpp"

namespace anitv {

// min over u of J_h(u) + lambda * h^N * sum_x (u(x) - g(x))^2.  The fidelity
// carries the cell volume so energies are mesh-consistent with the L2 norm;
// lambda = 1 is the plain model.  level_grid is the ordered value grid of the
// quantized level-set solver; it must strictly increase and cover
// [min g, max g].
struct DenoiseProblem {
  GridFunction g;
  StencilPotential potential;
  double fidelity_weight = 1.0;
  std::vector<double> level_grid;
};

// Distinct values of g plus midpoints of consecutive pairs; each extra
// refine round inserts midpoints again.
std::vector<double> default_level_grid(const GridFunction& g, int refine = 0);

struct TracePoint {
  int iter = 0;
  double energy = 0.0;  // best energy so far, nonincreasing over checkpoints
  double residual = 0.0;
};

struct DenoiseResult {
  GridFunction u;
  double energy = 0.0;
  enum class Solver { oracle, first_order } solver = Solver::oracle;
  int iterations = 0;
  double residual = 0.0;
  bool converged = true;
  // oracle: the exhaustive second-oracle energy and the per-gap level sets
  // (nested decreasing, one per consecutive level_grid pair)
  double exhaustive_energy = 0.0;
  std::vector<GridSet> level_sets;
  std::vector<TracePoint> trace;
};

double denoise_energy(const DenoiseProblem& prob, const GridFunction& u);

// Exact solver for tiny grids (<= 20 cells).  For each gap between
// consecutive level_grid values it minimizes, by exhaustive enumeration over
// subsets E of cells,
//     J_h(chi_E) + lambda h^N sum_{x in E} 2 (s - g(x))
// at the gap midpoint s, breaking ties toward the largest minimizer, then
// stacks the (nested) sets into u(x) = sup of levels whose set contains x.
// A direct exhaustive search over all level_grid-valued functions runs as a
// second oracle; the two energies must agree within 1e-9 or the solver
// throws.  Nesting failures (possible only for non-submodular F) also throw.
DenoiseResult solve_oracle(const DenoiseProblem& prob);

struct FirstOrderOptions {
  int max_iter = 20000;
  double tol = 1e-10;        // relative best-energy decrease per checkpoint
  int checkpoint_every = 50;
  std::optional<GridFunction> init;  // default: start from g
};

// Projected subgradient descent on the convex energy: the subgradient of
// each stencil term comes from the greedy sorted order of the extension,
// steps diminish as a/(k+b), iterates are clamped to [min g, max g]
// (truncation never increases the energy), and the best iterate seen is
// returned, so the reported energy trace is nonincreasing.
DenoiseResult solve_first_order(const DenoiseProblem& prob,
                                const FirstOrderOptions& opts = {});

struct ConsistencyReport {
  int violations = 0;
  double worst = 0.0;  // most negative single-flip energy change found
  double worst_threshold = 0.0;
  std::int64_t worst_cell = -1;
};

// Necessary optimality condition on a claimed minimizer: at each threshold s
// no single-cell flip of {u > s} may lower the binary level-set energy by
// more than `tolerance`.
ConsistencyReport level_set_consistency_check(const DenoiseProblem& prob,
                                              const GridFunction& u,
                                              std::span<const double> thresholds,
                                              double tolerance = 1e-9);

}  // namespace anitv
