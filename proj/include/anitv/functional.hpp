#pragma once

#include <cstdint>
#include <vector>

#include "anitv/grid.hpp"
#include "anitv/potential.hpp"

namespace anitv {

// Interior lattice nodes of a domain w.r.t. a stencil: the cells x with
// x + h*y inside the domain for every stencil offset y.  Nodes are listed in
// lexicographic cell order; deltas[j] is the flat-index shift of offset j,
// valid at every interior node.
struct InteriorNodes {
  std::vector<std::int64_t> nodes;
  std::vector<std::int64_t> deltas;
};

InteriorNodes interior_nodes(const GridDomain& domain, const Stencil& sigma);

// Stencil sample of u at an interior node: entry j is the value of u on the
// cell containing node + h * offset(j).  Throws if the node is not interior.
RealStencilVector gather(const GridFunction& u, const Stencil& sigma,
                         std::int64_t node_flat);

// J_h(u) = h^(N-1) * sum over interior nodes of F(u[x + h Sigma]).
// Summation runs in fixed lexicographic node order (single-threaded), so
// results are reproducible bit-for-bit.
double eval_Jh(const GridFunction& u, const StencilPotential& F);
double eval_Jh(const GridFunction& u, const StencilPotential& F,
               const InteriorNodes& interior);

// Binary fast path: table lookup by bitmask per node, no sort.  Equals
// eval_Jh on the indicator function bit-for-bit.
double eval_Jh_set(const GridSet& E, const StencilPotential& F);
double eval_Jh_set(const GridSet& E, const StencilPotential& F,
                   const InteriorNodes& interior);

// Per-node unscaled contributions F(u[x+h Sigma]), lexicographic node order.
std::vector<double> eval_Jh_node_terms(const GridFunction& u,
                                       const StencilPotential& F);

struct CoareaReport {
  double lhs = 0.0;  // J_h(u)
  double rhs = 0.0;  // sum of level gaps times J_h of super-level sets
  double gap = 0.0;  // |lhs - rhs|
};

// Checks the generalized coarea identity J_h(u) = integral J_h({u>s}) ds,
// with the right side evaluated exactly over the distinct values of u.
CoareaReport coarea_check(const GridFunction& u, const StencilPotential& F);

struct JhSubmodularityReport {
  double meet = 0.0;  // J_h(E1 and E2)
  double join = 0.0;  // J_h(E1 or E2)
  double lhs1 = 0.0;  // J_h(E1)
  double lhs2 = 0.0;  // J_h(E2)
  bool ok = true;     // meet + join <= lhs1 + lhs2 + 1e-10
};

JhSubmodularityReport submodularity_of_Jh_check(const GridSet& e1, const GridSet& e2,
                                                const StencilPotential& F);

struct TvBoundsReport {
  double coercivity_c = 0.0;
  double disc_tv1 = 0.0;     // nearest-neighbor discrete TV over interior nodes
  double jh = 0.0;
  double upper_c = 0.0;      // max over binary w with F(w)>0 of F(w)/#differing
  double disc_tv_rho = 0.0;  // all-offset discrete TV over interior nodes
  bool lower_ok = true;      // c * disc_tv1 <= jh
  bool upper_ok = true;      // jh <= upper_c * disc_tv_rho
};

// Certifiable two-sided comparison of J_h with discrete total variations;
// requires coercivity > 0 for the lower bound to be meaningful.
TvBoundsReport total_variation_bounds_check(const GridFunction& u,
                                            const StencilPotential& F);

}  // namespace anitv
