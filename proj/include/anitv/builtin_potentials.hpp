#pragma once

#include "anitv/potential.hpp"

namespace anitv {

// F(u) = sum_i |u(e_i) - u(0)| over the stencil {0, e_1, ..., e_N}.
// The extension is the l1 norm of the forward differences; the associated
// anisotropy is phi(nu) = |nu|_1.  Coercivity constant 1.
StencilPotential nearest_neighbor_potential(int dim);

// 2D stencil {0, e_1, e_2} with F(u) = sqrt((u(e_1)-u(0))^2 + (u(e_2)-u(0))^2)
// on binary vectors: values 1, 1, sqrt(2), complement-symmetric.  The limit
// anisotropy is crystalline, not the Euclidean norm.
StencilPotential euclidean_potential_2d();

// 2D stencil {0, e_1, e_2, e_1+e_2} mixing axis and diagonal pair
// interactions, weighted so that phi(1,0) = 1 and phi(1,1) = sqrt(2):
// an octagonal approximation of the isotropic total variation.
StencilPotential octagonal_potential_2d();

}  // namespace anitv
