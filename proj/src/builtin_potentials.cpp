#include "anitv/builtin_potentials.hpp"

#include <cmath>
#include <cstdlib>

namespace anitv {

namespace {

std::vector<std::vector<int>> axis_stencil_offsets(int dim) {
  std::vector<std::vector<int>> offsets;
  offsets.emplace_back(dim, 0);
  for (int axis = 0; axis < dim; ++axis) {
    std::vector<int> e(dim, 0);
    e[axis] = 1;
    offsets.push_back(std::move(e));
  }
  return offsets;
}

}  // namespace

StencilPotential nearest_neighbor_potential(int dim) {
  Stencil st(dim, axis_stencil_offsets(dim));
  const std::size_t n = st.size();  // dim + 1, origin at bit 0
  std::vector<double> values(std::size_t{1} << n, 0.0);
  for (std::size_t m = 0; m < values.size(); ++m) {
    const int at_origin = m & 1;
    int diff = 0;
    for (int axis = 0; axis < dim; ++axis)
      diff += std::abs(static_cast<int>((m >> (axis + 1)) & 1) - at_origin);
    values[m] = diff;
  }
  return StencilPotential(std::move(st), std::move(values));
}

StencilPotential euclidean_potential_2d() {
  Stencil st(2, axis_stencil_offsets(2));
  std::vector<double> values(8, 0.0);
  for (std::size_t m = 0; m < 8; ++m) {
    const double d1 = static_cast<double>((m >> 1) & 1) - (m & 1);
    const double d2 = static_cast<double>((m >> 2) & 1) - (m & 1);
    values[m] = std::sqrt(d1 * d1 + d2 * d2);
  }
  return StencilPotential(std::move(st), std::move(values));
}

StencilPotential octagonal_potential_2d() {
  auto offsets = axis_stencil_offsets(2);
  offsets.push_back({1, 1});
  Stencil st(2, std::move(offsets));
  const double axis_w = std::sqrt(2.0) - 1.0;
  const double diag_w = 1.0 - std::sqrt(2.0) / 2.0;
  std::vector<double> values(16, 0.0);
  for (std::size_t m = 0; m < 16; ++m) {
    const int u0 = m & 1, u1 = (m >> 1) & 1, u2 = (m >> 2) & 1, u3 = (m >> 3) & 1;
    values[m] = axis_w * (std::abs(u1 - u0) + std::abs(u2 - u0)) +
                diag_w * (std::abs(u3 - u0) + std::abs(u1 - u2));
  }
  return StencilPotential(std::move(st), std::move(values));
}

}  // namespace anitv
