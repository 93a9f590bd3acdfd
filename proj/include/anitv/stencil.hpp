#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace anitv {

// A finite set of integer lattice offsets: the interaction neighborhood of a
// stencil potential.  The offset list is ordered; that order fixes the bit
// layout of BinaryVector masks and the entry order of real stencil vectors.
// Must contain the zero offset and every canonical basis vector e_1..e_N.
// Immutable after construction; safe to share across threads.
class Stencil {
public:
  Stencil(int dim, std::vector<std::vector<int>> offsets);

  int dim() const { return dim_; }
  std::size_t size() const { return offsets_.size(); }
  const std::vector<std::vector<int>>& offsets() const { return offsets_; }
  const std::vector<int>& offset(std::size_t i) const { return offsets_[i]; }
  std::size_t origin_index() const { return origin_index_; }
  // index of e_{axis+1} within the offset list, axis in [0, dim)
  std::size_t basis_index(int axis) const { return basis_indices_[axis]; }
  // max Euclidean norm over offsets, computed eagerly
  double radius() const { return radius_; }

private:
  int dim_ = 0;
  std::vector<std::vector<int>> offsets_;
  std::size_t origin_index_ = 0;
  std::vector<std::size_t> basis_indices_;
  double radius_ = 0.0;
};

// One bit per stencil offset; bit i corresponds to offsets()[i].
using BinaryVector = std::uint32_t;

// One real per stencil offset, same ordering as Stencil::offsets().
using RealStencilVector = std::vector<double>;

// Mask as a binary string, most significant bit first ("110" = offsets 1,2).
std::string mask_to_string(BinaryVector mask, std::size_t n_bits);

}  // namespace anitv
