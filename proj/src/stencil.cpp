#include "anitv/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace anitv {

Stencil::Stencil(int dim, std::vector<std::vector<int>> offsets)
    : dim_(dim), offsets_(std::move(offsets)) {
  if (dim_ < 1) throw std::invalid_argument("stencil: dim must be positive");
  if (offsets_.empty()) throw std::invalid_argument("stencil: no offsets");

  std::set<std::vector<int>> seen;
  for (const auto& y : offsets_) {
    if (static_cast<int>(y.size()) != dim_)
      throw std::invalid_argument("stencil: offset dimension mismatch");
    if (!seen.insert(y).second)
      throw std::invalid_argument("stencil: duplicate offset");
  }

  const std::vector<int> zero(dim_, 0);
  auto origin_it = std::find(offsets_.begin(), offsets_.end(), zero);
  if (origin_it == offsets_.end())
    throw std::invalid_argument("stencil: must contain the zero offset");
  origin_index_ = static_cast<std::size_t>(origin_it - offsets_.begin());

  basis_indices_.resize(dim_);
  for (int axis = 0; axis < dim_; ++axis) {
    std::vector<int> e(dim_, 0);
    e[axis] = 1;
    auto it = std::find(offsets_.begin(), offsets_.end(), e);
    if (it == offsets_.end())
      throw std::invalid_argument("stencil: must contain basis vector e_" +
                                  std::to_string(axis + 1));
    basis_indices_[axis] = static_cast<std::size_t>(it - offsets_.begin());
  }

  for (const auto& y : offsets_) {
    double s = 0.0;
    for (int c : y) s += static_cast<double>(c) * c;
    radius_ = std::max(radius_, std::sqrt(s));
  }
}

std::string mask_to_string(BinaryVector mask, std::size_t n_bits) {
  std::string s(n_bits, '0');
  for (std::size_t i = 0; i < n_bits; ++i)
    if (mask & (BinaryVector{1} << i)) s[n_bits - 1 - i] = '1';
  return s;
}

}  // namespace anitv
