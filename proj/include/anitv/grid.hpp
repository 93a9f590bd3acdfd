#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "anitv/stencil.hpp"

namespace anitv {

// Axis-aligned discretization of a bounded domain at mesh size h.  Cells are
// the half-open cubes Q_k = h*k + h*[0,1)^N indexed lexicographically over
// the integer box of cells contained in the closed bounding box; a per-cell
// mask marks which of them belong to the domain.  A point lies in the domain
// iff the cell containing it is marked inside (points on the upper box
// boundary belong to no cell).  Exact for cell-aligned boxes, approximate
// otherwise.  Cheap to copy; immutable after construction.
class GridDomain {
public:
  static constexpr int kMaxDim = 4;

  // all contained cells inside
  static GridDomain box(double h, std::vector<double> lo, std::vector<double> hi);
  // inside mask from a predicate on cell centers
  static GridDomain masked(double h, std::vector<double> lo, std::vector<double> hi,
                           const std::function<bool(const std::vector<double>&)>& inside);

  int dim() const;
  double h() const;
  const std::vector<double>& box_lo() const;
  const std::vector<double>& box_hi() const;
  const std::vector<std::int64_t>& cell_min() const;
  const std::vector<std::int64_t>& extent() const;
  const std::vector<std::int64_t>& strides() const;  // last dim fastest

  std::int64_t cell_count() const;    // cells in the index box
  std::int64_t inside_count() const;  // cells marked inside
  bool inside(std::int64_t flat) const;

  std::int64_t flat_index(const std::vector<std::int64_t>& cell) const;
  std::vector<std::int64_t> cell_at(std::int64_t flat) const;
  std::vector<double> cell_origin(std::int64_t flat) const;  // lattice node h*k
  std::vector<double> cell_center(std::int64_t flat) const;

  bool same_layout(const GridDomain& other) const;

  struct Impl;

private:
  explicit GridDomain(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Piecewise-constant function on the cells of a domain.  Values are stored
// densely over the index box; only values on inside cells are meaningful.
// All values must be finite.
class GridFunction {
public:
  GridFunction(GridDomain domain, std::vector<double> cell_values);
  // value = f(sample point per cell)
  enum class Sample { center, node };
  static GridFunction from_function(const GridDomain& domain,
                                    const std::function<double(const std::vector<double>&)>& f,
                                    Sample sample = Sample::center);
  static GridFunction constant(const GridDomain& domain, double value);

  const GridDomain& domain() const { return domain_; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
  double operator[](std::int64_t flat) const { return values_[flat]; }
  double& operator[](std::int64_t flat) { return values_[flat]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double min_inside() const;
  double max_inside() const;

private:
  GridDomain domain_;
  std::vector<double> values_;
};

// Subset of the domain's cells (a discrete set), one flag per cell.
class GridSet {
public:
  GridSet(GridDomain domain, std::vector<std::uint8_t> member);
  static GridSet empty(const GridDomain& domain);
  static GridSet full(const GridDomain& domain);  // all inside cells

  const GridDomain& domain() const { return domain_; }
  bool contains(std::int64_t flat) const { return member_[flat] != 0; }
  void set(std::int64_t flat, bool on) { member_[flat] = on ? 1 : 0; }
  const std::vector<std::uint8_t>& member() const { return member_; }
  std::int64_t count() const;

  GridFunction indicator() const;  // as 0/1 GridFunction

private:
  GridDomain domain_;
  std::vector<std::uint8_t> member_;
};

GridSet set_intersection(const GridSet& a, const GridSet& b);
GridSet set_union(const GridSet& a, const GridSet& b);
GridSet set_complement(const GridSet& a);  // within inside cells

GridFunction pointwise_min(const GridFunction& u, const GridFunction& v);
GridFunction pointwise_max(const GridFunction& u, const GridFunction& v);
GridFunction add_constant(const GridFunction& u, double c);
GridFunction scale(const GridFunction& u, double lambda);
// strict super-level set {u > s} over inside cells
GridSet super_level_set(const GridFunction& u, double s);

}  // namespace anitv
