#include "anitv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anitv {

struct GridDomain::Impl {
  int dim = 0;
  double h = 0.0;
  std::vector<double> lo, hi;
  std::vector<std::int64_t> cell_min;
  std::vector<std::int64_t> extent;
  std::vector<std::int64_t> strides;
  std::vector<std::uint8_t> inside;
  std::int64_t inside_count = 0;
};

namespace {

std::shared_ptr<GridDomain::Impl> make_impl(double h, std::vector<double> lo,
                                            std::vector<double> hi) {
  auto impl = std::make_shared<GridDomain::Impl>();
  impl->dim = static_cast<int>(lo.size());
  if (impl->dim < 1 || impl->dim > GridDomain::kMaxDim)
    throw std::invalid_argument("grid: dim must be in 1..4");
  if (hi.size() != lo.size())
    throw std::invalid_argument("grid: box corner dimension mismatch");
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("grid: mesh size must be positive");
  for (int i = 0; i < impl->dim; ++i)
    if (!(lo[i] < hi[i]))
      throw std::invalid_argument("grid: box_lo < box_hi required");
  impl->h = h;
  impl->lo = std::move(lo);
  impl->hi = std::move(hi);

  impl->cell_min.resize(impl->dim);
  impl->extent.resize(impl->dim);
  std::int64_t total = 1;
  for (int i = 0; i < impl->dim; ++i) {
    // cells h*[k, k+1] contained in the closed box, snapping aligned bounds
    const double a = impl->lo[i] / h;
    const double b = impl->hi[i] / h;
    const std::int64_t kmin =
        static_cast<std::int64_t>(std::ceil(a - 1e-9 * (1.0 + std::abs(a))));
    const std::int64_t kmax =
        static_cast<std::int64_t>(std::floor(b + 1e-9 * (1.0 + std::abs(b)))) - 1;
    impl->cell_min[i] = kmin;
    impl->extent[i] = std::max<std::int64_t>(0, kmax - kmin + 1);
    total *= impl->extent[i];
  }
  impl->strides.assign(impl->dim, 1);
  for (int i = impl->dim - 2; i >= 0; --i)
    impl->strides[i] = impl->strides[i + 1] * impl->extent[i + 1];
  impl->inside.assign(static_cast<std::size_t>(total), 1);
  impl->inside_count = total;
  return impl;
}

}  // namespace

GridDomain GridDomain::box(double h, std::vector<double> lo, std::vector<double> hi) {
  return GridDomain(make_impl(h, std::move(lo), std::move(hi)));
}

GridDomain GridDomain::masked(double h, std::vector<double> lo, std::vector<double> hi,
                              const std::function<bool(const std::vector<double>&)>& inside) {
  auto impl = make_impl(h, std::move(lo), std::move(hi));
  GridDomain probe(impl);
  std::int64_t count = 0;
  for (std::int64_t f = 0; f < probe.cell_count(); ++f) {
    const bool in = inside(probe.cell_center(f));
    impl->inside[static_cast<std::size_t>(f)] = in ? 1 : 0;
    count += in;
  }
  impl->inside_count = count;
  return GridDomain(std::move(impl));
}

int GridDomain::dim() const { return impl_->dim; }
double GridDomain::h() const { return impl_->h; }
const std::vector<double>& GridDomain::box_lo() const { return impl_->lo; }
const std::vector<double>& GridDomain::box_hi() const { return impl_->hi; }
const std::vector<std::int64_t>& GridDomain::cell_min() const { return impl_->cell_min; }
const std::vector<std::int64_t>& GridDomain::extent() const { return impl_->extent; }
const std::vector<std::int64_t>& GridDomain::strides() const { return impl_->strides; }

std::int64_t GridDomain::cell_count() const {
  return static_cast<std::int64_t>(impl_->inside.size());
}
std::int64_t GridDomain::inside_count() const { return impl_->inside_count; }
bool GridDomain::inside(std::int64_t flat) const {
  return impl_->inside[static_cast<std::size_t>(flat)] != 0;
}

std::int64_t GridDomain::flat_index(const std::vector<std::int64_t>& cell) const {
  std::int64_t flat = 0;
  for (int i = 0; i < impl_->dim; ++i) {
    const std::int64_t rel = cell[i] - impl_->cell_min[i];
    if (rel < 0 || rel >= impl_->extent[i])
      throw std::out_of_range("grid: cell outside index box");
    flat += rel * impl_->strides[i];
  }
  return flat;
}

std::vector<std::int64_t> GridDomain::cell_at(std::int64_t flat) const {
  std::vector<std::int64_t> cell(impl_->dim);
  for (int i = 0; i < impl_->dim; ++i) {
    cell[i] = impl_->cell_min[i] + flat / impl_->strides[i];
    flat %= impl_->strides[i];
  }
  return cell;
}

std::vector<double> GridDomain::cell_origin(std::int64_t flat) const {
  auto cell = cell_at(flat);
  std::vector<double> x(impl_->dim);
  for (int i = 0; i < impl_->dim; ++i) x[i] = impl_->h * static_cast<double>(cell[i]);
  return x;
}

std::vector<double> GridDomain::cell_center(std::int64_t flat) const {
  auto cell = cell_at(flat);
  std::vector<double> x(impl_->dim);
  for (int i = 0; i < impl_->dim; ++i)
    x[i] = impl_->h * (static_cast<double>(cell[i]) + 0.5);
  return x;
}

bool GridDomain::same_layout(const GridDomain& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->dim == other.impl_->dim && impl_->h == other.impl_->h &&
         impl_->cell_min == other.impl_->cell_min &&
         impl_->extent == other.impl_->extent && impl_->inside == other.impl_->inside;
}

GridFunction::GridFunction(GridDomain domain, std::vector<double> cell_values)
    : domain_(std::move(domain)), values_(std::move(cell_values)) {
  if (static_cast<std::int64_t>(values_.size()) != domain_.cell_count())
    throw std::invalid_argument("grid function: one value per cell required");
  for (double v : values_)
    if (!std::isfinite(v))
      throw std::invalid_argument("grid function: non-finite value");
}

GridFunction GridFunction::from_function(
    const GridDomain& domain, const std::function<double(const std::vector<double>&)>& f,
    Sample sample) {
  std::vector<double> values(static_cast<std::size_t>(domain.cell_count()), 0.0);
  for (std::int64_t i = 0; i < domain.cell_count(); ++i)
    values[static_cast<std::size_t>(i)] =
        f(sample == Sample::center ? domain.cell_center(i) : domain.cell_origin(i));
  return GridFunction(domain, std::move(values));
}

GridFunction GridFunction::constant(const GridDomain& domain, double value) {
  return GridFunction(domain,
                      std::vector<double>(static_cast<std::size_t>(domain.cell_count()), value));
}

double GridFunction::min_inside() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < size(); ++i)
    if (domain_.inside(i)) m = std::min(m, values_[static_cast<std::size_t>(i)]);
  return m;
}

double GridFunction::max_inside() const {
  double m = -std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < size(); ++i)
    if (domain_.inside(i)) m = std::max(m, values_[static_cast<std::size_t>(i)]);
  return m;
}

GridSet::GridSet(GridDomain domain, std::vector<std::uint8_t> member)
    : domain_(std::move(domain)), member_(std::move(member)) {
  if (static_cast<std::int64_t>(member_.size()) != domain_.cell_count())
    throw std::invalid_argument("grid set: one flag per cell required");
  for (std::int64_t i = 0; i < domain_.cell_count(); ++i)
    if (member_[static_cast<std::size_t>(i)] && !domain_.inside(i))
      throw std::invalid_argument("grid set: member cell outside domain");
}

GridSet GridSet::empty(const GridDomain& domain) {
  return GridSet(domain,
                 std::vector<std::uint8_t>(static_cast<std::size_t>(domain.cell_count()), 0));
}

GridSet GridSet::full(const GridDomain& domain) {
  std::vector<std::uint8_t> m(static_cast<std::size_t>(domain.cell_count()), 0);
  for (std::int64_t i = 0; i < domain.cell_count(); ++i)
    m[static_cast<std::size_t>(i)] = domain.inside(i) ? 1 : 0;
  return GridSet(domain, std::move(m));
}

std::int64_t GridSet::count() const {
  std::int64_t n = 0;
  for (auto b : member_) n += b;
  return n;
}

GridFunction GridSet::indicator() const {
  std::vector<double> v(member_.size());
  for (std::size_t i = 0; i < member_.size(); ++i) v[i] = member_[i] ? 1.0 : 0.0;
  return GridFunction(domain_, std::move(v));
}

namespace {
void require_same_domain(const GridDomain& a, const GridDomain& b) {
  if (!a.same_layout(b)) throw std::invalid_argument("domain mismatch");
}
}  // namespace

GridSet set_intersection(const GridSet& a, const GridSet& b) {
  require_same_domain(a.domain(), b.domain());
  std::vector<std::uint8_t> m(a.member().size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = a.member()[i] & b.member()[i];
  return GridSet(a.domain(), std::move(m));
}

GridSet set_union(const GridSet& a, const GridSet& b) {
  require_same_domain(a.domain(), b.domain());
  std::vector<std::uint8_t> m(a.member().size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = a.member()[i] | b.member()[i];
  return GridSet(a.domain(), std::move(m));
}

GridSet set_complement(const GridSet& a) {
  std::vector<std::uint8_t> m(a.member().size(), 0);
  for (std::int64_t i = 0; i < a.domain().cell_count(); ++i)
    m[static_cast<std::size_t>(i)] =
        (a.domain().inside(i) && !a.contains(i)) ? 1 : 0;
  return GridSet(a.domain(), std::move(m));
}

GridFunction pointwise_min(const GridFunction& u, const GridFunction& v) {
  require_same_domain(u.domain(), v.domain());
  std::vector<double> w(u.values().size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::min(u.values()[i], v.values()[i]);
  return GridFunction(u.domain(), std::move(w));
}

GridFunction pointwise_max(const GridFunction& u, const GridFunction& v) {
  require_same_domain(u.domain(), v.domain());
  std::vector<double> w(u.values().size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::max(u.values()[i], v.values()[i]);
  return GridFunction(u.domain(), std::move(w));
}

GridFunction add_constant(const GridFunction& u, double c) {
  std::vector<double> w(u.values());
  for (auto& x : w) x += c;
  return GridFunction(u.domain(), std::move(w));
}

GridFunction scale(const GridFunction& u, double lambda) {
  std::vector<double> w(u.values());
  for (auto& x : w) x *= lambda;
  return GridFunction(u.domain(), std::move(w));
}

GridSet super_level_set(const GridFunction& u, double s) {
  std::vector<std::uint8_t> m(u.values().size(), 0);
  for (std::int64_t i = 0; i < u.size(); ++i)
    m[static_cast<std::size_t>(i)] = (u.domain().inside(i) && u[i] > s) ? 1 : 0;
  return GridSet(u.domain(), std::move(m));
}

}  // namespace anitv
