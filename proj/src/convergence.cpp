#include "anitv/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anitv {

std::vector<double> dyadic_schedule(int k_coarse, int k_fine) {
  if (k_coarse > k_fine) throw std::invalid_argument("dyadic_schedule: bad range");
  std::vector<double> hs;
  for (int k = k_coarse; k <= k_fine; ++k) hs.push_back(std::ldexp(1.0, -k));
  return hs;
}

namespace {

void validate_schedule(const std::vector<double>& hs, const Stencil& sigma,
                       std::span<const double> lo, std::span<const double> hi) {
  if (hs.empty()) throw std::invalid_argument("experiment: empty h schedule");
  double min_side = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lo.size(); ++i) min_side = std::min(min_side, hi[i] - lo[i]);
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (!(hs[i] > 0.0)) throw std::invalid_argument("experiment: h must be positive");
    if (i > 0 && !(hs[i] < hs[i - 1]))
      throw std::invalid_argument("experiment: h schedule must strictly decrease");
    if (!(sigma.radius() * hs[i] < min_side))
      throw std::invalid_argument("experiment: h too large for window");
  }
}

ConvergenceRow make_row(double h, double jh, double limit) {
  ConvergenceRow row;
  row.h = h;
  row.jh = jh;
  row.limit = limit;
  row.abs_err = std::abs(jh - limit);
  row.err_over_h = row.abs_err / h;
  return row;
}

}  // namespace

GridSet rasterize_halfspace(std::span<const double> nu, double offset,
                            const GridDomain& domain) {
  if (static_cast<int>(nu.size()) != domain.dim())
    throw std::invalid_argument("rasterize_halfspace: dimension mismatch");
  GridSet set = GridSet::empty(domain);
  for (std::int64_t f = 0; f < domain.cell_count(); ++f) {
    if (!domain.inside(f)) continue;
    const auto center = domain.cell_center(f);
    double dot = 0.0;
    for (int i = 0; i < domain.dim(); ++i) dot += center[i] * nu[i];
    if (dot > offset) set.set(f, true);
  }
  return set;
}

GridSet rasterize_polygon(const Polygon& poly, const GridDomain& domain,
                          std::array<double, 2> sample_offset) {
  if (domain.dim() != 2)
    throw std::invalid_argument("rasterize_polygon: 2D domains only");
  GridSet set = GridSet::empty(domain);
  const double h = domain.h();
  for (std::int64_t f = 0; f < domain.cell_count(); ++f) {
    if (!domain.inside(f)) continue;
    const auto origin = domain.cell_origin(f);
    if (point_in_polygon(poly, origin[0] + sample_offset[0] * h,
                         origin[1] + sample_offset[1] * h))
      set.set(f, true);
  }
  return set;
}

std::vector<ConvergenceRow> run_halfspace_experiment(const HalfspaceExperiment& exp,
                                                     const StencilPotential& F) {
  const Stencil& sigma = F.stencil();
  if (static_cast<int>(exp.nu.size()) != sigma.dim())
    throw std::invalid_argument("halfspace experiment: dimension mismatch");
  if (exp.window_lo.size() != exp.nu.size() || exp.window_hi.size() != exp.nu.size())
    throw std::invalid_argument("halfspace experiment: bad window");
  double norm = 0.0;
  for (double x : exp.nu) norm += x * x;
  norm = std::sqrt(norm);
  if (std::abs(norm - 1.0) > 1e-9)
    throw std::invalid_argument("halfspace experiment: nu must be a unit vector");
  validate_schedule(exp.h_schedule, sigma, exp.window_lo, exp.window_hi);

  const AnisotropyDensity density(F);
  const double interface =
      hyperplane_box_measure(exp.nu, exp.offset, exp.window_lo, exp.window_hi);
  const double limit = density.phi(exp.nu) * interface;

  std::vector<ConvergenceRow> rows;
  for (double h : exp.h_schedule) {
    const GridDomain dom = GridDomain::box(h, exp.window_lo, exp.window_hi);
    const GridSet raster = rasterize_halfspace(exp.nu, exp.offset, dom);
    rows.push_back(make_row(h, eval_Jh_set(raster, F), limit));
  }
  return rows;
}

namespace {

double polygon_window_margin(const Polygon& poly, std::span<const double> lo,
                             std::span<const double> hi) {
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& v : poly.vertices) {
    margin = std::min({margin, v[0] - lo[0], hi[0] - v[0], v[1] - lo[1],
                       hi[1] - v[1]});
  }
  return margin;
}

}  // namespace

std::vector<ConvergenceRow> run_polygon_experiment(const PolygonExperiment& exp,
                                                   const StencilPotential& F) {
  const Stencil& sigma = F.stencil();
  if (sigma.dim() != 2)
    throw std::invalid_argument("polygon experiment: 2D potentials only");
  validate_polygon(exp.polygon);
  const std::vector<double> lo(exp.window_lo.begin(), exp.window_lo.end());
  const std::vector<double> hi(exp.window_hi.begin(), exp.window_hi.end());
  validate_schedule(exp.h_schedule, sigma, lo, hi);
  if (!(polygon_window_margin(exp.polygon, lo, hi) >
        sigma.radius() * exp.h_schedule.front()))
    throw std::invalid_argument("polygon experiment: polygon touches window margin");

  const AnisotropyDensity density(F);
  const double limit =
      polyhedral_perimeter(density, {exp.polygon, exp.window_lo, exp.window_hi});

  std::vector<ConvergenceRow> rows;
  for (double h : exp.h_schedule) {
    const GridDomain dom = GridDomain::box(h, lo, hi);
    const GridSet raster = rasterize_polygon(exp.polygon, dom, exp.sample_offset);
    rows.push_back(make_row(h, eval_Jh_set(raster, F), limit));
  }
  return rows;
}

std::vector<ConvergenceRow> run_function_tv_experiment(const FunctionTvExperiment& exp,
                                                       const StencilPotential& F) {
  const Stencil& sigma = F.stencil();
  if (sigma.dim() != 2)
    throw std::invalid_argument("function_tv experiment: 2D potentials only");
  // no layers means u is constant: every row compares 0 against 0
  const std::vector<double> lo(exp.window_lo.begin(), exp.window_lo.end());
  const std::vector<double> hi(exp.window_hi.begin(), exp.window_hi.end());
  validate_schedule(exp.h_schedule, sigma, lo, hi);

  for (std::size_t j = 0; j < exp.layers.size(); ++j) {
    const auto& layer = exp.layers[j];
    validate_polygon(layer.polygon);
    if (!(layer.coefficient > 0.0))
      throw std::invalid_argument("function_tv experiment: coefficients must be positive");
    if (!(polygon_window_margin(layer.polygon, lo, hi) >
          sigma.radius() * exp.h_schedule.front()))
      throw std::invalid_argument("function_tv experiment: polygon touches window margin");
    if (j > 0) {
      for (const auto& v : layer.polygon.vertices)
        if (!point_in_polygon(exp.layers[j - 1].polygon, v[0], v[1]))
          throw std::invalid_argument("function_tv experiment: layers must be nested");
    }
  }

  // level-set sum: the super-level set on the j-th cumulative gap is P_j
  const AnisotropyDensity density(F);
  double limit = 0.0;
  for (const auto& layer : exp.layers)
    limit += layer.coefficient *
             polyhedral_perimeter(density, {layer.polygon, exp.window_lo, exp.window_hi});

  std::vector<ConvergenceRow> rows;
  for (double h : exp.h_schedule) {
    const GridDomain dom = GridDomain::box(h, lo, hi);
    std::vector<double> values(static_cast<std::size_t>(dom.cell_count()), 0.0);
    for (const auto& layer : exp.layers) {
      const GridSet raster = rasterize_polygon(layer.polygon, dom, exp.sample_offset);
      for (std::int64_t f = 0; f < dom.cell_count(); ++f)
        if (raster.contains(f)) values[static_cast<std::size_t>(f)] += layer.coefficient;
    }
    const GridFunction u(dom, std::move(values));
    rows.push_back(make_row(h, eval_Jh(u, F), limit));
  }
  return rows;
}

}  // namespace anitv
