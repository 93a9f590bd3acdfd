#include "anitv/functional.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

namespace anitv {

namespace {

void require_dim(const GridDomain& domain, const Stencil& sigma) {
  if (domain.dim() != sigma.dim())
    throw std::invalid_argument("stencil/domain dimension mismatch");
}

double h_power(double h, int exponent) {
  double p = 1.0;
  for (int i = 0; i < exponent; ++i) p *= h;
  return p;
}

}  // namespace

InteriorNodes interior_nodes(const GridDomain& domain, const Stencil& sigma) {
  require_dim(domain, sigma);
  const int dim = domain.dim();
  InteriorNodes result;
  result.deltas.resize(sigma.size());
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    std::int64_t d = 0;
    for (int i = 0; i < dim; ++i)
      d += static_cast<std::int64_t>(sigma.offset(j)[i]) * domain.strides()[i];
    result.deltas[j] = d;
  }

  // odometer over the index box, lexicographic
  std::vector<std::int64_t> rel(dim, 0);
  const auto& extent = domain.extent();
  for (int i = 0; i < dim; ++i)
    if (extent[i] == 0) return result;
  std::int64_t flat = 0;
  while (true) {
    bool interior = true;
    for (std::size_t j = 0; j < sigma.size() && interior; ++j) {
      const auto& y = sigma.offset(j);
      for (int i = 0; i < dim; ++i) {
        const std::int64_t r = rel[i] + y[i];
        if (r < 0 || r >= extent[i]) {
          interior = false;
          break;
        }
      }
      if (interior && !domain.inside(flat + result.deltas[j])) interior = false;
    }
    if (interior) result.nodes.push_back(flat);

    int axis = dim - 1;
    while (axis >= 0) {
      if (++rel[axis] < extent[axis]) break;
      rel[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
    flat = 0;
    for (int i = 0; i < dim; ++i) flat += rel[i] * domain.strides()[i];
  }
  return result;
}

RealStencilVector gather(const GridFunction& u, const Stencil& sigma,
                         std::int64_t node_flat) {
  const GridDomain& domain = u.domain();
  require_dim(domain, sigma);
  const auto cell = domain.cell_at(node_flat);
  RealStencilVector out(sigma.size());
  std::vector<std::int64_t> neighbor(domain.dim());
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    for (int i = 0; i < domain.dim(); ++i)
      neighbor[i] = cell[i] + sigma.offset(j)[i];
    std::int64_t flat;
    try {
      flat = domain.flat_index(neighbor);
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("gather: node not interior for this stencil");
    }
    if (!domain.inside(flat))
      throw std::invalid_argument("gather: node not interior for this stencil");
    out[j] = u[flat];
  }
  return out;
}

double eval_Jh(const GridFunction& u, const StencilPotential& F) {
  return eval_Jh(u, F, interior_nodes(u.domain(), F.stencil()));
}

double eval_Jh(const GridFunction& u, const StencilPotential& F,
               const InteriorNodes& interior) {
  const std::size_t n = F.stencil().size();
  std::array<double, StencilPotential::kMaxOffsets> buf{};
  double sum = 0.0;
  for (std::int64_t node : interior.nodes) {
    for (std::size_t j = 0; j < n; ++j) buf[j] = u[node + interior.deltas[j]];
    sum += lovasz_extend(F, std::span<const double>(buf.data(), n));
  }
  return h_power(u.domain().h(), u.domain().dim() - 1) * sum;
}

double eval_Jh_set(const GridSet& E, const StencilPotential& F) {
  return eval_Jh_set(E, F, interior_nodes(E.domain(), F.stencil()));
}

double eval_Jh_set(const GridSet& E, const StencilPotential& F,
                   const InteriorNodes& interior) {
  const std::size_t n = F.stencil().size();
  double sum = 0.0;
  for (std::int64_t node : interior.nodes) {
    BinaryVector mask = 0;
    for (std::size_t j = 0; j < n; ++j)
      mask |= static_cast<BinaryVector>(E.contains(node + interior.deltas[j]) ? 1u : 0u)
              << j;
    sum += F.value(mask);
  }
  return h_power(E.domain().h(), E.domain().dim() - 1) * sum;
}

std::vector<double> eval_Jh_node_terms(const GridFunction& u,
                                       const StencilPotential& F) {
  const auto interior = interior_nodes(u.domain(), F.stencil());
  const std::size_t n = F.stencil().size();
  std::array<double, StencilPotential::kMaxOffsets> buf{};
  std::vector<double> terms;
  terms.reserve(interior.nodes.size());
  for (std::int64_t node : interior.nodes) {
    for (std::size_t j = 0; j < n; ++j) buf[j] = u[node + interior.deltas[j]];
    terms.push_back(lovasz_extend(F, std::span<const double>(buf.data(), n)));
  }
  return terms;
}

CoareaReport coarea_check(const GridFunction& u, const StencilPotential& F) {
  const auto interior = interior_nodes(u.domain(), F.stencil());
  CoareaReport report;
  report.lhs = eval_Jh(u, F, interior);

  std::set<double> distinct;
  for (std::int64_t i = 0; i < u.size(); ++i)
    if (u.domain().inside(i)) distinct.insert(u[i]);
  if (distinct.size() >= 2) {
    std::vector<double> levels(distinct.begin(), distinct.end());  // ascending
    for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
      // on (levels[j], levels[j+1]) the super-level set is {u > levels[j]}
      const GridSet e = super_level_set(u, levels[j]);
      report.rhs += (levels[j + 1] - levels[j]) * eval_Jh_set(e, F, interior);
    }
  }
  report.gap = std::abs(report.lhs - report.rhs);
  return report;
}

JhSubmodularityReport submodularity_of_Jh_check(const GridSet& e1, const GridSet& e2,
                                                const StencilPotential& F) {
  if (!e1.domain().same_layout(e2.domain()))
    throw std::invalid_argument("submodularity check: domain mismatch");
  const auto interior = interior_nodes(e1.domain(), F.stencil());
  JhSubmodularityReport report;
  report.meet = eval_Jh_set(set_intersection(e1, e2), F, interior);
  report.join = eval_Jh_set(set_union(e1, e2), F, interior);
  report.lhs1 = eval_Jh_set(e1, F, interior);
  report.lhs2 = eval_Jh_set(e2, F, interior);
  report.ok = report.meet + report.join <= report.lhs1 + report.lhs2 + 1e-10;
  return report;
}

TvBoundsReport total_variation_bounds_check(const GridFunction& u,
                                            const StencilPotential& F) {
  const Stencil& sigma = F.stencil();
  const auto interior = interior_nodes(u.domain(), sigma);
  const double hpow = h_power(u.domain().h(), u.domain().dim() - 1);

  TvBoundsReport report;
  report.coercivity_c = F.coercivity();
  report.jh = eval_Jh(u, F, interior);

  double tv1 = 0.0, tvr = 0.0;
  const std::int64_t origin_delta = interior.deltas[sigma.origin_index()];
  for (std::int64_t node : interior.nodes) {
    const double u0 = u[node + origin_delta];
    for (int axis = 0; axis < sigma.dim(); ++axis)
      tv1 += std::abs(u[node + interior.deltas[sigma.basis_index(axis)]] - u0);
    for (std::size_t j = 0; j < sigma.size(); ++j)
      tvr += std::abs(u[node + interior.deltas[j]] - u0);
  }
  report.disc_tv1 = hpow * tv1;
  report.disc_tv_rho = hpow * tvr;

  // F(w) <= upper_c * #{y : w(y) != w(0)} for binary w; extends by coarea
  double upper_c = 0.0;
  for (BinaryVector w = 0; w < F.table_size(); ++w) {
    if (F.value(w) <= 0.0) continue;
    const int at_origin = (w >> sigma.origin_index()) & 1;
    int differing = 0;
    for (std::size_t j = 0; j < sigma.size(); ++j)
      differing += (static_cast<int>((w >> j) & 1) != at_origin);
    upper_c = std::max(upper_c, F.value(w) / differing);
  }
  report.upper_c = upper_c;

  const double tol = 1e-10;
  report.lower_ok =
      report.coercivity_c * report.disc_tv1 <= report.jh + tol * (1.0 + report.jh);
  report.upper_ok = report.jh <= report.upper_c * report.disc_tv_rho +
                                     tol * (1.0 + report.upper_c * report.disc_tv_rho);
  return report;
}

}  // namespace anitv
