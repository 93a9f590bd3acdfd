#include "anitv/denoise.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

namespace anitv {

namespace {

double h_power(double h, int exponent) {
  double p = 1.0;
  for (int i = 0; i < exponent; ++i) p *= h;
  return p;
}

void validate_problem(const DenoiseProblem& prob) {
  if (prob.g.domain().dim() != prob.potential.stencil().dim())
    throw std::invalid_argument("denoise: potential/domain dimension mismatch");
  if (!(prob.fidelity_weight > 0.0))
    throw std::invalid_argument("denoise: fidelity weight must be positive");
  const auto& grid = prob.level_grid;
  if (grid.empty()) throw std::invalid_argument("denoise: empty level grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("denoise: level grid must strictly increase");
  const double tol = 1e-12 * (1.0 + std::abs(prob.g.max_inside()));
  if (grid.front() > prob.g.min_inside() + tol ||
      grid.back() < prob.g.max_inside() - tol)
    throw std::invalid_argument("denoise: level grid must cover [min g, max g]");
}

// inside cells in lexicographic order and their subset-bit indices
struct CellIndexing {
  std::vector<std::int64_t> cells;
  std::vector<int> bit_of_cell;  // -1 for cells outside the domain
};

CellIndexing index_cells(const GridDomain& domain) {
  CellIndexing ix;
  ix.bit_of_cell.assign(static_cast<std::size_t>(domain.cell_count()), -1);
  for (std::int64_t f = 0; f < domain.cell_count(); ++f) {
    if (!domain.inside(f)) continue;
    ix.bit_of_cell[static_cast<std::size_t>(f)] = static_cast<int>(ix.cells.size());
    ix.cells.push_back(f);
  }
  return ix;
}

}  // namespace

std::vector<double> default_level_grid(const GridFunction& g, int refine) {
  std::set<double> distinct;
  for (std::int64_t f = 0; f < g.size(); ++f)
    if (g.domain().inside(f)) distinct.insert(g[f]);
  std::vector<double> grid(distinct.begin(), distinct.end());
  for (int round = 0; round <= refine; ++round) {
    std::vector<double> next;
    next.reserve(grid.size() * 2);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      next.push_back(grid[i]);
      if (i + 1 < grid.size()) next.push_back(0.5 * (grid[i] + grid[i + 1]));
    }
    grid = std::move(next);
  }
  return grid;
}

double denoise_energy(const DenoiseProblem& prob, const GridFunction& u) {
  if (!u.domain().same_layout(prob.g.domain()))
    throw std::invalid_argument("denoise energy: domain mismatch");
  const GridDomain& dom = u.domain();
  double fid = 0.0;
  for (std::int64_t f = 0; f < dom.cell_count(); ++f) {
    if (!dom.inside(f)) continue;
    const double d = u[f] - prob.g[f];
    fid += d * d;
  }
  const double cell_volume = h_power(dom.h(), dom.dim());
  return eval_Jh(u, prob.potential) + prob.fidelity_weight * cell_volume * fid;
}

DenoiseResult solve_oracle(const DenoiseProblem& prob) {
  validate_problem(prob);
  const GridDomain& dom = prob.g.domain();
  const StencilPotential& F = prob.potential;
  const CellIndexing ix = index_cells(dom);
  const int n_cells = static_cast<int>(ix.cells.size());
  if (n_cells > 20)
    throw std::invalid_argument("solve_oracle: grid too large (more than 20 cells)");
  const std::vector<double>& grid = prob.level_grid;
  const int n_levels = static_cast<int>(grid.size());
  if (n_cells > 0 &&
      std::pow(static_cast<double>(n_levels), n_cells) > 1e8)
    throw std::invalid_argument(
        "solve_oracle: level grid too fine for the exhaustive cross-check");

  const auto interior = interior_nodes(dom, F.stencil());
  const std::size_t n_off = F.stencil().size();
  const double hpow = h_power(dom.h(), dom.dim() - 1);
  const double cell_volume = h_power(dom.h(), dom.dim());
  const double lambda = prob.fidelity_weight;

  // per interior node, the subset-bit index of each stencil neighbor
  std::vector<std::vector<int>> node_bits(interior.nodes.size());
  for (std::size_t k = 0; k < interior.nodes.size(); ++k) {
    node_bits[k].resize(n_off);
    for (std::size_t j = 0; j < n_off; ++j)
      node_bits[k][j] =
          ix.bit_of_cell[static_cast<std::size_t>(interior.nodes[k] + interior.deltas[j])];
  }

  auto set_cost = [&](std::uint32_t subset, const std::vector<double>& weights) {
    double j_part = 0.0;
    for (const auto& bits : node_bits) {
      BinaryVector mask = 0;
      for (std::size_t j = 0; j < n_off; ++j)
        mask |= ((subset >> bits[j]) & 1u) << j;
      j_part += F.value(mask);
    }
    double w_part = 0.0;
    for (int b = 0; b < n_cells; ++b)
      if ((subset >> b) & 1u) w_part += weights[static_cast<std::size_t>(b)];
    return hpow * j_part + w_part;
  };

  // per-gap binary problems at the gap midpoints, ties to the largest set
  const std::uint32_t n_subsets = n_cells >= 32 ? 0 : (std::uint32_t{1} << n_cells);
  std::vector<std::uint32_t> gap_sets;
  for (int j = 0; j + 1 < n_levels; ++j) {
    const double mid = 0.5 * (grid[j] + grid[j + 1]);
    std::vector<double> weights(static_cast<std::size_t>(n_cells));
    for (int b = 0; b < n_cells; ++b)
      weights[static_cast<std::size_t>(b)] =
          2.0 * lambda * cell_volume * (mid - prob.g[ix.cells[static_cast<std::size_t>(b)]]);

    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t s = 0; s < n_subsets; ++s)
      best = std::min(best, set_cost(s, weights));
    const double tie = 1e-12 * (1.0 + std::abs(best));
    std::uint32_t largest = 0;
    for (std::uint32_t s = 0; s < n_subsets; ++s)
      if (set_cost(s, weights) <= best + tie) largest |= s;
    gap_sets.push_back(largest);
  }

  // monotonicity: gap sets must be nested decreasing in the level
  for (std::size_t j = 0; j + 1 < gap_sets.size(); ++j)
    if (gap_sets[j + 1] & ~gap_sets[j])
      throw std::runtime_error(
          "solve_oracle: level-set monotonicity violated (non-submodular F?)");

  // u(x) = sup of levels whose gap set contains x; min level if in none
  std::vector<double> values(static_cast<std::size_t>(dom.cell_count()), grid.front());
  for (int b = 0; b < n_cells; ++b) {
    int idx = 0;
    for (std::size_t j = 0; j < gap_sets.size(); ++j)
      if ((gap_sets[j] >> b) & 1u) idx = static_cast<int>(j) + 1;
    values[static_cast<std::size_t>(ix.cells[static_cast<std::size_t>(b)])] =
        grid[static_cast<std::size_t>(idx)];
  }

  DenoiseResult result{.u = GridFunction(dom, std::move(values))};
  result.solver = DenoiseResult::Solver::oracle;
  result.energy = denoise_energy(prob, result.u);
  for (std::uint32_t s : gap_sets) {
    GridSet level = GridSet::empty(dom);
    for (int b = 0; b < n_cells; ++b)
      if ((s >> b) & 1u) level.set(ix.cells[static_cast<std::size_t>(b)], true);
    result.level_sets.push_back(std::move(level));
  }

  // second oracle: direct exhaustive search over grid-valued functions
  {
    std::vector<int> digits(static_cast<std::size_t>(n_cells), 0);
    std::array<double, StencilPotential::kMaxOffsets> buf{};
    double best = std::numeric_limits<double>::infinity();
    while (true) {
      double j_part = 0.0;
      for (const auto& bits : node_bits) {
        for (std::size_t j = 0; j < n_off; ++j)
          buf[j] = grid[static_cast<std::size_t>(digits[static_cast<std::size_t>(bits[j])])];
        j_part += lovasz_extend(F, std::span<const double>(buf.data(), n_off));
      }
      double fid = 0.0;
      for (int b = 0; b < n_cells; ++b) {
        const double d = grid[static_cast<std::size_t>(digits[static_cast<std::size_t>(b)])] -
                         prob.g[ix.cells[static_cast<std::size_t>(b)]];
        fid += d * d;
      }
      best = std::min(best, hpow * j_part + lambda * cell_volume * fid);

      int pos = 0;
      while (pos < n_cells && ++digits[static_cast<std::size_t>(pos)] == n_levels) {
        digits[static_cast<std::size_t>(pos)] = 0;
        ++pos;
      }
      if (pos == n_cells) break;
    }
    result.exhaustive_energy = n_cells > 0 ? best : result.energy;
  }

  if (std::abs(result.energy - result.exhaustive_energy) >
      1e-9 * std::max(1.0, std::abs(result.exhaustive_energy)))
    throw std::runtime_error("solve_oracle: level-set and exhaustive oracles disagree");
  return result;
}

DenoiseResult solve_first_order(const DenoiseProblem& prob,
                                const FirstOrderOptions& opts) {
  validate_problem(prob);
  const GridDomain& dom = prob.g.domain();
  const StencilPotential& F = prob.potential;
  const auto interior = interior_nodes(dom, F.stencil());
  const std::size_t n_off = F.stencil().size();
  const double hpow = h_power(dom.h(), dom.dim() - 1);
  const double cell_volume = h_power(dom.h(), dom.dim());
  const double lambda = prob.fidelity_weight;
  const double lo_bound = prob.g.min_inside();
  const double hi_bound = prob.g.max_inside();
  const double mu = 2.0 * lambda * cell_volume;  // strong convexity modulus

  GridFunction u = opts.init ? *opts.init : prob.g;
  if (!u.domain().same_layout(dom))
    throw std::invalid_argument("solve_first_order: init domain mismatch");
  for (std::int64_t f = 0; f < dom.cell_count(); ++f)
    if (dom.inside(f)) u[f] = std::clamp(u[f], lo_bound, hi_bound);

  DenoiseResult result{.u = u};
  result.solver = DenoiseResult::Solver::first_order;
  result.energy = std::numeric_limits<double>::infinity();

  std::vector<double> grad(static_cast<std::size_t>(dom.cell_count()), 0.0);
  std::array<double, StencilPotential::kMaxOffsets> buf{};
  std::array<std::uint8_t, StencilPotential::kMaxOffsets> order{};
  double ckpt_energy = std::numeric_limits<double>::infinity();
  int iter = 0;
  result.converged = false;

  for (; iter < opts.max_iter; ++iter) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double j_sum = 0.0;
    for (std::int64_t node : interior.nodes) {
      for (std::size_t j = 0; j < n_off; ++j) {
        buf[j] = u[node + interior.deltas[j]];
        order[j] = static_cast<std::uint8_t>(j);
      }
      std::sort(order.begin(), order.begin() + n_off,
                [&](std::uint8_t a, std::uint8_t b) {
                  if (buf[a] != buf[b]) return buf[a] > buf[b];
                  return a < b;
                });
      // greedy subgradient along the sorted prefix chain
      BinaryVector mask = 0;
      double prev = 0.0;
      for (std::size_t i = 0; i < n_off; ++i) {
        mask |= BinaryVector{1} << order[i];
        const double fi = F.value(mask);
        const double w = fi - prev;
        prev = fi;
        grad[static_cast<std::size_t>(node + interior.deltas[order[i]])] += hpow * w;
        j_sum += w * buf[order[i]];
      }
    }

    double fid = 0.0;
    for (std::int64_t f = 0; f < dom.cell_count(); ++f) {
      if (!dom.inside(f)) continue;
      const double d = u[f] - prob.g[f];
      fid += d * d;
    }
    const double energy = hpow * j_sum + lambda * cell_volume * fid;
    if (energy < result.energy) {
      result.energy = energy;
      result.u = u;
    }

    if (iter % opts.checkpoint_every == 0) {
      const double residual =
          std::isfinite(ckpt_energy)
              ? (ckpt_energy - result.energy) / std::max(1.0, std::abs(result.energy))
              : 0.0;
      result.trace.push_back({iter, result.energy, residual});
      if (iter > 0 && residual >= 0.0 && residual < opts.tol) {
        result.converged = true;
        result.residual = residual;
        ++iter;
        break;
      }
      ckpt_energy = result.energy;
      result.residual = residual;
    }

    // explicit subgradient step on J_h, implicit (proximal) step on the
    // quadratic fidelity: u <- (u + a (mu g - dJ)) / (1 + a mu), clamped
    const double step = 2.0 / (mu * (iter + 10.0));
    for (std::int64_t f = 0; f < dom.cell_count(); ++f)
      if (dom.inside(f))
        u[f] = std::clamp(
            (u[f] + step * (mu * prob.g[f] - grad[static_cast<std::size_t>(f)])) /
                (1.0 + step * mu),
            lo_bound, hi_bound);
  }
  result.iterations = iter;
  return result;
}

ConsistencyReport level_set_consistency_check(const DenoiseProblem& prob,
                                              const GridFunction& u,
                                              std::span<const double> thresholds,
                                              double tolerance) {
  validate_problem(prob);
  if (!u.domain().same_layout(prob.g.domain()))
    throw std::invalid_argument("consistency check: domain mismatch");
  const GridDomain& dom = u.domain();
  const StencilPotential& F = prob.potential;
  const auto interior = interior_nodes(dom, F.stencil());
  const std::size_t n_off = F.stencil().size();
  const double hpow = h_power(dom.h(), dom.dim() - 1);
  const double cell_volume = h_power(dom.h(), dom.dim());

  std::vector<std::uint8_t> is_interior(static_cast<std::size_t>(dom.cell_count()), 0);
  for (std::int64_t node : interior.nodes)
    is_interior[static_cast<std::size_t>(node)] = 1;

  ConsistencyReport report;
  for (double s : thresholds) {
    const GridSet level = super_level_set(u, s);
    for (std::int64_t c = 0; c < dom.cell_count(); ++c) {
      if (!dom.inside(c)) continue;
      const auto cell = dom.cell_at(c);
      double delta_j = 0.0;
      // nodes whose stencil reaches this cell: c - offset per offset
      std::vector<std::int64_t> probe(dom.dim());
      for (std::size_t j = 0; j < n_off; ++j) {
        const auto& y = F.stencil().offset(j);
        for (int i = 0; i < dom.dim(); ++i) probe[i] = cell[i] - y[i];
        std::int64_t node;
        try {
          node = dom.flat_index(probe);
        } catch (const std::out_of_range&) {
          continue;
        }
        if (!is_interior[static_cast<std::size_t>(node)]) continue;
        BinaryVector mask = 0;
        for (std::size_t jj = 0; jj < n_off; ++jj)
          mask |= static_cast<BinaryVector>(
                      level.contains(node + interior.deltas[jj]) ? 1u : 0u)
                  << jj;
        const BinaryVector flipped = mask ^ (BinaryVector{1} << j);
        delta_j += F.value(flipped) - F.value(mask);
      }
      const double w = 2.0 * prob.fidelity_weight * cell_volume * (s - prob.g[c]);
      const double delta =
          hpow * delta_j + (level.contains(c) ? -w : w);
      if (delta < -tolerance) {
        ++report.violations;
        if (delta < report.worst) {
          report.worst = delta;
          report.worst_threshold = s;
          report.worst_cell = c;
        }
      }
    }
  }
  return report;
}

}  // namespace anitv
