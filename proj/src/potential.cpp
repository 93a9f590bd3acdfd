#include "anitv/potential.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

namespace anitv {

StencilPotential::StencilPotential(Stencil stencil, std::vector<double> values)
    : stencil_(std::move(stencil)), values_(std::move(values)) {
  if (stencil_.size() > kMaxOffsets)
    throw std::invalid_argument("potential: stencil larger than 20 offsets");
  const std::size_t expected = std::size_t{1} << stencil_.size();
  if (values_.size() != expected)
    throw std::invalid_argument("potential: table must have 2^|Sigma| values");
  for (double v : values_) {
    if (!std::isfinite(v))
      throw std::invalid_argument("potential: non-finite table value");
    if (v < 0.0) throw std::invalid_argument("potential: negative table value");
    max_value_ = std::max(max_value_, v);
  }
  if (values_.front() != 0.0)
    throw std::invalid_argument("potential: F(empty) must be exactly 0");
  if (values_.back() != 0.0)
    throw std::invalid_argument("potential: F(full) must be exactly 0");

  // largest certified coercivity constant, from binary vectors
  double c = std::numeric_limits<double>::infinity();
  const int n = stencil_.dim();
  for (BinaryVector u = 0; u < values_.size(); ++u) {
    const int at_origin = (u >> stencil_.origin_index()) & 1;
    int denom = 0;
    for (int axis = 0; axis < n; ++axis)
      denom += std::abs(static_cast<int>((u >> stencil_.basis_index(axis)) & 1) -
                        at_origin);
    if (denom > 0) c = std::min(c, values_[u] / denom);
  }
  coercivity_c_ = std::isfinite(c) ? c : 0.0;
}

SubmodularityReport check_submodular(const StencilPotential& F) {
  const std::size_t table = F.table_size();
  const double slack = 1e-12 * std::max(1.0, F.max_value());
  SubmodularityReport report;
  for (BinaryVector u = 0; u < table; ++u) {
    for (BinaryVector v = u + 1; v < table; ++v) {
      const BinaryVector meet = u & v;
      if (meet == u || meet == v) continue;  // comparable, trivially equal
      const double gap =
          F.value(meet) + F.value(u | v) - F.value(u) - F.value(v);
      if (gap > slack) {
        report.ok = false;
        report.witness_u = u;
        report.witness_v = v;
        report.violation = gap;
        return report;
      }
    }
  }
  return report;
}

double check_coercivity(const StencilPotential& F) { return F.coercivity(); }

double lovasz_extend(const StencilPotential& F, std::span<const double> u) {
  const std::size_t n = F.stencil().size();
  if (u.size() != n)
    throw std::invalid_argument("lovasz_extend: entry count != |Sigma|");
  for (double x : u)
    if (!std::isfinite(x))
      throw std::domain_error("lovasz_extend: non-finite entry");

  // sort indices by value, descending; equal values merge into one level
  std::array<std::uint8_t, StencilPotential::kMaxOffsets> order;
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint8_t>(i);
  std::sort(order.begin(), order.begin() + n,
            [&u](std::uint8_t a, std::uint8_t b) {
              if (u[a] != u[b]) return u[a] > u[b];
              return a < b;
            });

  double total = 0.0;
  BinaryVector mask = 0;
  std::size_t i = 0;
  while (i < n) {
    const double level = u[order[i]];
    while (i < n && u[order[i]] == level) {
      mask |= BinaryVector{1} << order[i];
      ++i;
    }
    if (i < n) total += (level - u[order[i]]) * F.value(mask);
    // below min(u) the level set is full where F vanishes; nothing to add
  }
  return total;
}

namespace {

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

bool rel_le(double a, double b, double tol) {
  return a <= b + tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

ExtensionPropertyReport extension_properties_check(const StencilPotential& F,
                                                   int samples,
                                                   std::uint64_t rng_seed) {
  constexpr double kTol = 1e-9;
  const std::size_t n = F.stencil().size();
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.1, 4.0);
  std::uniform_real_distribution<double> tdist(0.0, 1.0);

  ExtensionPropertyReport report;
  report.samples = samples;
  auto draw = [&] {
    RealStencilVector w(n);
    for (auto& x : w) x = unit(rng);
    return w;
  };
  auto note = [&report](const char* prop, bool& flag, const RealStencilVector& u,
                        const RealStencilVector& v, double lhs, double rhs) {
    if (flag) report.witnesses.push_back({prop, u, v, lhs, rhs});
    flag = false;
  };

  for (int k = 0; k < samples; ++k) {
    const RealStencilVector u = draw();
    const RealStencilVector v = draw();
    const double fu = lovasz_extend(F, u);
    const double fv = lovasz_extend(F, v);

    const double lambda = pos(rng);
    RealStencilVector su(n);
    for (std::size_t i = 0; i < n; ++i) su[i] = lambda * u[i];
    if (!rel_close(lovasz_extend(F, su), lambda * fu, kTol))
      note("homogeneity", report.homogeneity_ok, u, {}, lovasz_extend(F, su),
           lambda * fu);

    const double c = 2.0 * unit(rng);
    RealStencilVector tu(n);
    for (std::size_t i = 0; i < n; ++i) tu[i] = u[i] + c;
    if (!rel_close(lovasz_extend(F, tu), fu, kTol))
      note("shift", report.shift_ok, u, {}, lovasz_extend(F, tu), fu);

    RealStencilVector lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(u[i], v[i]);
      hi[i] = std::max(u[i], v[i]);
    }
    if (!rel_le(lovasz_extend(F, lo) + lovasz_extend(F, hi), fu + fv, kTol))
      note("lattice", report.lattice_ok, u, v,
           lovasz_extend(F, lo) + lovasz_extend(F, hi), fu + fv);

    const double t = tdist(rng);
    RealStencilVector mix(n);
    for (std::size_t i = 0; i < n; ++i) mix[i] = t * u[i] + (1.0 - t) * v[i];
    if (!rel_le(lovasz_extend(F, mix), t * fu + (1.0 - t) * fv, kTol))
      note("convexity", report.convexity_ok, u, v, lovasz_extend(F, mix),
           t * fu + (1.0 - t) * fv);
  }
  return report;
}

}  // namespace anitv
