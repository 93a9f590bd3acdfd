#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anitv/stencil.hpp"

namespace anitv {

// A nonnegative potential F on binary vectors over a stencil, stored as a
// flat table of 2^|Sigma| values indexed by bitmask (bit i <-> offsets()[i]).
// Construction enforces: complete finite table, all values >= 0, and
// F(empty) = F(full) = 0 checked exactly.  Submodularity is *not* enforced
// here; use check_submodular().  Immutable after construction.
class StencilPotential {
public:
  // Table sizes beyond 2^20 mean the explicit-table design is wrong; reject.
  static constexpr std::size_t kMaxOffsets = 20;

  StencilPotential(Stencil stencil, std::vector<double> values);

  const Stencil& stencil() const { return stencil_; }
  std::size_t table_size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double value(BinaryVector u) const { return values_[u]; }
  double max_value() const { return max_value_; }
  BinaryVector full_mask() const {
    return static_cast<BinaryVector>(values_.size() - 1);
  }
  // Largest certified c with F(u) >= c * sum_i |u(e_i)-u(0)|; 0 if none.
  double coercivity() const { return coercivity_c_; }

private:
  Stencil stencil_;
  std::vector<double> values_;
  double max_value_ = 0.0;
  double coercivity_c_ = 0.0;
};

struct SubmodularityReport {
  bool ok = true;
  // witness pair when ok == false
  BinaryVector witness_u = 0;
  BinaryVector witness_v = 0;
  double violation = 0.0;  // F(u^v)+F(u|v) - F(u)-F(v) at the witness
};

// Exhaustive check of F(u^v)+F(u|v) <= F(u)+F(v) over all incomparable pairs,
// with slack 1e-12 * max(1, max F).  Comparable pairs hold with equality and
// are skipped.
SubmodularityReport check_submodular(const StencilPotential& F);

// Largest c >= 0 with F(u) >= c * sum_i |u(e_i)-u(0)| for all binary u,
// i.e. the min of F(u)/sum_i|u(e_i)-u(0)| over binary u with positive
// denominator.  Binary vectors suffice for all real u: both sides satisfy
// the coarea formula, so the inequality integrates from level sets.
double check_coercivity(const StencilPotential& F);

// Extension of F to real vectors via the level-set integral
// F(u) = integral of F(chi_{u>s}) ds, evaluated exactly by sort-and-sum over
// the distinct values of u (strict super-level sets; ties merge into one
// level and contribute a zero-width interval).  For binary u this returns
// the table value exactly.
double lovasz_extend(const StencilPotential& F, std::span<const double> u);

struct PropertyWitness {
  std::string property;
  RealStencilVector u;
  RealStencilVector v;  // empty when unused
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ExtensionPropertyReport {
  int samples = 0;
  bool homogeneity_ok = true;       // F(lambda u) = lambda F(u), lambda > 0
  bool shift_ok = true;             // F(u + c 1) = F(u)
  bool lattice_ok = true;           // F(u^v)+F(u|v) <= F(u)+F(v)
  bool convexity_ok = true;         // F(t u + (1-t) v) <= t F(u)+(1-t) F(v)
  std::vector<PropertyWitness> witnesses;
  bool all_ok() const {
    return homogeneity_ok && shift_ok && lattice_ok && convexity_ok;
  }
};

// Randomized verification of the elementary extension properties on `samples`
// random real vectors, relative tolerance 1e-9.  The lattice inequality and
// convexity are expected to fail for non-submodular F.
ExtensionPropertyReport extension_properties_check(const StencilPotential& F,
                                                   int samples,
                                                   std::uint64_t rng_seed);

}  // namespace anitv
