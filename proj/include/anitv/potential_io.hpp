#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "anitv/potential.hpp"

namespace anitv {

// Malformed potential file (format-level).  Structural violations of the
// potential itself (negative values, F(0) != 0, ...) surface as
// std::invalid_argument from the StencilPotential constructor instead.
class parse_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Text format, line oriented, '#' comments:
//   dim N
//   [symmetric_complement]
//   offsets
//   <N integers per line, first line must be the origin>
//   values
//   <bitmask value>          one line per entry
// A bitmask token consisting only of 0/1 digits with length == |Sigma| is
// read as binary (MSB first), otherwise as decimal.  With
// symmetric_complement each entry also fills its complement with the same
// value.  Every table entry must be covered exactly once; conflicting
// duplicates are errors.
StencilPotential read_potential(std::istream& in);
StencilPotential read_potential_file(const std::string& path);

void write_potential(std::ostream& out, const StencilPotential& F);
void write_potential_file(const std::string& path, const StencilPotential& F);

}  // namespace anitv
