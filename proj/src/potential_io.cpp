#include "anitv/potential_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "anitv/builtin_potentials.hpp"

namespace anitv {

namespace {

// strip comments and surrounding whitespace; empty result means skip line
std::string clean(const std::string& raw) {
  std::string s = raw;
  if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

bool next_line(std::istream& in, std::string& out) {
  std::string raw;
  while (std::getline(in, raw)) {
    out = clean(raw);
    if (!out.empty()) return true;
  }
  return false;
}

}  // namespace

StencilPotential read_potential(std::istream& in) {
  std::string line;
  int dim = 0;
  bool symmetric = false;

  if (!next_line(in, line)) throw parse_error("potential file: empty");
  {
    std::istringstream ss(line);
    std::string kw;
    ss >> kw >> dim;
    if (kw != "dim" || ss.fail() || dim < 1)
      throw parse_error("potential file: expected 'dim N' header");
  }

  if (!next_line(in, line)) throw parse_error("potential file: truncated");
  if (line == "symmetric_complement") {
    symmetric = true;
    if (!next_line(in, line)) throw parse_error("potential file: truncated");
  }
  if (line != "offsets")
    throw parse_error("potential file: expected 'offsets' section");

  std::vector<std::vector<int>> offsets;
  while (next_line(in, line)) {
    if (line == "values") break;
    std::istringstream ss(line);
    std::vector<int> y(dim);
    for (int i = 0; i < dim; ++i) ss >> y[i];
    if (ss.fail()) throw parse_error("potential file: bad offset line '" + line + "'");
    std::string extra;
    if (ss >> extra) throw parse_error("potential file: trailing tokens in offset line");
    offsets.push_back(std::move(y));
  }
  if (line != "values")
    throw parse_error("potential file: missing 'values' section");
  if (offsets.empty()) throw parse_error("potential file: no offsets");
  for (int c : offsets.front())
    if (c != 0) throw parse_error("potential file: first offset must be the origin");
  if (offsets.size() > StencilPotential::kMaxOffsets)
    throw parse_error("potential file: more than 20 offsets");

  const std::size_t n = offsets.size();
  const std::size_t table = std::size_t{1} << n;
  std::vector<double> values(table, 0.0);
  std::vector<char> defined(table, 0);

  auto define = [&](std::size_t mask, double v) {
    if (defined[mask] && values[mask] != v)
      throw parse_error("potential file: conflicting duplicate for bitmask " +
                        std::to_string(mask));
    defined[mask] = 1;
    values[mask] = v;
  };

  while (next_line(in, line)) {
    std::istringstream ss(line);
    std::string mask_tok;
    double v = 0.0;
    ss >> mask_tok >> v;
    if (ss.fail())
      throw parse_error("potential file: bad value line '" + line + "'");

    std::size_t mask = 0;
    const bool binary_form =
        mask_tok.size() == n &&
        mask_tok.find_first_not_of("01") == std::string::npos;
    if (binary_form) {
      for (std::size_t i = 0; i < n; ++i)
        if (mask_tok[n - 1 - i] == '1') mask |= std::size_t{1} << i;
    } else {
      try {
        std::size_t used = 0;
        mask = std::stoull(mask_tok, &used);
        if (used != mask_tok.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw parse_error("potential file: bad bitmask '" + mask_tok + "'");
      }
    }
    if (mask >= table)
      throw parse_error("potential file: bitmask out of range '" + mask_tok + "'");
    define(mask, v);
    if (symmetric) define(~mask & (table - 1), v);
  }

  for (std::size_t m = 0; m < table; ++m)
    if (!defined[m])
      throw parse_error("potential file: missing entry for bitmask " +
                        std::to_string(m));

  return StencilPotential(Stencil(dim, std::move(offsets)), std::move(values));
}

StencilPotential read_potential_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open potential file: " + path);
  return read_potential(in);
}

void write_potential(std::ostream& out, const StencilPotential& F) {
  const auto& st = F.stencil();
  out << "dim " << st.dim() << "\n";
  out << "offsets\n";
  // the origin must come first in the file; emit it, then the rest in order
  out.precision(17);
  const auto& origin = st.offset(st.origin_index());
  auto emit_offset = [&](const std::vector<int>& y) {
    for (std::size_t i = 0; i < y.size(); ++i)
      out << (i ? " " : "") << y[i];
    out << "\n";
  };
  emit_offset(origin);
  for (std::size_t i = 0; i < st.size(); ++i)
    if (i != st.origin_index()) emit_offset(st.offset(i));
  out << "values\n";
  // table indices are relative to the file's offset order (origin first)
  std::vector<std::size_t> newbit(st.size());
  newbit[st.origin_index()] = 0;
  for (std::size_t i = 0, next = 1; i < st.size(); ++i)
    if (i != st.origin_index()) newbit[i] = next++;
  for (std::size_t m = 0; m < F.table_size(); ++m) {
    std::size_t orig = 0;
    for (std::size_t i = 0; i < st.size(); ++i)
      if (m & (std::size_t{1} << newbit[i])) orig |= std::size_t{1} << i;
    out << mask_to_string(static_cast<BinaryVector>(m), st.size()) << " "
        << F.value(static_cast<BinaryVector>(orig)) << "\n";
  }
}

void write_potential_file(const std::string& path, const StencilPotential& F) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_potential(out, F);
}

}  // namespace anitv
