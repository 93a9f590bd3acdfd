#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace anitv {

inline constexpr const char* kToolVersion = "anitv 1.0.0";

// Parsed command line: a subcommand plus key=value options.  A config=FILE
// option loads key=value lines from the file first; explicit command-line
// options override, repeated `layer` keys accumulate.
struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> options;
  std::vector<std::string> layers;
  std::uint64_t seed = 42;

  bool has(const std::string& key) const { return options.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback = {}) const;
  // header line recording tool version, seed and a hash of the full config
  std::string header() const;
};

// exit codes: 0 success, 1 validation failure, 2 parse/configuration error
int cmd_check(const RunConfig& config);
int cmd_anisotropy(const RunConfig& config);
int cmd_converge(const RunConfig& config);
int cmd_denoise(const RunConfig& config);
int cmd_selftest(const RunConfig& config);

int run_cli(const std::vector<std::string>& args);

}  // namespace anitv
