#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pswg/gamma.hpp"

namespace pswg {

// Run parameters with their defaults.  A key=value file can override any
// entry; the acceptance thresholds live in `tolerances` so exploratory
// runs can loosen them without recompiling, while the shipped defaults
// are the checked-in reference values.
struct RunConfig {
  u64 sieve_limit = 10'000'000;
  u64 w = 3;
  std::vector<GammaParam> gammas = {GammaParam(97, 100)};
  unsigned grid_oversample = 8;
  unsigned threads = 0;  // 0 = all hardware threads
  u64 seed = 937162211;
  u64 brute_threshold = 20'000;
  std::string output_dir = ".";
  std::map<std::string, double> tolerances;

  RunConfig();

  // Parses "key = value" lines; '#' starts a comment.  Unknown keys and
  // malformed values are rejected.
  static RunConfig load(const std::filesystem::path& path);
  void apply(const std::string& key, const std::string& value);

  // Ensures every named tolerance is present and parameters are sane.
  void validate() const;

  double tol(const std::string& name) const;
};

// The tolerance names validate() requires, with their default values.
const std::map<std::string, double>& default_tolerances();

}  // namespace pswg
