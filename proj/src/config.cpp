#include "pswg/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace pswg {

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> defaults = {
      {"convolve_rel", 1e-6},          // FFT vs direct convolution agreement
      {"deviation_normalized", 0.5},   // sup deviation over N ceiling
      {"indicator_round", 0.5},        // integer-count rounding threshold
      {"l4_rel", 1e-9},                // fourth-moment identity agreement
      {"mean_value", 0.2},             // |mean - 1| over the full range
      {"mean_value_progression", 0.3}, // |mean - 1| over subprogressions
      {"parseval_rel", 1e-9},          // power identity agreement
      {"pi_gamma_ratio", 0.25},        // |count/predicted - 1| ceiling
      {"restriction_spread", 4.0},     // max/min moment ratio across sizes
      {"runtime_local_s", 60.0},       // residue-class sweep time budget
      {"runtime_ps_exactness_s", 60.0},// membership cross-check time budget
      {"runtime_scan_s", 600.0},       // exception scan time budget
  };
  return defaults;
}

RunConfig::RunConfig() : tolerances(default_tolerances()) {}

namespace {

u64 parse_u64_value(const std::string& key, const std::string& s) {
  u64 v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("config: bad integer for " + key + ": '" + s + "'");
  return v;
}

double parse_double_value(const std::string& key, const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": '" + s + "'");
  }
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

void RunConfig::apply(const std::string& key, const std::string& value) {
  if (key == "sieve_limit") {
    sieve_limit = parse_u64_value(key, value);
  } else if (key == "w") {
    w = parse_u64_value(key, value);
  } else if (key == "gammas") {
    std::vector<GammaParam> parsed;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) parsed.push_back(GammaParam::parse(item));
    }
    if (parsed.empty())
      throw std::invalid_argument("config: gammas must list at least one exponent");
    gammas = std::move(parsed);
  } else if (key == "grid_oversample") {
    grid_oversample = static_cast<unsigned>(parse_u64_value(key, value));
  } else if (key == "threads") {
    threads = static_cast<unsigned>(parse_u64_value(key, value));
  } else if (key == "seed") {
    seed = parse_u64_value(key, value);
  } else if (key == "brute_threshold") {
    brute_threshold = parse_u64_value(key, value);
  } else if (key == "output_dir") {
    output_dir = value;
  } else if (key.rfind("tol.", 0) == 0) {
    std::string name = key.substr(4);
    if (default_tolerances().count(name) == 0)
      throw std::invalid_argument("config: unknown tolerance '" + name + "'");
    tolerances[name] = parse_double_value(key, value);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  RunConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key = value");
    cfg.apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  if (sieve_limit < 2)
    throw std::invalid_argument("config: sieve_limit must be >= 2");
  if (sieve_limit > (u64{1} << 34))
    throw std::invalid_argument("config: sieve_limit above supported 2^34");
  if (w < 2) throw std::invalid_argument("config: w must be >= 2");
  if (gammas.empty())
    throw std::invalid_argument("config: gammas must be nonempty");
  if (grid_oversample < 8)
    throw std::invalid_argument("config: grid_oversample must be >= 8");
  if (brute_threshold < 1)
    throw std::invalid_argument("config: brute_threshold must be >= 1");
  for (const auto& [name, unused] : default_tolerances()) {
    (void)unused;
    if (tolerances.count(name) == 0)
      throw std::invalid_argument("config: missing tolerance '" + name + "'");
  }
}

double RunConfig::tol(const std::string& name) const {
  auto it = tolerances.find(name);
  if (it == tolerances.end())
    throw std::invalid_argument("config: unknown tolerance '" + name + "'");
  return it->second;
}

}  // namespace pswg
