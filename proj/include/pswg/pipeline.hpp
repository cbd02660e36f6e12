#pragma once

#include <optional>

#include "pswg/config.hpp"
#include "pswg/json_writer.hpp"
#include "pswg/represent.hpp"

namespace pswg {

struct PipelineOptions {
  // Dyadic sequence lengths for the deviation and moment-ratio series.
  std::vector<u64> trend_lengths;
  // Prime ranges for the transfer-gap series.
  std::vector<u64> trend_xs;
  // Angle for the transfer-gap series.
  double trend_theta = 0.41421356237309504880;  // frac(sqrt 2)
};

struct PipelineResult {
  RunConfig config;
  u64 n0 = 0;
  WTrickContext ctx;
  std::array<u64, 5> offsets{};
  std::array<GammaParam, 5> gammas;
  u64 scaled_target = 0;

  struct SlotStats {
    u64 b = 0;
    GammaParam gamma;
    double mean = 0;
    double sup_dev = 0;
    u64 dev_grid = 0;
    double normalized_dev = 0;
    double restriction = 0;
    bool restriction_converged = false;
  };
  std::vector<SlotStats> slots;

  double count_weighted = 0;
  bool found = false;
  std::optional<Witness> witness;
  bool witness_verified = false;
  std::optional<u64> count_exact;

  struct TrendPoint {
    u64 param = 0;
    double value = 0;
  };
  std::vector<TrendPoint> deviation_trend;
  std::vector<TrendPoint> restriction_trend;
  std::vector<TrendPoint> transfer_trend;
  double trend_theta = 0;
};

// End-to-end run for one target n0 == 5 (mod 24): rescaling context, local
// decomposition, the five weight arrays, their spectral statistics, the
// convolution count, a searched and re-verified witness, and (for small
// targets) the exact tuple count over all image primes.
PipelineResult run_pipeline(const RunConfig& config, u64 n0,
                            const PipelineOptions& opts = {});

JsonValue pipeline_report_json(const PipelineResult& result);
JsonValue scan_report_json(const ScanReport& report);
JsonValue local_report_json(const LocalSolveReport& report);
JsonValue sieve_summary_json(const PrimeTable& primes);

// Pulls the machine-readable series out of a pipeline or scan report and
// writes one CSV per series.  Returns the paths written; throws
// std::invalid_argument when the report holds no plottable series.
std::vector<std::string> extract_plot_csv(const std::string& report_json_text,
                                          const std::filesystem::path& outdir);

}  // namespace pswg
