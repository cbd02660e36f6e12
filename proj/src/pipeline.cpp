#include "pswg/pipeline.hpp"

#include <json.hpp>

#include <cmath>

#include "pswg/io.hpp"
#include "pswg/spectral.hpp"

namespace pswg {

namespace {

std::array<GammaParam, 5> resolve_gammas(const RunConfig& config) {
  std::array<GammaParam, 5> out;
  if (config.gammas.size() == 1) {
    out.fill(config.gammas[0]);
  } else if (config.gammas.size() == 5) {
    std::copy(config.gammas.begin(), config.gammas.end(), out.begin());
  } else {
    throw std::invalid_argument("pipeline: gammas must list 1 or 5 exponents");
  }
  return out;
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& config, u64 n0,
                            const PipelineOptions& opts) {
  config.validate();
  if (n0 % 24 != 5)
    throw std::invalid_argument("pipeline: n0 must be 5 mod 24");

  PipelineResult r;
  r.config = config;
  r.n0 = n0;
  r.ctx = build_context(config.w, n0);
  r.gammas = resolve_gammas(config);
  r.offsets = local_decompose(n0, r.ctx);

  PrimeTable primes(config.sieve_limit, config.threads);

  std::vector<WeightedSequence> fs;
  fs.reserve(5);
  for (int i = 0; i < 5; ++i)
    fs.push_back(build_f(r.ctx, r.offsets[i], r.gammas[i], primes));

  for (int i = 0; i < 5; ++i) {
    PipelineResult::SlotStats s;
    s.b = r.offsets[i];
    s.gamma = r.gammas[i];
    ProgressionSpec full{0, 1, r.ctx.N};
    s.mean = mean_over_progression(fs[i], full);
    u64 m = static_cast<u64>(config.grid_oversample) * r.ctx.N;
    auto dev = sup_deviation(fs[i], m);
    s.sup_dev = dev.value;
    s.dev_grid = dev.grid_size;
    s.normalized_dev = dev.value / static_cast<double>(r.ctx.N);
    auto ratio = restriction_ratio(fs[i], 4.5);
    s.restriction = ratio.value;
    s.restriction_converged = ratio.converged;
    r.slots.push_back(s);
  }

  RepresentationQuery query{n0, r.ctx, r.gammas, r.offsets};
  r.scaled_target = query.scaled_target();
  std::array<const WeightedSequence*, 5> ptrs{&fs[0], &fs[1], &fs[2], &fs[3], &fs[4]};
  r.count_weighted = convolve_five(ptrs)[r.scaled_target];
  r.witness = witness_search(query, ptrs);
  r.found = r.witness.has_value();
  if (r.found) {
    r.witness_verified = verify_witness(query, *r.witness);
    if (!r.witness_verified)
      throw internal_error("pipeline: searched witness failed re-verification");
    if (r.count_weighted <= 0.0)
      throw internal_error("pipeline: witness exists but convolution count is not positive");
  } else if (r.count_weighted > 1e-3) {
    throw internal_error("pipeline: positive convolution count without witness");
  }

  if (n0 <= config.brute_threshold) {
    r.count_exact = brute_count(n0, r.gammas, primes, config.brute_threshold,
                                config.threads);
    if (r.found && *r.count_exact == 0)
      throw internal_error("pipeline: witness exists but exact count is zero");
  }

  r.trend_theta = opts.trend_theta;
  for (u64 n_len : opts.trend_lengths) {
    if (n_len < 2)
      throw std::invalid_argument("pipeline: trend lengths must be >= 2");
    u64 n0_syn = r.ctx.W * (n_len - 1) + 5;
    WTrickContext ctx_syn = build_context(config.w, n0_syn);
    if (ctx_syn.N != n_len)
      throw internal_error("pipeline: synthetic context length mismatch");
    WeightedSequence f = build_f(ctx_syn, r.offsets[0], r.gammas[0], primes);
    u64 m = static_cast<u64>(config.grid_oversample) * n_len;
    double dev = sup_deviation(f, m).value / static_cast<double>(n_len);
    r.deviation_trend.push_back({n_len, dev});
    r.restriction_trend.push_back({n_len, restriction_ratio(f, 4.5).value});
  }
  for (u64 x : opts.trend_xs) {
    // The run's exponent is probed as-is; range policing applies to the
    // standalone probe, not to series attached to a configured run.
    auto probe = transfer_probe(opts.trend_theta, x, r.gammas[0], primes, true);
    r.transfer_trend.push_back({x, probe.normalized_gap});
  }
  return r;
}

namespace {

JsonValue gamma_list_json(const std::array<GammaParam, 5>& gammas) {
  JsonValue arr = JsonValue::Array{};
  for (const auto& g : gammas) arr.push_back(g.str());
  return arr;
}

JsonValue trend_series_json(const std::vector<PipelineResult::TrendPoint>& series,
                            const char* param_name) {
  JsonValue arr = JsonValue::Array{};
  for (const auto& pt : series) {
    JsonValue item;
    item[param_name] = tagged(pt.param, "config");
    item["value"] = tagged(pt.value, "measured");
    arr.push_back(std::move(item));
  }
  return arr;
}

JsonValue config_json(const RunConfig& config) {
  JsonValue c;
  c["sieve_limit"] = tagged(config.sieve_limit, "config");
  c["w"] = tagged(config.w, "config");
  JsonValue gl = JsonValue::Array{};
  for (const auto& g : config.gammas) gl.push_back(g.str());
  c["gammas"] = std::move(gl);
  c["grid_oversample"] = tagged(static_cast<u64>(config.grid_oversample), "config");
  c["threads"] = tagged(static_cast<u64>(config.threads), "config");
  c["seed"] = tagged(config.seed, "config");
  c["brute_threshold"] = tagged(config.brute_threshold, "config");
  JsonValue tols;
  for (const auto& [name, value] : config.tolerances)
    tols[name] = tagged(value, "config");
  c["tolerances"] = std::move(tols);
  return c;
}

}  // namespace

JsonValue pipeline_report_json(const PipelineResult& r) {
  JsonValue doc;
  doc["command"] = "pipeline";
  doc["config"] = config_json(r.config);

  JsonValue ctx;
  ctx["w"] = tagged(r.ctx.w, "config");
  ctx["W"] = tagged(r.ctx.W, "formula");
  ctx["n0"] = tagged(r.ctx.n0, "config");
  ctx["N"] = tagged(r.ctx.N, "formula");
  ctx["phi_W"] = tagged(r.ctx.phi_W, "formula");
  doc["context"] = std::move(ctx);

  JsonValue local;
  local["offsets"] = tagged_array(
      std::vector<u64>(r.offsets.begin(), r.offsets.end()), "formula");
  u64 sum = 0;
  for (u64 b : r.offsets) sum += b;
  local["offset_sum_mod_W"] = tagged(sum % r.ctx.W, "formula");
  doc["local"] = std::move(local);

  JsonValue slots = JsonValue::Array{};
  for (const auto& s : r.slots) {
    JsonValue slot;
    slot["b"] = tagged(s.b, "formula");
    slot["gamma"] = s.gamma.str();
    slot["mean"] = tagged(s.mean, "measured");
    slot["sup_deviation"] = tagged(s.sup_dev, "measured");
    slot["deviation_grid"] = tagged(s.dev_grid, "config");
    slot["normalized_deviation"] = tagged(s.normalized_dev, "measured");
    slot["restriction_ratio"] = tagged(s.restriction, "measured");
    slot["restriction_converged"] = s.restriction_converged;
    slots.push_back(std::move(slot));
  }
  doc["slots"] = std::move(slots);

  JsonValue rep;
  rep["gammas"] = gamma_list_json(r.gammas);
  rep["scaled_target"] = tagged(r.scaled_target, "formula");
  rep["count_weighted"] = tagged(r.count_weighted, "measured");
  rep["found"] = r.found;
  if (r.witness) {
    JsonValue w;
    w["p"] = tagged_array(
        std::vector<u64>(r.witness->p.begin(), r.witness->p.end()), "measured");
    w["verified"] = r.witness_verified;
    rep["witness"] = std::move(w);
  } else {
    rep["witness"] = nullptr;
  }
  if (r.count_exact) {
    rep["count_exact"] = tagged(*r.count_exact, "measured");
  } else {
    rep["count_exact"] = nullptr;
  }
  doc["representation"] = std::move(rep);

  if (!r.deviation_trend.empty() || !r.transfer_trend.empty()) {
    JsonValue trends;
    if (!r.deviation_trend.empty()) {
      trends["deviation_vs_N"] = trend_series_json(r.deviation_trend, "N");
      trends["restriction_vs_N"] = trend_series_json(r.restriction_trend, "N");
    }
    if (!r.transfer_trend.empty()) {
      trends["gap_vs_x"] = trend_series_json(r.transfer_trend, "x");
      trends["theta"] = tagged(r.trend_theta, "config");
    }
    doc["trends"] = std::move(trends);
  }
  return doc;
}

JsonValue scan_report_json(const ScanReport& report) {
  JsonValue doc;
  doc["command"] = "scan";
  doc["lo"] = tagged(report.lo, "config");
  doc["hi"] = tagged(report.hi, "config");
  doc["w"] = tagged(report.w, "config");
  JsonValue gl = JsonValue::Array{};
  for (const auto& g : report.gammas) gl.push_back(g.str());
  doc["gammas"] = std::move(gl);
  doc["checked"] = tagged(report.checked, "measured");
  doc["exception_count"] = tagged(static_cast<u64>(report.exceptions.size()),
                                  "measured");
  doc["exceptions"] = tagged_array(report.exceptions, "measured");
  JsonValue blocks = JsonValue::Array{};
  for (const auto& b : report.blocks) {
    JsonValue item;
    item["lo"] = tagged(b.lo, "config");
    item["hi"] = tagged(b.hi, "config");
    item["checked"] = tagged(b.checked, "measured");
    item["missing"] = tagged(b.missing, "measured");
    double density = b.checked > 0
                         ? static_cast<double>(b.missing) / static_cast<double>(b.checked)
                         : 0.0;
    item["density"] = tagged(density, "measured");
    blocks.push_back(std::move(item));
  }
  doc["blocks"] = std::move(blocks);
  return doc;
}

JsonValue local_report_json(const LocalSolveReport& report) {
  JsonValue doc;
  doc["command"] = "local-solve";
  doc["modulus"] = tagged(report.modulus, "config");
  doc["classes_checked"] = tagged(report.classes_checked, "measured");
  doc["failure_count"] = tagged(static_cast<u64>(report.failures.size()),
                                "measured");
  doc["failures"] = tagged_array(report.failures, "measured");
  return doc;
}

JsonValue sieve_summary_json(const PrimeTable& primes) {
  JsonValue doc;
  doc["command"] = "sieve";
  doc["limit"] = tagged(primes.limit(), "config");
  doc["count"] = tagged(primes.count(primes.limit()), "measured");
  u64 largest = 0;
  primes.for_each_prime(2, primes.limit(), [&](u64 p) { largest = p; });
  doc["largest"] = tagged(largest, "measured");
  return doc;
}

namespace {

using nlohmann::json;

// Reports wrap numbers as {"provenance": ..., "value": ...}.
double unwrap_number(const json& j) {
  if (j.is_object() && j.contains("value")) return j.at("value").get<double>();
  return j.get<double>();
}

std::string csv_escape_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool write_xy_series(const json& series, const char* param_name,
                     const std::filesystem::path& path) {
  if (!series.is_array() || series.empty()) return false;
  std::string out = std::string(param_name) + ",value\n";
  for (const auto& item : series) {
    out += csv_escape_number(unwrap_number(item.at(param_name)));
    out += ',';
    out += csv_escape_number(unwrap_number(item.at("value")));
    out += '\n';
  }
  write_text_file(path, out);
  return true;
}

}  // namespace

std::vector<std::string> extract_plot_csv(const std::string& report_json_text,
                                          const std::filesystem::path& outdir) {
  json doc;
  try {
    doc = json::parse(report_json_text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("plots: report is not valid JSON: ") +
                                err.what());
  }
  std::vector<std::string> written;
  if (doc.contains("trends")) {
    const auto& trends = doc.at("trends");
    if (trends.contains("deviation_vs_N")) {
      auto path = outdir / "deviation_vs_N.csv";
      if (write_xy_series(trends.at("deviation_vs_N"), "N", path))
        written.push_back(path.string());
    }
    if (trends.contains("restriction_vs_N")) {
      auto path = outdir / "restriction_vs_N.csv";
      if (write_xy_series(trends.at("restriction_vs_N"), "N", path))
        written.push_back(path.string());
    }
    if (trends.contains("gap_vs_x")) {
      auto path = outdir / "gap_vs_x.csv";
      if (write_xy_series(trends.at("gap_vs_x"), "x", path))
        written.push_back(path.string());
    }
  }
  if (doc.contains("blocks")) {
    const auto& blocks = doc.at("blocks");
    if (blocks.is_array() && !blocks.empty()) {
      std::string out = "lo,hi,checked,missing,density\n";
      for (const auto& b : blocks) {
        out += csv_escape_number(unwrap_number(b.at("lo")));
        out += ',';
        out += csv_escape_number(unwrap_number(b.at("hi")));
        out += ',';
        out += csv_escape_number(unwrap_number(b.at("checked")));
        out += ',';
        out += csv_escape_number(unwrap_number(b.at("missing")));
        out += ',';
        out += csv_escape_number(unwrap_number(b.at("density")));
        out += '\n';
      }
      auto path = outdir / "exception_density.csv";
      write_text_file(path, out);
      written.push_back(path.string());
    }
  }
  if (written.empty())
    throw std::invalid_argument("plots: report holds no plottable series");
  return written;
}

}  // namespace pswg
