#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "pswg/io.hpp"
#include "pswg/pipeline.hpp"
#include "pswg/ps_set.hpp"
#include "pswg/spectral.hpp"

namespace {

using namespace pswg;

struct GlobalArgs {
  std::string config_path;
  unsigned threads = 0;
  bool threads_set = false;
  u64 sieve_limit = 0;
  bool sieve_limit_set = false;
  std::string json_out;
};

RunConfig make_config(const GlobalArgs& g) {
  RunConfig cfg = g.config_path.empty() ? RunConfig() : RunConfig::load(g.config_path);
  if (g.threads_set) cfg.threads = g.threads;
  if (g.sieve_limit_set) cfg.sieve_limit = g.sieve_limit;
  cfg.validate();
  return cfg;
}

void emit(const JsonValue& doc, const GlobalArgs& g) {
  std::string text = doc.dump();
  std::fputs(text.c_str(), stdout);
  if (!g.json_out.empty()) write_text_file(g.json_out, text);
}

std::array<GammaParam, 5> five_gammas(const std::vector<std::string>& specs) {
  std::array<GammaParam, 5> out;
  if (specs.size() == 1) {
    out.fill(GammaParam::parse(specs[0]));
  } else if (specs.size() == 5) {
    for (int i = 0; i < 5; ++i) out[i] = GammaParam::parse(specs[i]);
  } else {
    throw std::invalid_argument("expected 1 or 5 exponents");
  }
  return out;
}

// Weight files carry only the payload; a bare context of matching length
// is enough for the grid-side operations.
WeightedSequence sequence_from_file(const std::string& path) {
  WeightedSequence f;
  f.values = read_weight_values(path);
  f.ctx.N = f.values.size() - 1;
  return f;
}

int run(int argc, char** argv) {
  CLI::App app{
      "Desk-scale checks for five-prime-square representations with primes "
      "restricted to floor-power sequences"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--config", g.config_path, "key = value config file");
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)")
      ->each([&](const std::string&) { g.threads_set = true; });
  app.add_option("--sieve-limit", g.sieve_limit, "prime table upper bound")
      ->each([&](const std::string&) { g.sieve_limit_set = true; });
  app.add_option("--json", g.json_out, "also write the report JSON to this file");

  // sieve
  auto* sieve = app.add_subcommand("sieve", "build the prime table and summarise it");
  u64 sieve_limit = 1'000'000;
  sieve->add_option("--limit", sieve_limit, "sieve upper bound")->required();
  sieve->callback([&] {
    RunConfig cfg = make_config(g);
    PrimeTable primes(sieve_limit, cfg.threads);
    emit(sieve_summary_json(primes), g);
  });

  // ps-enum
  auto* psenum = app.add_subcommand("ps-enum", "enumerate the floor-power image in [1, x]");
  u64 ps_x = 100;
  std::string ps_gamma = "97/100";
  std::string ps_csv;
  psenum->add_option("--x", ps_x, "range end")->required();
  psenum->add_option("--gamma", ps_gamma, "exponent a/b");
  psenum->add_option("--csv", ps_csv, "write members, one per row");
  psenum->callback([&] {
    GammaParam gamma = GammaParam::parse(ps_gamma);
    auto members = ps_enumerate(ps_x, gamma);
    if (!ps_csv.empty()) {
      std::string out = "n\n";
      for (u64 n : members) {
        out += std::to_string(n);
        out += '\n';
      }
      write_text_file(ps_csv, out);
    }
    JsonValue doc;
    doc["command"] = "ps-enum";
    doc["x"] = tagged(ps_x, "config");
    doc["gamma"] = gamma.str();
    doc["count"] = tagged(static_cast<u64>(members.size()), "measured");
    double expected = std::pow(static_cast<double>(ps_x), gamma.value());
    doc["expected"] = tagged(expected, "formula");
    if (members.size() <= 64) {
      doc["members"] = tagged_array(members, "measured");
    }
    emit(doc, g);
  });

  // wtrick
  auto* wtrick = app.add_subcommand("wtrick", "rescaling context and unit-square residues");
  u64 wt_w = 3, wt_n0 = 1'000'000 + 5;
  wtrick->add_option("--w", wt_w, "prime cutoff")->required();
  wtrick->add_option("--n0", wt_n0, "problem size")->required();
  wtrick->callback([&] {
    WTrickContext ctx = build_context(wt_w, wt_n0);
    ResidueData zw = residue_data(ctx.W);
    JsonValue doc;
    doc["command"] = "wtrick";
    doc["w"] = tagged(ctx.w, "config");
    doc["W"] = tagged(ctx.W, "formula");
    doc["n0"] = tagged(ctx.n0, "config");
    doc["N"] = tagged(ctx.N, "formula");
    doc["phi_W"] = tagged(ctx.phi_W, "formula");
    doc["zset"] = tagged_array(zw.zset, "formula");
    JsonValue sigma;
    for (const auto& [b, cnt] : zw.sigma) sigma[std::to_string(b)] = tagged(cnt, "formula");
    doc["sigma"] = std::move(sigma);
    emit(doc, g);
  });

  // local-solve
  auto* local = app.add_subcommand("local-solve", "residue decompositions into five unit squares");
  u64 ls_w = 3, ls_n = 0;
  bool ls_all = false;
  local->add_option("--w", ls_w, "prime cutoff")->required();
  local->add_option("--n", ls_n, "target (5 mod 24)");
  local->add_flag("--all", ls_all, "sweep every residue class mod W");
  local->callback([&] {
    RunConfig cfg = make_config(g);
    WTrickContext ctx = build_context(ls_w, ls_n != 0 ? std::max(ls_n, u64{1} << 30) : u64{1} << 30);
    if (ls_all) {
      emit(local_report_json(verify_local_all(ctx, cfg.threads)), g);
      return;
    }
    if (ls_n == 0) throw std::invalid_argument("local-solve: need --n or --all");
    auto bs = local_decompose(ls_n, ctx);
    JsonValue doc;
    doc["command"] = "local-solve";
    doc["n"] = tagged(ls_n, "config");
    doc["W"] = tagged(ctx.W, "formula");
    doc["offsets"] = tagged_array(std::vector<u64>(bs.begin(), bs.end()), "formula");
    emit(doc, g);
  });

  // weights
  auto* weights = app.add_subcommand("weights", "build a weight array and write it out");
  u64 wg_w = 3, wg_n0 = 1'000'000 + 5, wg_b = 1;
  std::string wg_gamma = "97/100", wg_kind = "f", wg_out, wg_csv;
  weights->add_option("--w", wg_w, "prime cutoff");
  weights->add_option("--n0", wg_n0, "problem size");
  weights->add_option("--b", wg_b, "residue offset");
  weights->add_option("--gamma", wg_gamma, "exponent a/b");
  weights->add_option("--kind", wg_kind, "f | lambda | majorant | indicator");
  weights->add_option("--out", wg_out, "binary output path")->required();
  weights->add_option("--csv", wg_csv, "CSV output path");
  weights->callback([&] {
    RunConfig cfg = make_config(g);
    WTrickContext ctx = build_context(wg_w, wg_n0);
    GammaParam gamma = GammaParam::parse(wg_gamma);
    WeightedSequence f;
    if (wg_kind == "f" || wg_kind == "lambda") {
      u64 need = isqrt_u64(ctx.W * ctx.N + wg_b) + 1;
      PrimeTable primes(std::max(cfg.sieve_limit, need), cfg.threads);
      f = wg_kind == "f" ? build_f(ctx, wg_b, gamma, primes)
                         : build_lambda(ctx, wg_b, primes);
    } else if (wg_kind == "majorant") {
      f = build_majorant(ctx, wg_b, gamma);
    } else if (wg_kind == "indicator") {
      f = build_indicator(ctx);
    } else {
      throw std::invalid_argument("weights: unknown kind '" + wg_kind + "'");
    }
    write_weight_file(wg_out, f);
    if (!wg_csv.empty()) write_weight_csv(wg_csv, f);
    u64 support = 0;
    double sum = 0;
    for (u64 n = 1; n <= f.length(); ++n) {
      if (f.values[n] > 0) ++support;
      sum += f.values[n];
    }
    JsonValue doc;
    doc["command"] = "weights";
    doc["kind"] = weight_kind_name(f.kind);
    doc["N"] = tagged(f.length(), "formula");
    doc["b"] = tagged(wg_b, "config");
    doc["support"] = tagged(support, "measured");
    doc["mean"] = tagged(sum / static_cast<double>(f.length()), "measured");
    doc["out"] = wg_out;
    emit(doc, g);
  });

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "grid transform of a stored weight array");
  std::string sp_in, sp_csv;
  u64 sp_grid = 0;
  bool sp_deviation = false;
  spectrum->add_option("--in", sp_in, "weight file")->required();
  spectrum->add_option("--grid", sp_grid, "grid size M (default 8N)");
  spectrum->add_option("--csv", sp_csv, "write grid samples as CSV");
  spectrum->add_flag("--deviation", sp_deviation, "also report the sup deviation");
  spectrum->callback([&] {
    WeightedSequence f = sequence_from_file(sp_in);
    u64 m = sp_grid != 0 ? sp_grid : 8 * f.length();
    Spectrum spec = transform(f, m);
    if (!sp_csv.empty()) write_spectrum_csv(sp_csv, spec);
    JsonValue doc;
    doc["command"] = "spectrum";
    doc["N"] = tagged(f.length(), "formula");
    doc["grid"] = tagged(m, "config");
    doc["value_at_zero"] = tagged(std::abs(spec.samples[0]), "measured");
    if (sp_deviation) {
      auto dev = sup_deviation(f, m);
      doc["sup_deviation"] = tagged(dev.value, "measured");
      doc["normalized_deviation"] =
          tagged(dev.value / static_cast<double>(f.length()), "measured");
    }
    emit(doc, g);
  });

  // norms
  auto* norms = app.add_subcommand("norms", "moment ratio of a stored weight array");
  std::string no_in;
  double no_q = 4.5;
  bool no_allow = false;
  norms->add_option("--in", no_in, "weight file")->required();
  norms->add_option("--q", no_q, "moment exponent");
  norms->add_flag("--allow-q-outside", no_allow, "permit q outside (4, 5)");
  norms->callback([&] {
    WeightedSequence f = sequence_from_file(no_in);
    auto ratio = restriction_ratio(f, no_q, no_allow);
    JsonValue doc;
    doc["command"] = "norms";
    doc["N"] = tagged(f.length(), "formula");
    doc["q"] = tagged(ratio.q, "config");
    doc["ratio"] = tagged(ratio.value, "measured");
    doc["grid"] = tagged(ratio.grid_size, "measured");
    doc["converged"] = ratio.converged;
    doc["q_in_range"] = ratio.q_in_range;
    emit(doc, g);
  });

  // transfer
  auto* transfer = app.add_subcommand("transfer", "image-restricted vs classical quadratic sums");
  double tr_theta = 0.41421356237309504880;
  u64 tr_x = 100'000;
  std::string tr_gamma = "97/100";
  bool tr_allow = false;
  transfer->add_option("--theta", tr_theta, "angle");
  transfer->add_option("--x", tr_x, "prime range end")->required();
  transfer->add_option("--gamma", tr_gamma, "exponent a/b");
  transfer->add_flag("--allow-gamma-outside", tr_allow, "permit gamma outside (75/82, 1)");
  transfer->callback([&] {
    RunConfig cfg = make_config(g);
    GammaParam gamma = GammaParam::parse(tr_gamma);
    PrimeTable primes(std::max(cfg.sieve_limit, tr_x), cfg.threads);
    auto probe = transfer_probe(tr_theta, tr_x, gamma, primes, tr_allow);
    JsonValue doc;
    doc["command"] = "transfer";
    doc["theta"] = tagged(probe.theta, "config");
    doc["x"] = tagged(probe.x, "config");
    doc["gamma"] = gamma.str();
    doc["restricted_re"] = tagged(probe.restricted.real(), "measured");
    doc["restricted_im"] = tagged(probe.restricted.imag(), "measured");
    doc["classical_re"] = tagged(probe.classical.real(), "measured");
    doc["classical_im"] = tagged(probe.classical.imag(), "measured");
    doc["normalized_gap"] = tagged(probe.normalized_gap, "measured");
    emit(doc, g);
  });

  // convolve
  auto* convolve = app.add_subcommand("convolve", "weighted count and witness for one target");
  u64 cv_n0 = 0, cv_w = 3;
  std::vector<std::string> cv_gammas{"97/100"};
  convolve->add_option("--n0", cv_n0, "target (5 mod 24)")->required();
  convolve->add_option("--w", cv_w, "prime cutoff");
  convolve->add_option("--gamma", cv_gammas, "exponent(s), 1 or 5 entries");
  convolve->callback([&] {
    RunConfig cfg = make_config(g);
    WTrickContext ctx = build_context(cv_w, cv_n0);
    RepresentationQuery query{cv_n0, ctx, five_gammas(cv_gammas),
                              local_decompose(cv_n0, ctx)};
    u64 need = isqrt_u64(ctx.W * ctx.N + ctx.W) + 1;
    PrimeTable primes(std::max(cfg.sieve_limit, need), cfg.threads);
    double count = convolve_count(query, primes);
    auto witness = witness_search(query, primes);
    JsonValue doc;
    doc["command"] = "convolve";
    doc["n0"] = tagged(cv_n0, "config");
    doc["scaled_target"] = tagged(query.scaled_target(), "formula");
    doc["count_weighted"] = tagged(count, "measured");
    doc["found"] = witness.has_value();
    if (witness) {
      doc["witness"] = tagged_array(
          std::vector<u64>(witness->p.begin(), witness->p.end()), "measured");
      doc["verified"] = verify_witness(query, *witness);
    } else {
      doc["witness"] = nullptr;
    }
    emit(doc, g);
  });

  // scan
  auto* scan = app.add_subcommand("scan", "exception scan over a target range");
  u64 sc_lo = 0, sc_hi = 0, sc_w = 3;
  std::vector<std::string> sc_gammas{"97/100"};
  scan->add_option("--lo", sc_lo, "range start")->required();
  scan->add_option("--hi", sc_hi, "range end")->required();
  scan->add_option("--w", sc_w, "prime cutoff (recorded in the report)");
  scan->add_option("--gamma", sc_gammas, "exponent(s), 1 or 5 entries");
  scan->callback([&] {
    RunConfig cfg = make_config(g);
    u64 need = isqrt_u64(sc_hi) + 1;
    PrimeTable primes(std::max(cfg.sieve_limit, need), cfg.threads);
    auto report = exception_scan(sc_lo, sc_hi, five_gammas(sc_gammas), sc_w, primes);
    emit(scan_report_json(report), g);
  });

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "full run for one target");
  u64 pl_n0 = 0;
  bool pl_trend = false;
  pipeline->add_option("--n0", pl_n0, "target (5 mod 24)")->required();
  pipeline->add_flag("--trend", pl_trend, "attach deviation / moment / gap series");
  pipeline->callback([&] {
    RunConfig cfg = make_config(g);
    PipelineOptions opts;
    if (pl_trend) {
      opts.trend_lengths = {1u << 10, 1u << 12, 1u << 14};
      opts.trend_xs = {10'000, 100'000};
    }
    emit(pipeline_report_json(run_pipeline(cfg, pl_n0, opts)), g);
  });

  // plots
  auto* plots = app.add_subcommand("plots", "extract CSV series from a report");
  std::string pt_report, pt_out = ".";
  plots->add_option("--report", pt_report, "report JSON path")->required();
  plots->add_option("--out", pt_out, "output directory");
  plots->callback([&] {
    std::ifstream in(pt_report);
    if (!in) throw std::runtime_error("cannot open report " + pt_report);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    auto written = extract_plot_csv(text, pt_out);
    JsonValue doc;
    doc["command"] = "plots";
    JsonValue files = JsonValue::Array{};
    for (const auto& path : written) files.push_back(path);
    doc["written"] = std::move(files);
    emit(doc, g);
  });

  for (auto* sub : {sieve, psenum, wtrick, local, weights, spectrum, norms,
                    transfer, convolve, scan, pipeline, plots})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pswg::internal_error& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  }
}
