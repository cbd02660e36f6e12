#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "pswg/io.hpp"
#include "pswg/pipeline.hpp"

using namespace pswg;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  auto dir = fs::temp_directory_path() / "pswg_test_io";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("weight file round trip is bit exact") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(0.0, 1e6);
  WeightedSequence f;
  f.ctx.N = 777;
  f.values.assign(778, 0.0);
  for (u64 n = 1; n <= 777; ++n) {
    if (rng() % 3 == 0) f.values[n] = unif(rng);
  }
  auto path = temp_dir() / "roundtrip.pswg";
  write_weight_file(path, f);
  auto back = read_weight_values(path);
  REQUIRE(back.size() == f.values.size());
  for (u64 n = 0; n <= 777; ++n) {
    REQUIRE(back[n] == f.values[n]);  // exact, not approximate
  }

  // Header layout: magic, version 1 (LE), length 777 (LE).
  std::string raw = slurp(path);
  REQUIRE(raw.size() == 16 + 8 * 777);
  CHECK(raw.substr(0, 4) == "PSWG");
  CHECK(static_cast<unsigned char>(raw[4]) == 1);
  CHECK(static_cast<unsigned char>(raw[5]) == 0);
  CHECK(static_cast<unsigned char>(raw[8]) == (777 & 0xff));
  CHECK(static_cast<unsigned char>(raw[9]) == (777 >> 8));
}

TEST_CASE("weight file reader rejects corrupt input") {
  auto dir = temp_dir();
  auto path = dir / "bad.pswg";
  write_text_file(path, "not a weight file");
  CHECK_THROWS_AS(read_weight_values(path), std::runtime_error);

  WeightedSequence f;
  f.ctx.N = 4;
  f.values = {0, 1, 2, 3, 4};
  write_weight_file(path, f);
  std::string raw = slurp(path);
  write_text_file(path, raw.substr(0, raw.size() - 3));  // truncate
  CHECK_THROWS_AS(read_weight_values(path), std::runtime_error);
  raw[4] = 9;  // unsupported version
  write_text_file(path, raw);
  CHECK_THROWS_AS(read_weight_values(path), std::runtime_error);
  CHECK_THROWS_AS(read_weight_values(dir / "missing.pswg"), std::runtime_error);
}

TEST_CASE("CSV writers emit one row per entry") {
  WeightedSequence f;
  f.ctx.N = 5;
  f.values = {0, 1.5, 0, 2.5, 0, 3.5};
  auto wpath = temp_dir() / "weights.csv";
  write_weight_csv(wpath, f);
  std::string w = slurp(wpath);
  CHECK(std::count(w.begin(), w.end(), '\n') == 6);  // header + 5 rows
  CHECK(w.rfind("n,value\n", 0) == 0);

  Spectrum spec;
  spec.source_length = 2;
  spec.grid_size = 4;
  spec.samples = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  auto spath = temp_dir() / "spectrum.csv";
  write_spectrum_csv(spath, spec);
  std::string s = slurp(spath);
  CHECK(std::count(s.begin(), s.end(), '\n') == 5);
  CHECK(s.rfind("k,alpha,re,im,abs\n", 0) == 0);
}

TEST_CASE("json output is sorted, escaped, and round-trip exact") {
  JsonValue doc;
  doc["zeta"] = 1.0 / 3.0;
  doc["alpha"] = u64{1} << 60;
  doc["mid"] = "line\nbreak \"quoted\"";
  doc["flag"] = true;
  doc["nothing"] = nullptr;
  JsonValue arr = JsonValue::Array{};
  arr.push_back(1.5);
  arr.push_back(-2);
  doc["list"] = std::move(arr);
  std::string text = doc.dump();

  auto keys_in_order = std::vector<std::string>{};
  auto parsed = nlohmann::json::parse(text);
  for (auto it = parsed.begin(); it != parsed.end(); ++it)
    keys_in_order.push_back(it.key());
  // nlohmann::json sorts object keys, and our writer emits sorted keys, so
  // the serialised order must already match.
  std::size_t pos = 0;
  for (const auto& k : keys_in_order) {
    auto at = text.find("\"" + k + "\"");
    REQUIRE(at != std::string::npos);
    REQUIRE(at >= pos);
    pos = at;
  }
  CHECK(parsed.at("zeta").get<double>() == 1.0 / 3.0);
  CHECK(parsed.at("alpha").get<u64>() == u64{1} << 60);
  CHECK(parsed.at("mid").get<std::string>() == "line\nbreak \"quoted\"");
  CHECK(parsed.at("list")[0].get<double>() == 1.5);
  CHECK(parsed.at("list")[1].get<i64>() == -2);

  CHECK_THROWS_AS(JsonValue(std::nan("")).dump(), std::invalid_argument);
}

TEST_CASE("tagged numbers carry provenance") {
  auto t = tagged(2.5, "measured");
  auto parsed = nlohmann::json::parse(t.dump());
  CHECK(parsed.at("provenance") == "measured");
  CHECK(parsed.at("value").get<double>() == 2.5);
}

TEST_CASE("config defaults validate and files override") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.tol("parseval_rel") == 1e-9);
  CHECK(cfg.tol("mean_value") == 0.2);
  CHECK(cfg.tol("runtime_scan_s") == 600.0);
  CHECK_THROWS_AS(cfg.tol("no_such"), std::invalid_argument);

  auto path = temp_dir() / "run.cfg";
  write_text_file(path,
                  "# comment\n"
                  "sieve_limit = 4096\n"
                  "w = 5\n"
                  "gammas = 9/10, 1\n"
                  "tol.mean_value = 0.5\n"
                  "\n");
  RunConfig loaded = RunConfig::load(path);
  CHECK(loaded.sieve_limit == 4096);
  CHECK(loaded.w == 5);
  REQUIRE(loaded.gammas.size() == 2);
  CHECK(loaded.gammas[0] == GammaParam(9, 10));
  CHECK(loaded.gammas[1] == GammaParam(1, 1));
  CHECK(loaded.tol("mean_value") == 0.5);
  CHECK(loaded.tol("l4_rel") == 1e-9);  // untouched default

  write_text_file(path, "sieve_limit = banana\n");
  CHECK_THROWS_AS(RunConfig::load(path), std::invalid_argument);
  write_text_file(path, "no_such_key = 1\n");
  CHECK_THROWS_AS(RunConfig::load(path), std::invalid_argument);
  write_text_file(path, "tol.no_such = 1\n");
  CHECK_THROWS_AS(RunConfig::load(path), std::invalid_argument);
  write_text_file(path, "gammas = 1/2\n");
  CHECK_THROWS_AS(RunConfig::load(path), std::invalid_argument);
  write_text_file(path, "broken line\n");
  CHECK_THROWS_AS(RunConfig::load(path), std::invalid_argument);

  RunConfig stripped;
  stripped.tolerances.erase("mean_value");
  CHECK_THROWS_AS(stripped.validate(), std::invalid_argument);
}

TEST_CASE("pipeline runs end to end and reports deterministically") {
  RunConfig cfg;
  cfg.sieve_limit = 20'000;
  cfg.gammas = {GammaParam(1, 1)};
  auto r1 = run_pipeline(cfg, 125);
  CHECK(r1.found);
  REQUIRE(r1.witness.has_value());
  CHECK(r1.witness->p == std::array<u64, 5>{5, 5, 5, 5, 5});
  CHECK(r1.witness_verified);
  REQUIRE(r1.count_exact.has_value());
  CHECK(*r1.count_exact == 11);
  CHECK(r1.scaled_target == 5);
  CHECK(r1.count_weighted > 0.0);
  REQUIRE(r1.slots.size() == 5);

  auto r2 = run_pipeline(cfg, 125);
  CHECK(pipeline_report_json(r1).dump() == pipeline_report_json(r2).dump());

  CHECK_THROWS_AS(run_pipeline(cfg, 124), std::invalid_argument);
}

TEST_CASE("pipeline report wraps every number with provenance") {
  RunConfig cfg;
  cfg.sieve_limit = 20'000;
  cfg.gammas = {GammaParam(1, 1)};
  PipelineOptions opts;
  opts.trend_lengths = {64, 128};
  opts.trend_xs = {2'000, 10'000};
  auto result = run_pipeline(cfg, 173, opts);
  auto doc = pipeline_report_json(result);
  auto parsed = nlohmann::json::parse(doc.dump());

  // Every numeric leaf must sit under a {"provenance", "value"} wrapper.
  std::function<void(const nlohmann::json&, bool)> walk =
      [&](const nlohmann::json& node, bool wrapped) {
        if (node.is_number()) {
          REQUIRE(wrapped);
          return;
        }
        if (node.is_object()) {
          bool is_wrapper = node.contains("provenance") && node.contains("value");
          for (auto it = node.begin(); it != node.end(); ++it) {
            walk(it.value(), is_wrapper && it.key() == "value");
          }
          return;
        }
        if (node.is_array()) {
          for (const auto& item : node) walk(item, wrapped);
        }
      };
  walk(parsed, false);

  CHECK(parsed.at("trends").at("deviation_vs_N").size() == 2);
  CHECK(parsed.at("trends").at("gap_vs_x").size() == 2);
}

TEST_CASE("plot extraction produces the expected CSV files") {
  RunConfig cfg;
  cfg.sieve_limit = 20'000;
  cfg.gammas = {GammaParam(1, 1)};
  PipelineOptions opts;
  opts.trend_lengths = {64, 128, 256};
  opts.trend_xs = {2'000, 10'000};
  auto doc = pipeline_report_json(run_pipeline(cfg, 173, opts));
  auto outdir = temp_dir() / "plots";
  fs::remove_all(outdir);
  auto written = extract_plot_csv(doc.dump(), outdir);
  REQUIRE(written.size() == 3);
  CHECK(slurp(outdir / "deviation_vs_N.csv").rfind("N,value\n", 0) == 0);
  CHECK(std::count_if(written.begin(), written.end(), [](const std::string& s) {
          return s.find("gap_vs_x") != std::string::npos;
        }) == 1);
  std::string dev = slurp(outdir / "deviation_vs_N.csv");
  CHECK(std::count(dev.begin(), dev.end(), '\n') == 4);  // header + 3 points

  PrimeTable primes(200);
  std::array<GammaParam, 5> gs;
  gs.fill(GammaParam(1, 1));
  auto scan_doc = scan_report_json(exception_scan(100, 400, gs, 3, primes));
  auto scan_written = extract_plot_csv(scan_doc.dump(), outdir);
  REQUIRE(scan_written.size() == 1);
  CHECK(slurp(outdir / "exception_density.csv").rfind("lo,hi,", 0) == 0);

  JsonValue empty;
  empty["command"] = "pipeline";
  CHECK_THROWS_AS(extract_plot_csv(empty.dump(), outdir), std::invalid_argument);
  CHECK_THROWS_AS(extract_plot_csv("{invalid", outdir), std::invalid_argument);
}

TEST_CASE("scan and local reports serialise their counts") {
  PrimeTable primes(200);
  std::array<GammaParam, 5> gs;
  gs.fill(GammaParam(1, 1));
  auto report = exception_scan(100, 400, gs, 3, primes);
  auto parsed = nlohmann::json::parse(scan_report_json(report).dump());
  CHECK(parsed.at("checked").at("value").get<u64>() == report.checked);
  CHECK(parsed.at("blocks").size() == report.blocks.size());

  auto local = verify_local_all(build_context(5, 1000));
  auto lparsed = nlohmann::json::parse(local_report_json(local).dump());
  CHECK(lparsed.at("classes_checked").at("value").get<u64>() == 5);
  CHECK(lparsed.at("failure_count").at("value").get<u64>() == 0);
}
