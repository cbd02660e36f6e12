#include "pswg/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace pswg {

namespace {

constexpr char kMagic[4] = {'P', 'S', 'W', 'G'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}

void put_u64(std::string& out, u64 v) {
  for (int i = 0; i < 8; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}

void put_f64(std::string& out, double d) {
  u64 bits;
  std::memcpy(&bits, &d, 8);
  put_u64(out, bits);
}

std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

u64 get_u64(const unsigned char* p) {
  u64 v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

void write_weight_file(const std::filesystem::path& path, const WeightedSequence& f) {
  std::string out;
  u64 n_len = f.length();
  out.reserve(16 + 8 * n_len);
  out.append(kMagic, 4);
  put_u32(out, kVersion);
  put_u64(out, n_len);
  for (u64 n = 1; n <= n_len; ++n) put_f64(out, f.values[n]);
  write_text_file(path, out);
}

std::vector<double> read_weight_values(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  const auto* p = reinterpret_cast<const unsigned char*>(data.data());
  if (data.size() < 16 || std::memcmp(data.data(), kMagic, 4) != 0)
    throw std::runtime_error("bad weight file header in " + path.string());
  std::uint32_t version = get_u32(p + 4);
  if (version != kVersion)
    throw std::runtime_error("unsupported weight file version in " + path.string());
  u64 n_len = get_u64(p + 8);
  if (data.size() != 16 + 8 * n_len)
    throw std::runtime_error("truncated weight file " + path.string());
  std::vector<double> values(n_len + 1, 0.0);
  for (u64 n = 1; n <= n_len; ++n) {
    u64 bits = get_u64(p + 16 + 8 * (n - 1));
    double d;
    std::memcpy(&d, &bits, 8);
    values[n] = d;
  }
  return values;
}

namespace {

std::string fmt_double(double d) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

}  // namespace

void write_weight_csv(const std::filesystem::path& path, const WeightedSequence& f) {
  std::string out = "n,value\n";
  for (u64 n = 1; n <= f.length(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += fmt_double(f.values[n]);
    out += '\n';
  }
  write_text_file(path, out);
}

void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& spec) {
  std::string out = "k,alpha,re,im,abs\n";
  for (u64 k = 0; k < spec.grid_size; ++k) {
    const auto& z = spec.samples[k];
    double alpha = static_cast<double>(k) / static_cast<double>(spec.grid_size);
    out += std::to_string(k);
    out += ',';
    out += fmt_double(alpha);
    out += ',';
    out += fmt_double(z.real());
    out += ',';
    out += fmt_double(z.imag());
    out += ',';
    out += fmt_double(std::abs(z));
    out += '\n';
  }
  write_text_file(path, out);
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

}  // namespace pswg
