#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include "pswg/spectral.hpp"
#include "pswg/weights.hpp"

namespace pswg {

// Binary weight-array format: magic "PSWG", u32 version (1), u64 length N,
// then N doubles f(1)..f(N).  All integers and doubles little-endian.
void write_weight_file(const std::filesystem::path& path, const WeightedSequence& f);

// Returns the payload as a values vector indexed 0..N with values[0] = 0,
// matching WeightedSequence::values.
std::vector<double> read_weight_values(const std::filesystem::path& path);

// CSV "n,value" with header, one row per n in [1, N].
void write_weight_csv(const std::filesystem::path& path, const WeightedSequence& f);

// CSV "k,alpha,re,im,abs" with header, one row per grid point.
void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& spec);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace pswg
