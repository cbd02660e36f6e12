#pragma once

#include <complex>
#include <vector>

#include "pswg/arith.hpp"

namespace pswg::fft {

// Length-M transform with positive phase sign:
// out[k] = sum_n in[n] * exp(+2*pi*i*n*k/M), input zero-padded to M.
std::vector<std::complex<double>> dft_positive(const std::vector<double>& in, u64 m);

// Real-to-halfcomplex forward transform of a length-M array
// (out[k] = sum_n in[n] * exp(-2*pi*i*n*k/M), k = 0..M/2).
std::vector<std::complex<double>> real_forward(const std::vector<double>& in);

// Inverse of real_forward including the 1/M normalisation; spectrum has
// M/2 + 1 entries, output has length M.
std::vector<double> real_inverse(const std::vector<std::complex<double>>& spectrum, u64 m);

}  // namespace pswg::fft
