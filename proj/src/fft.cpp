#include "pswg/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace pswg::fft {

namespace {

// FFTW planning mutates global state; execution is thread-safe but plan
// creation and destruction are not.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

struct PlanGuard {
  fftw_plan plan = nullptr;
  ~PlanGuard() {
    if (plan) {
      std::lock_guard<std::mutex> lock(plan_mutex());
      fftw_destroy_plan(plan);
    }
  }
};

void check_size(u64 m) {
  if (m < 1) throw std::invalid_argument("fft: grid size must be >= 1");
  if (m > (u64{1} << 30)) throw std::runtime_error("fft: grid size too large");
}

}  // namespace

std::vector<std::complex<double>> dft_positive(const std::vector<double>& in, u64 m) {
  check_size(m);
  if (in.size() > m)
    throw std::invalid_argument("fft: input longer than grid");
  fftw_complex* buf_in = fftw_alloc_complex(m);
  fftw_complex* buf_out = fftw_alloc_complex(m);
  if (!buf_in || !buf_out) {
    fftw_free(buf_in);
    fftw_free(buf_out);
    throw std::bad_alloc();
  }
  std::memset(buf_in, 0, sizeof(fftw_complex) * m);
  for (u64 i = 0; i < in.size(); ++i) buf_in[i][0] = in[i];
  PlanGuard guard;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    // FFTW_BACKWARD carries the positive phase sign; FFTW_ESTIMATE keeps
    // planning deterministic (no timing-dependent algorithm choice).
    guard.plan = fftw_plan_dft_1d(static_cast<int>(m), buf_in, buf_out,
                                  FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (!guard.plan) {
    fftw_free(buf_in);
    fftw_free(buf_out);
    throw std::runtime_error("fft: planning failed");
  }
  fftw_execute(guard.plan);
  std::vector<std::complex<double>> out(m);
  for (u64 k = 0; k < m; ++k) out[k] = {buf_out[k][0], buf_out[k][1]};
  fftw_free(buf_in);
  fftw_free(buf_out);
  return out;
}

std::vector<std::complex<double>> real_forward(const std::vector<double>& in) {
  u64 m = in.size();
  check_size(m);
  double* buf_in = fftw_alloc_real(m);
  fftw_complex* buf_out = fftw_alloc_complex(m / 2 + 1);
  if (!buf_in || !buf_out) {
    fftw_free(buf_in);
    fftw_free(buf_out);
    throw std::bad_alloc();
  }
  std::memcpy(buf_in, in.data(), sizeof(double) * m);
  PlanGuard guard;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    guard.plan = fftw_plan_dft_r2c_1d(static_cast<int>(m), buf_in, buf_out,
                                      FFTW_ESTIMATE);
  }
  if (!guard.plan) {
    fftw_free(buf_in);
    fftw_free(buf_out);
    throw std::runtime_error("fft: planning failed");
  }
  fftw_execute(guard.plan);
  std::vector<std::complex<double>> out(m / 2 + 1);
  for (u64 k = 0; k < out.size(); ++k) out[k] = {buf_out[k][0], buf_out[k][1]};
  fftw_free(buf_in);
  fftw_free(buf_out);
  return out;
}

std::vector<double> real_inverse(const std::vector<std::complex<double>>& spectrum,
                                 u64 m) {
  check_size(m);
  if (spectrum.size() != m / 2 + 1)
    throw std::invalid_argument("fft: spectrum size does not match grid");
  fftw_complex* buf_in = fftw_alloc_complex(spectrum.size());
  double* buf_out = fftw_alloc_real(m);
  if (!buf_in || !buf_out) {
    fftw_free(buf_in);
    fftw_free(buf_out);
    throw std::bad_alloc();
  }
  for (u64 k = 0; k < spectrum.size(); ++k) {
    buf_in[k][0] = spectrum[k].real();
    buf_in[k][1] = spectrum[k].imag();
  }
  PlanGuard guard;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    guard.plan = fftw_plan_dft_c2r_1d(static_cast<int>(m), buf_in, buf_out,
                                      FFTW_ESTIMATE);
  }
  if (!guard.plan) {
    fftw_free(buf_in);
    fftw_free(buf_out);
    throw std::runtime_error("fft: planning failed");
  }
  fftw_execute(guard.plan);
  std::vector<double> out(m);
  double scale = 1.0 / static_cast<double>(m);
  for (u64 i = 0; i < m; ++i) out[i] = buf_out[i] * scale;
  fftw_free(buf_in);
  fftw_free(buf_out);
  return out;
}

}  // namespace pswg::fft
