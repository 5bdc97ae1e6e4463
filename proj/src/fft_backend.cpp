#include "kdvlri/fft_backend.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace kdv::fft {

namespace {

// FFTW's planner is not reentrant; executing a cached plan on fresh buffers
// via the new-array interface is. Plans are created FFTW_UNALIGNED so they
// accept whatever std::vector hands us, and FFTW_ESTIMATE keeps planning
// deterministic.
class PlanCache {
public:
  fftw_plan get(int n, bool forward) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, forward);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<fftw_complex> a(n), b(n);
    fftw_plan p = fftw_plan_dft_1d(n, a.data(), b.data(),
                                   forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw std::runtime_error("fftw_plan_dft_1d failed for n=" + std::to_string(n));
    plans_.emplace(key, p);
    return p;
  }

private:
  std::mutex mutex_;
  std::map<std::pair<int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

} // namespace

void transform(const std::complex<double>* in, std::complex<double>* out, int n, bool forward) {
  if (n < 1) throw std::invalid_argument("fft::transform: n must be >= 1");
  if (in == out) throw std::invalid_argument("fft::transform: in-place transform not supported");
  fftw_plan p = cache().get(n, forward);
  // std::complex<double> is layout-compatible with fftw_complex (double[2]).
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

int padded_size(int max_mode) {
  int need = 2 * max_mode + 1;
  int n = 1;
  while (n < need) n *= 2;
  return n;
}

} // namespace kdv::fft
