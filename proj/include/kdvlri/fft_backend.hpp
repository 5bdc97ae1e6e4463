#pragma once

#include <complex>

namespace kdv::fft {

/// Unnormalized complex DFT:
///   forward:  out[m] = sum_j in[j] e^{-2*pi*i*j*m/n}
///   backward: out[m] = sum_j in[j] e^{+2*pi*i*j*m/n}
/// in and out must be distinct buffers of length n. Plans are cached per
/// (n, direction); execution is thread-safe, planning is serialized.
void transform(const std::complex<double>* in, std::complex<double>* out, int n, bool forward);

/// Smallest power of two that can hold modes |k| <= max_mode without aliasing,
/// i.e. >= 2*max_mode + 1.
int padded_size(int max_mode);

} // namespace kdv::fft
