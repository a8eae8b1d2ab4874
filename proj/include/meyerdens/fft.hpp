// fft.hpp — thin wrapper over the system FFT library for power-of-two
// complex transforms. Plans are cached per (size, direction) behind a mutex;
// execution is lock-free and safe from concurrent workers.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace meyerdens::fft {

/// In-place forward DFT (sign -1, unnormalized): X_k = sum_m x_m e^{-2πi k m / n}.
/// `n` must be a power of two.
void forward(std::complex<double>* data, std::size_t n);

/// In-place inverse DFT (sign +1, unnormalized): x_m = sum_k X_k e^{+2πi k m / n}.
/// `n` must be a power of two. No 1/n factor is applied.
void inverse(std::complex<double>* data, std::size_t n);

/// Convenience overloads on whole vectors.
void forward(std::vector<std::complex<double>>& data);
void inverse(std::vector<std::complex<double>>& data);

} // namespace meyerdens::fft
