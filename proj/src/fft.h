#pragma once

// Thin FFTW wrapper. Plans are created once per shape under a mutex and
// executed with the new-array interface, which is thread-safe.

#include <complex>
#include <cstddef>

namespace wigqdd::fft {

enum class Direction { forward, backward };

/// Unnormalized in-place transforms of `rows` contiguous rows of length `len`.
void rows(std::complex<double>* data, std::size_t rows, std::size_t len, Direction dir);

/// Unnormalized in-place transforms along the slow index of a rows x cols
/// row-major array (one transform of length `rows` per column).
void columns(std::complex<double>* data, std::size_t rows, std::size_t cols, Direction dir);

}  // namespace wigqdd::fft
