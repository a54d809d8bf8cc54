#pragma once

// DFT convention used throughout the library:
//   forward  x̂_k = sum_j x_j exp(-2πi jk/N)          (no scaling)
//   inverse  x_j = (1/N) sum_k x̂_k exp(+2πi jk/N)

#include <cstddef>
#include <cstdint>
#include <span>

#include "spfft/types.hpp"

namespace spfft {

/// O(N^2) reference transform. Any length >= 1; used as a test oracle.
ComplexVector naive_dft(std::span<const Complex> x);
Spectrum naive_dft(const Signal& x);

/// In-place iterative radix-2 decimation-in-time FFT. `inverse` flips the
/// twiddle sign and applies the 1/N factor. Length must be a power of two.
void fft_in_place(std::span<Complex> data, bool inverse);

Spectrum fft_forward(const Signal& x);
Signal fft_inverse(const Spectrum& s);

/// x^{(j)}_k = sum_l x_{k + 2^j l}, a length-2^j vector. 0 <= j <= J.
Signal periodize(const Signal& x, int level);

/// (s_{2^{J-j} k})_{k < 2^j}; equals fft_forward(periodize(x, j)) when s = x̂.
Spectrum subsample_spectrum(const Spectrum& s, int level);

/// Checks that the DFT of y_k = x_{(k + 2^j shift) mod N} equals
/// exp(+2πi l shift / 2^{J-j}) x̂_l for every l, within 1e-10 relative.
/// Requires 0 <= j <= J-1 and 0 <= shift < 2^{J-j}.
bool modulation_check(const Signal& x, int level, std::uint64_t shift);

/// exp(-2πi numerator / 2^log2_denominator), with the numerator reduced
/// exactly before the trig call.
Complex unit_root(std::uint64_t numerator, int log2_denominator);

}  // namespace spfft
