#pragma once

// Recovery of a vector with short cyclic support from exact Fourier data,
// using one inverse FFT of length 2^{L+1} < 4m plus one odd-indexed sample.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "spfft/accessor.hpp"
#include "spfft/types.hpp"

namespace spfft {

/// Reconstructed values placed cyclically at (values_start + k) mod length.
/// Regular runs store only the m support values; the full-IFFT fallback
/// stores all N values with values_start = 0.
struct PlacedValues {
  std::size_t length = 1;
  std::size_t values_start = 0;
  ComplexVector values;

  Signal to_signal() const;
};

struct ExactReconstruction {
  PlacedValues placed;
  SupportDescriptor support;
  std::size_t samples_used = 0;
  int level_L = 0;
  std::uint64_t shift_nu = 0;
  std::uint64_t quotient_p = 0;
  bool fallback = false;

  Signal signal() const { return placed.to_signal(); }
};

/// e_k = sum_{l=k}^{k+m-1} |p_{l mod P}|^2 for every k, by the sliding recursion.
std::vector<double> window_energies(std::span<const Complex> p, std::size_t m);

/// First index of the maximum; ties go to the smallest index.
std::size_t argmax_first(std::span<const double> values);

/// Start of the length-m cyclic window of maximal energy. Requires
/// 1 <= m <= p.size()/2 so the window is unique; otherwise AmbiguousSupport.
std::size_t find_support_start(std::span<const Complex> p, std::size_t m);

struct OddSample {
  std::uint64_t k0 = 0;  ///< the sample is x̂_{2 k0 + 1}
  Complex value;
};

/// Picks a nonzero odd-indexed Fourier value next to the largest stride
/// sample (x̂_{s k*} with s = 2^{J-L-1}); the larger neighbour wins, ties go
/// right. Falls back to scanning x̂_1, x̂_3, ... if both neighbours vanish.
/// Throws ZeroSignal when the spectrum is zero. Requires L < J-1.
OddSample select_odd_sample(CountingSpectrumAccessor& accessor, int log2n, int level);

/// a^{-1} mod 2^t for odd a, 1 <= t <= 64. Even a throws NotInvertible.
std::uint64_t mod_inverse_pow2(std::uint64_t a, int t);

struct ShiftResolution {
  std::uint64_t p = 0;   ///< b = exp(-2πi p / 2^t)
  std::uint64_t nu = 0;  ///< (2 k0 + 1) nu = p mod 2^t
};

/// Reads the root-of-unity exponent off the quotient b and solves for the
/// shift. Throws DegenerateQuotient for b = 0 and NoisyQuotient when the
/// phase sits more than a quarter step from the nearest lattice point.
ShiftResolution resolve_shift(Complex b, std::uint64_t k0, int t);

/// Full pipeline for exact data with support length at most m.
ExactReconstruction reconstruct_exact(CountingSpectrumAccessor& accessor, std::size_t m);

/// Full inverse FFT branch shared by both algorithms (used when L >= J-1).
PlacedValues full_inverse_placement(CountingSpectrumAccessor& accessor, std::size_t m,
                                    SupportDescriptor& support);

}  // namespace spfft
