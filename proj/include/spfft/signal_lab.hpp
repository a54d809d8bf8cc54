#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "spfft/types.hpp"

namespace spfft {

/// Counter-based SplitMix64: the i-th output is mix(seed + (i+1)·0x9E3779B97F4A7C15)
/// with the standard SplitMix64 finalizer. Fully specified, so streams are
/// identical on every platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double next_unit();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  std::uint64_t counter() const noexcept { return counter_; }

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Seed for an independent stream, e.g. one per (trial, noise level).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

/// Endpoint entries are redrawn until their modulus reaches this floor, so
/// the generated support length is exactly m.
inline constexpr double kEndpointFloor = 0.5;
/// Real and imaginary parts of support entries lie in [-kAmplitude, kAmplitude].
inline constexpr double kAmplitude = 10.0;

/// Random vector of length n with support start uniform on [0, n) and
/// support length exactly m. Entries are uniform on the box [-10, 10]^2.
std::pair<Signal, SupportDescriptor> gen_sparse_signal(std::size_t n, std::size_t m,
                                                       std::uint64_t seed);

enum class NoiseMode { Bound, TargetSnr };
enum class NoiseShape { Disc, Box };

struct NoiseSpec {
  NoiseMode mode = NoiseMode::Bound;
  double delta = 0;    ///< Bound mode: |ε_k| <= delta
  double snr_db = 0;   ///< TargetSnr mode
  std::uint64_t seed = 0;
  NoiseShape shape = NoiseShape::Disc;

  static NoiseSpec bound(double delta, std::uint64_t seed, NoiseShape shape = NoiseShape::Disc) {
    return {NoiseMode::Bound, delta, 0, seed, shape};
  }
  static NoiseSpec snr(double snr_db, std::uint64_t seed, NoiseShape shape = NoiseShape::Disc) {
    return {NoiseMode::TargetSnr, 0, snr_db, seed, shape};
  }
};

struct NoisySpectrum {
  Spectrum noisy;
  Spectrum noise;
};

/// ŷ = x̂ + ε. Disc shape draws ε uniformly on |ε| <= δ; Box draws Re and Im
/// independently on [-δ, δ]. In SNR mode unit-scale noise is drawn and then
/// rescaled so 20·log10(‖x̂‖₂/‖ε‖₂) hits the target.
NoisySpectrum add_noise(const Spectrum& s, const NoiseSpec& spec);

double norm2(std::span<const Complex> v);
double norm_inf(std::span<const Complex> v);
double norm1(std::span<const Complex> v);

/// 20·log10(‖signal‖₂/‖noise‖₂); +inf for zero noise.
double snr_db(std::span<const Complex> signal, std::span<const Complex> noise);

/// ‖x − x'‖₂ / N.
double error_l2_over_n(const Signal& x, const Signal& y);

/// Full-length inverse FFT of a (possibly noisy) spectrum; the baseline the
/// sparse algorithms are compared against.
Signal oracle_inverse(const Spectrum& s);

/// Length of the shortest cyclic window containing every nonzero entry
/// (0 for the zero vector). O(N) over the gaps between nonzeros.
std::size_t minimal_support_length(std::span<const Complex> x);

struct TrialRecord {
  std::size_t n = 0;
  std::size_t m = 0;
  double snr_db = 0;
  bool mu_correct = false;
  double err_sparse = 0;
  double err_ifft = 0;
  std::size_t samples_used = 0;
  std::size_t kappa_vectors_used = 0;
  double noise_inf_norm = 0;
  double noise_l1_over_n = 0;
};

}  // namespace spfft
