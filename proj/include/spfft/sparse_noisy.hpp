#pragma once

// Noise-robust variant: support start voted over several shifted
// subsampled spectra, shift recovered one binary digit per level, and the
// support values averaged over all computed vectors.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spfft/accessor.hpp"
#include "spfft/sparse_exact.hpp"
#include "spfft/types.hpp"

namespace spfft {

struct NoisyConfig {
  /// Cap on the number of z^{(κ)} vectors computed for the energy vote.
  std::size_t max_kappa_vectors = 8;
  /// Number of z^{(κ)} vectors averaged in the final step (B+1). Zero means
  /// "all vectors computed during the vote".
  std::size_t averaging_count = 0;
  /// Odd-indexed candidates scanned per doubling level. Zero means m.
  std::size_t candidate_scan_budget = 0;

  void validate() const;
};

struct NoisyReconstruction {
  PlacedValues placed;
  SupportDescriptor support;
  std::size_t samples_used = 0;
  std::size_t kappa_vectors_used = 0;
  int level_L = 0;
  std::vector<std::size_t> mu_votes;
  /// One entry per level j = L+1 .. J-1; true means mu^{(j+1)} = mu^{(j)} + 2^j.
  std::vector<bool> doubling_decisions;
  bool votes_stable = true;
  bool fallback = false;

  Signal signal() const { return placed.to_signal(); }
};

/// Offsets κ tried by the vote, in order: 0, 2^{J-L-2}, 2^{J-L-3}, ..., 1,
/// then the remaining odd offsets 3, 5, 7, ... Truncated to `count`.
std::vector<std::uint64_t> kappa_sequence(int log2n, int level, std::size_t count);

/// z^{(κ)} = F^{-1}_{2^{L+1}} (x̂_{2^{J-L-1} k + κ})_k. Throws InvalidOffset
/// unless 0 <= κ < 2^{J-L-1}.
ComplexVector compute_z_kappa(CountingSpectrumAccessor& accessor, std::uint64_t kappa, int level,
                              int log2n);

struct SupportVote {
  std::size_t mu_short = 0;
  std::vector<ComplexVector> z_vectors;
  std::vector<std::uint64_t> kappas;
  std::vector<std::size_t> votes;
  bool stable = true;
};

/// Energy vote for the start of the support of x^{(L+1)}. Stops once two
/// consecutive votes agree or config.max_kappa_vectors vectors are in use.
SupportVote estimate_support_start(CountingSpectrumAccessor& accessor, std::size_t m, int level,
                                   int log2n, const NoisyConfig& config);

struct SupportRefinement {
  std::size_t mu = 0;
  std::vector<bool> decisions;
};

/// Lifts the support start from level L+1 to J, one level at a time, by
/// comparing a predicted odd Fourier coefficient with the measured one.
/// `window` holds the m values of x^{(L+1)} starting at mu_short.
SupportRefinement refine_support(std::span<const Complex> window, std::size_t mu_short,
                                 CountingSpectrumAccessor& accessor, std::size_t m, int level,
                                 int log2n, const NoisyConfig& config);

/// Phase-corrected mean over the given z-vectors of the m support values at
/// global indices (mu_short + 2^{L+1} nu + k) mod N.
ComplexVector average_support_values(const std::vector<ComplexVector>& z_vectors,
                                     std::span<const std::uint64_t> kappas, std::size_t mu_short,
                                     std::uint64_t nu, std::size_t m, int level, int log2n);

NoisyReconstruction reconstruct_noisy(CountingSpectrumAccessor& accessor, std::size_t m,
                                      const NoisyConfig& config = {});

}  // namespace spfft
