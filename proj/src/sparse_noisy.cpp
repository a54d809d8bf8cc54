#include "spfft/sparse_noisy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spfft/dft.hpp"

namespace spfft {

void NoisyConfig::validate() const {
  if (max_kappa_vectors < 2) {
    throw Error(ErrorCode::InvalidArgument, "max_kappa_vectors must be at least 2");
  }
  if (averaging_count > max_kappa_vectors) {
    throw Error(ErrorCode::InvalidArgument, "averaging_count exceeds max_kappa_vectors");
  }
}

std::vector<std::uint64_t> kappa_sequence(int log2n, int level, std::size_t count) {
  const int t = log2n - level - 1;
  const std::uint64_t available = std::uint64_t{1} << t;
  std::vector<std::uint64_t> kappas;
  if (count == 0) return kappas;
  kappas.push_back(0);
  for (int r = 1; r <= t && kappas.size() < count; ++r) kappas.push_back(available >> r);
  for (std::uint64_t k = 3; k < available && kappas.size() < count; k += 2) kappas.push_back(k);
  return kappas;
}

ComplexVector compute_z_kappa(CountingSpectrumAccessor& accessor, std::uint64_t kappa, int level,
                              int log2n) {
  if (level < 0 || level >= log2n - 1) {
    throw Error(ErrorCode::InvalidLevel, "z-vectors need L < J-1");
  }
  const std::size_t period = std::size_t{1} << (level + 1);
  const std::size_t stride = accessor.size() / period;
  if (kappa >= stride) {
    throw Error(ErrorCode::InvalidOffset,
                "offset " + std::to_string(kappa) + " >= " + std::to_string(stride));
  }
  ComplexVector z(period);
  for (std::size_t k = 0; k < period; ++k) z[k] = accessor.read(k * stride + kappa);
  fft_in_place(z, true);
  return z;
}

SupportVote estimate_support_start(CountingSpectrumAccessor& accessor, std::size_t m, int level,
                                   int log2n, const NoisyConfig& config) {
  config.validate();
  if (level < 0 || level >= log2n - 1) {
    throw Error(ErrorCode::InvalidLevel, "support vote needs L < J-1");
  }
  if (m < 1 || m > (std::size_t{1} << level)) {
    throw Error(ErrorCode::InvalidSupportLength, "support vote needs 1 <= m <= 2^L");
  }
  const std::vector<std::uint64_t> kappas = kappa_sequence(log2n, level, config.max_kappa_vectors);

  SupportVote vote;
  std::vector<double> energy_sum;
  auto add_vector = [&](std::uint64_t kappa) {
    ComplexVector z = compute_z_kappa(accessor, kappa, level, log2n);
    const auto energies = window_energies(z, m);
    if (energy_sum.empty()) {
      energy_sum = energies;
    } else {
      for (std::size_t k = 0; k < energies.size(); ++k) energy_sum[k] += energies[k];
    }
    vote.z_vectors.push_back(std::move(z));
    vote.kappas.push_back(kappa);
    // The argmax of the running sum equals that of the running mean.
    vote.votes.push_back(argmax_first(energy_sum));
  };

  add_vector(kappas[0]);
  add_vector(kappas[1]);
  std::size_t next = 2;
  while (vote.votes[vote.votes.size() - 1] != vote.votes[vote.votes.size() - 2] &&
         next < kappas.size()) {
    add_vector(kappas[next++]);
  }
  vote.mu_short = vote.votes.back();
  vote.stable = vote.votes[vote.votes.size() - 1] == vote.votes[vote.votes.size() - 2];
  return vote;
}

SupportRefinement refine_support(std::span<const Complex> window, std::size_t mu_short,
                                 CountingSpectrumAccessor& accessor, std::size_t m, int level,
                                 int log2n, const NoisyConfig& config) {
  if (window.size() != m) throw Error(ErrorCode::LengthMismatch, "window must hold m values");
  const std::size_t n = accessor.size();
  const std::size_t budget = config.candidate_scan_budget == 0 ? m : config.candidate_scan_budget;

  SupportRefinement out;
  out.mu = mu_short;
  for (int j = level + 1; j <= log2n - 1; ++j) {
    // Odd coefficients of x^{(j+1)} are x̂_{2^{J-j-1}(2k+1)}, k < 2^j.
    const std::size_t stride = n >> (j + 1);
    const std::size_t candidates = std::min<std::size_t>(budget, std::size_t{1} << j);
    std::size_t k0 = 0;
    Complex measured{};
    double best = -1;
    for (std::size_t k = 0; k < candidates; ++k) {
      const Complex v = accessor.read(stride * (2 * k + 1));
      if (std::norm(v) > best) {
        best = std::norm(v);
        k0 = k;
        measured = v;
      }
    }
    // a_{j+1} = sum_l x^{(L+1)}_{mu_short + l} ω_{2^{j+1}}^{(2k0+1)(mu^{(j)} + l)}
    const std::uint64_t frequency = 2 * k0 + 1;
    Complex phasor = unit_root(frequency * out.mu, j + 1);
    const Complex step = unit_root(frequency, j + 1);
    Complex predicted{};
    for (std::size_t l = 0; l < m; ++l) {
      predicted += window[l] * phasor;
      phasor *= step;
    }
    const bool shift = std::abs(predicted - measured) > std::abs(predicted + measured);
    out.decisions.push_back(shift);
    if (shift) out.mu += std::size_t{1} << j;
  }
  return out;
}

ComplexVector average_support_values(const std::vector<ComplexVector>& z_vectors,
                                     std::span<const std::uint64_t> kappas, std::size_t mu_short,
                                     std::uint64_t nu, std::size_t m, int level, int log2n) {
  if (z_vectors.empty() || kappas.empty()) {
    throw Error(ErrorCode::NoVectors, "no z-vectors to average");
  }
  if (z_vectors.size() != kappas.size()) {
    throw Error(ErrorCode::LengthMismatch, "one offset per z-vector required");
  }
  const std::size_t period = std::size_t{1} << (level + 1);
  const std::uint64_t n_mask = (std::uint64_t{1} << log2n) - 1;
  const std::uint64_t mu = (mu_short + period * nu) & n_mask;
  ComplexVector out(m);
  for (std::size_t r = 0; r < z_vectors.size(); ++r) {
    const ComplexVector& z = z_vectors[r];
    if (z.size() != period) throw Error(ErrorCode::LengthMismatch, "z-vector length mismatch");
    // ω_N^{-κ(mu+k)}: start phasor and unit step, conjugated.
    const std::uint64_t kappa = kappas[r];
    Complex phasor = std::conj(unit_root(kappa * mu, log2n));
    const Complex step = std::conj(unit_root(kappa, log2n));
    for (std::size_t k = 0; k < m; ++k) {
      out[k] += z[(mu_short + k) & (period - 1)] * phasor;
      phasor *= step;
    }
  }
  const double scale = 1.0 / static_cast<double>(z_vectors.size());
  for (auto& v : out) v *= scale;
  return out;
}

NoisyReconstruction reconstruct_noisy(CountingSpectrumAccessor& accessor, std::size_t m,
                                      const NoisyConfig& config) {
  config.validate();
  const std::size_t n = accessor.size();
  const int log2n = accessor.log2_size();
  if (m < 1 || m > n) {
    throw Error(ErrorCode::InvalidSupportLength,
                "support length " + std::to_string(m) + " outside [1, " + std::to_string(n) + "]");
  }
  NoisyReconstruction result;
  result.level_L = ceil_log2(m);
  const int level = result.level_L;
  if (level >= log2n - 1) {
    result.fallback = true;
    result.placed = full_inverse_placement(accessor, m, result.support);
    result.samples_used = accessor.read_count();
    return result;
  }

  SupportVote vote = estimate_support_start(accessor, m, level, log2n, config);
  result.mu_votes = vote.votes;
  result.votes_stable = vote.stable;
  result.kappa_vectors_used = vote.z_vectors.size();

  const std::size_t period = std::size_t{1} << (level + 1);
  ComplexVector window(m);
  for (std::size_t l = 0; l < m; ++l) window[l] = vote.z_vectors[0][(vote.mu_short + l) & (period - 1)];

  SupportRefinement refined = refine_support(window, vote.mu_short, accessor, m, level, log2n, config);
  result.doubling_decisions = std::move(refined.decisions);
  const std::uint64_t nu = (refined.mu - vote.mu_short) / period;

  std::size_t averaged = config.averaging_count == 0 ? vote.z_vectors.size()
                                                     : std::min(config.averaging_count, vote.z_vectors.size());
  vote.z_vectors.resize(averaged);
  ComplexVector values = average_support_values(
      vote.z_vectors, std::span(vote.kappas).first(averaged), vote.mu_short, nu, m, level, log2n);

  const std::size_t mu = refined.mu & (n - 1);
  result.placed = {n, mu, std::move(values)};
  result.support = {mu, m};
  result.samples_used = accessor.read_count();
  return result;
}

}  // namespace spfft
