#include "spfft/sparse_exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spfft/dft.hpp"

namespace spfft {
namespace {

// Relative floor below which an odd sample counts as zero.
constexpr double kZeroSampleTolerance = 1e-10;

}  // namespace

Signal PlacedValues::to_signal() const {
  ComplexVector out(length);
  const std::size_t mask = length - 1;
  for (std::size_t k = 0; k < values.size(); ++k) out[(values_start + k) & mask] = values[k];
  return Signal(std::move(out));
}

std::vector<double> window_energies(std::span<const Complex> p, std::size_t m) {
  const std::size_t n = p.size();
  if (m < 1 || m > n) {
    throw Error(ErrorCode::InvalidSupportLength, "window length " + std::to_string(m) +
                                                     " outside [1, " + std::to_string(n) + "]");
  }
  std::vector<double> energies(n);
  double e = 0;
  for (std::size_t l = 0; l < m; ++l) e += std::norm(p[l]);
  energies[0] = e;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    e += std::norm(p[(k + m) % n]) - std::norm(p[k]);
    energies[k + 1] = e;
  }
  return energies;
}

std::size_t argmax_first(std::span<const double> values) {
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

std::size_t find_support_start(std::span<const Complex> p, std::size_t m) {
  if (m < 1 || 2 * m > p.size()) {
    throw Error(ErrorCode::AmbiguousSupport, "support length " + std::to_string(m) +
                                                 " exceeds half of " + std::to_string(p.size()));
  }
  const auto energies = window_energies(p, m);
  return argmax_first(energies);
}

OddSample select_odd_sample(CountingSpectrumAccessor& accessor, int log2n, int level) {
  if (level < 0 || level >= log2n - 1) {
    throw Error(ErrorCode::InvalidLevel, "odd-sample selection needs L < J-1");
  }
  const std::size_t n = accessor.size();
  const std::size_t count = std::size_t{1} << (level + 1);
  const std::size_t stride = n / count;

  std::size_t best_k = 0;
  double best = -1;
  for (std::size_t k = 0; k < count; ++k) {
    const double v = std::norm(accessor.read(k * stride));
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  if (best <= 0) throw Error(ErrorCode::ZeroSignal, "spectrum is identically zero");

  const double floor = kZeroSampleTolerance * kZeroSampleTolerance * best;
  const std::size_t center = best_k * stride;
  const std::size_t right = (center + 1) & (n - 1);
  const std::size_t left = (center + n - 1) & (n - 1);
  const Complex right_value = accessor.read(right);
  const Complex left_value = accessor.read(left);
  const double right_norm = std::norm(right_value);
  const double left_norm = std::norm(left_value);
  if (std::max(right_norm, left_norm) > floor) {
    return right_norm >= left_norm ? OddSample{right / 2, right_value}
                                   : OddSample{left / 2, left_value};
  }
  for (std::size_t idx = 1; idx < n; idx += 2) {
    const Complex v = accessor.read(idx);
    if (std::norm(v) > floor) return OddSample{idx / 2, v};
  }
  throw Error(ErrorCode::ZeroSignal, "all odd-indexed Fourier values vanish");
}

std::uint64_t mod_inverse_pow2(std::uint64_t a, int t) {
  if (t < 1 || t > 64) throw Error(ErrorCode::InvalidArgument, "modulus exponent out of range");
  if ((a & 1) == 0) throw Error(ErrorCode::NotInvertible, "even number has no inverse mod 2^t");
  // Newton iteration doubles the number of correct low bits each step.
  std::uint64_t inv = a;  // correct to 3 bits for odd a
  for (int i = 0; i < 5; ++i) inv *= 2 - a * inv;
  return t == 64 ? inv : inv & ((std::uint64_t{1} << t) - 1);
}

ShiftResolution resolve_shift(Complex b, std::uint64_t k0, int t) {
  if (t < 1 || t > 62) throw Error(ErrorCode::InvalidArgument, "modulus exponent out of range");
  if (std::abs(b) == 0) throw Error(ErrorCode::DegenerateQuotient, "quotient is zero");
  const double steps = static_cast<double>(std::uint64_t{1} << t);
  const double position = -std::arg(b) * steps / (2.0 * std::numbers::pi);
  const double nearest = std::round(position);
  if (std::abs(position - nearest) > 0.25) {
    throw Error(ErrorCode::NoisyQuotient,
                "quotient phase is " + std::to_string(std::abs(position - nearest)) +
                    " steps from a root of unity");
  }
  const std::uint64_t mask = (std::uint64_t{1} << t) - 1;
  const auto p = static_cast<std::uint64_t>(static_cast<std::int64_t>(nearest)) & mask;
  const std::uint64_t odd = (2 * k0 + 1) & mask;
  return {p, (p * mod_inverse_pow2(odd, t)) & mask};
}

PlacedValues full_inverse_placement(CountingSpectrumAccessor& accessor, std::size_t m,
                                    SupportDescriptor& support) {
  Signal x = fft_inverse(accessor.read_all());
  const std::size_t n = x.size();
  std::size_t start = 0;
  if (m < n) start = argmax_first(window_energies(x.values(), m));
  support = {start, m};
  return {n, 0, std::move(x).release()};
}

ExactReconstruction reconstruct_exact(CountingSpectrumAccessor& accessor, std::size_t m) {
  const std::size_t n = accessor.size();
  const int log2n = accessor.log2_size();
  if (m < 1 || m > n) {
    throw Error(ErrorCode::InvalidSupportLength,
                "support length " + std::to_string(m) + " outside [1, " + std::to_string(n) + "]");
  }
  ExactReconstruction result;
  result.level_L = ceil_log2(m);
  const int level = result.level_L;
  if (level >= log2n - 1) {
    result.fallback = true;
    result.placed = full_inverse_placement(accessor, m, result.support);
    result.samples_used = accessor.read_count();
    return result;
  }

  // Step 1: inverse FFT of the stride-subsampled spectrum gives x^{(L+1)}.
  const std::size_t period = std::size_t{1} << (level + 1);
  const std::size_t stride = n / period;
  ComplexVector periodized(period);
  bool all_zero = true;
  for (std::size_t k = 0; k < period; ++k) {
    periodized[k] = accessor.read(k * stride);
    all_zero = all_zero && periodized[k] == Complex{};
  }
  if (all_zero) {
    result.placed = {n, 0, ComplexVector(m)};
    result.support = {0, m};
    result.samples_used = accessor.read_count();
    return result;
  }
  fft_in_place(periodized, true);

  // Step 2: support start of the periodization.
  const std::size_t mu_short = find_support_start(periodized, m);

  // Step 3: one odd sample and the matching coefficient of the unshifted candidate.
  const OddSample odd = select_odd_sample(accessor, log2n, level);
  const std::uint64_t frequency = (2 * odd.k0 + 1) & (n - 1);
  Complex phasor = unit_root(frequency * mu_short, log2n);
  const Complex step = unit_root(frequency, log2n);
  Complex candidate{};
  ComplexVector values(m);
  for (std::size_t l = 0; l < m; ++l) {
    values[l] = periodized[(mu_short + l) & (period - 1)];
    candidate += values[l] * phasor;
    phasor *= step;
  }
  if (std::abs(candidate) == 0) {
    throw Error(ErrorCode::DegenerateQuotient, "candidate coefficient vanishes");
  }

  // Step 4: the quotient is a 2^{J-L-1}-th root of unity encoding the shift.
  const int t = log2n - level - 1;
  const ShiftResolution shift = resolve_shift(odd.value / candidate, odd.k0, t);

  // Step 5: place the support values at mu = mu_short + 2^{L+1} nu.
  const std::size_t mu = (mu_short + period * shift.nu) & (n - 1);
  result.placed = {n, mu, std::move(values)};
  result.support = {mu, m};
  result.shift_nu = shift.nu;
  result.quotient_p = shift.p;
  result.samples_used = accessor.read_count();
  return result;
}

}  // namespace spfft
