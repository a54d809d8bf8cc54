#include "spfft/signal_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "spfft/dft.hpp"

namespace spfft {

std::uint64_t CounterRng::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return mix(seed_ + counter_ * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  return CounterRng::mix(CounterRng::mix(base ^ a) + 0x9E3779B97F4A7C15ULL * (b + 1));
}

std::pair<Signal, SupportDescriptor> gen_sparse_signal(std::size_t n, std::size_t m,
                                                       std::uint64_t seed) {
  log2_length(n);
  if (m < 1 || m > n) {
    throw Error(ErrorCode::InvalidSupportLength,
                "support length " + std::to_string(m) + " outside [1, " + std::to_string(n) + "]");
  }
  CounterRng rng(seed);
  const std::size_t mu = rng.next_u64() & (n - 1);
  auto draw = [&] {
    const double re = rng.uniform(-kAmplitude, kAmplitude);
    const double im = rng.uniform(-kAmplitude, kAmplitude);
    return Complex{re, im};
  };
  auto draw_endpoint = [&] {
    Complex v = draw();
    while (std::abs(v) < kEndpointFloor) v = draw();
    return v;
  };
  ComplexVector x(n);
  for (std::size_t r = 0; r < m; ++r) {
    const bool endpoint = r == 0 || r + 1 == m;
    x[(mu + r) & (n - 1)] = endpoint ? draw_endpoint() : draw();
  }
  return {Signal(std::move(x)), SupportDescriptor{mu, m}};
}

NoisySpectrum add_noise(const Spectrum& s, const NoiseSpec& spec) {
  const std::size_t n = s.size();
  if (spec.mode == NoiseMode::Bound && !(spec.delta >= 0 && std::isfinite(spec.delta))) {
    throw Error(ErrorCode::InvalidArgument, "noise bound must be finite and non-negative");
  }
  if (spec.mode == NoiseMode::TargetSnr && !std::isfinite(spec.snr_db)) {
    throw Error(ErrorCode::InvalidArgument, "target SNR must be finite");
  }
  const double signal_norm = norm2(s.values());
  if (spec.mode == NoiseMode::TargetSnr && signal_norm == 0) {
    throw Error(ErrorCode::CannotCalibrate, "cannot calibrate SNR against a zero spectrum");
  }

  CounterRng rng(spec.seed);
  ComplexVector noise(n);
  for (auto& e : noise) {
    if (spec.shape == NoiseShape::Disc) {
      const double radius = std::sqrt(rng.next_unit());
      const double angle = 2.0 * std::numbers::pi * rng.next_unit();
      e = std::polar(radius, angle);
    } else {
      const double re = rng.uniform(-1.0, 1.0);
      const double im = rng.uniform(-1.0, 1.0);
      e = {re, im};
    }
  }
  double scale = spec.delta;
  if (spec.mode == NoiseMode::TargetSnr) {
    scale = signal_norm / (norm2(noise) * std::pow(10.0, spec.snr_db / 20.0));
  }
  ComplexVector noisy(n);
  for (std::size_t k = 0; k < n; ++k) {
    noise[k] *= scale;
    noisy[k] = s[k] + noise[k];
  }
  return {Spectrum(std::move(noisy)), Spectrum(std::move(noise))};
}

double norm2(std::span<const Complex> v) {
  // Scaled accumulation keeps large spectra away from overflow.
  double scale = norm_inf(v);
  if (scale == 0) return 0;
  double sum = 0;
  for (const auto& c : v) sum += std::norm(c / scale);
  return scale * std::sqrt(sum);
}

double norm_inf(std::span<const Complex> v) {
  double out = 0;
  for (const auto& c : v) out = std::max(out, std::abs(c));
  return out;
}

double norm1(std::span<const Complex> v) {
  double out = 0;
  for (const auto& c : v) out += std::abs(c);
  return out;
}

double snr_db(std::span<const Complex> signal, std::span<const Complex> noise) {
  const double noise_norm = norm2(noise);
  if (noise_norm == 0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(norm2(signal) / noise_norm);
}

double error_l2_over_n(const Signal& x, const Signal& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, "error metric needs equal lengths");
  }
  ComplexVector diff(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) diff[k] = x[k] - y[k];
  return norm2(diff) / static_cast<double>(x.size());
}

Signal oracle_inverse(const Spectrum& s) { return fft_inverse(s); }

std::size_t minimal_support_length(std::span<const Complex> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> nonzero;
  for (std::size_t k = 0; k < n; ++k) {
    if (x[k] != Complex{}) nonzero.push_back(k);
  }
  if (nonzero.empty()) return 0;
  // The shortest covering window leaves out the largest cyclic gap.
  std::size_t largest_gap = 0;
  for (std::size_t i = 0; i < nonzero.size(); ++i) {
    const std::size_t next = nonzero[(i + 1) % nonzero.size()];
    const std::size_t gap = (next + n - nonzero[i]) % n;
    largest_gap = std::max(largest_gap, gap == 0 ? n : gap);
  }
  return n - largest_gap + 1;
}

}  // namespace spfft
