#include "spfft/dft.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

namespace spfft {
namespace {

// Half-length table w_k = exp(-2πi k/N), k < N/2, built once per length.
class TwiddleCache {
 public:
  std::shared_ptr<const ComplexVector> get(int log2n) {
    std::lock_guard lock(mutex_);
    auto& slot = tables_[static_cast<std::size_t>(log2n)];
    if (!slot) {
      const std::size_t n = std::size_t{1} << log2n;
      auto table = std::make_shared<ComplexVector>(n / 2);
      for (std::size_t k = 0; k < n / 2; ++k) (*table)[k] = unit_root(k, log2n);
      slot = std::move(table);
    }
    return slot;
  }

 private:
  std::mutex mutex_;
  std::array<std::shared_ptr<const ComplexVector>, kMaxLog2Length + 1> tables_{};
};

TwiddleCache& twiddles() {
  static TwiddleCache cache;
  return cache;
}

void bit_reverse_permute(std::span<Complex> data) {
  const std::size_t n = data.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
}

void check_level(int level, int max_level) {
  if (level < 0 || level > max_level) {
    throw Error(ErrorCode::InvalidLevel, "level " + std::to_string(level) +
                                             " outside [0, " + std::to_string(max_level) + "]");
  }
}

}  // namespace

Complex unit_root(std::uint64_t numerator, int log2_denominator) {
  const std::uint64_t n = std::uint64_t{1} << log2_denominator;
  const std::uint64_t r = numerator & (n - 1);
  if (log2_denominator < 2) return r == 0 ? Complex{1, 0} : Complex{-1, 0};
  // Quadrant reduction keeps the trig argument in [0, π/2) and makes the
  // quarter turns exact.
  const std::uint64_t quarter = n >> 2;
  const std::uint64_t quadrant = r / quarter;
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(r % quarter) /
                       static_cast<double>(n);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  double cos_phi = c;
  double sin_phi = s;
  switch (quadrant) {
    case 1: cos_phi = -s; sin_phi = c; break;
    case 2: cos_phi = -c; sin_phi = -s; break;
    case 3: cos_phi = s; sin_phi = -c; break;
    default: break;
  }
  return {cos_phi, -sin_phi};
}

ComplexVector naive_dft(std::span<const Complex> x) {
  const std::size_t n = x.size();
  ComplexVector roots(n);
  for (std::size_t r = 0; r < n; ++r) {
    roots[r] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
  }
  ComplexVector out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{};
    std::size_t r = 0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += x[j] * roots[r];
      r += k;
      if (r >= n) r -= n;
    }
    out[k] = acc;
  }
  return out;
}

Spectrum naive_dft(const Signal& x) { return Spectrum(naive_dft(x.values())); }

void fft_in_place(std::span<Complex> data, bool inverse) {
  const int log2n = log2_length(data.size());
  const std::size_t n = data.size();
  if (n == 1) return;

  const auto table_ptr = twiddles().get(log2n);
  const ComplexVector& table = *table_ptr;

  bit_reverse_permute(data);
  for (std::size_t half = 1; half < n; half <<= 1) {
    const std::size_t stride = n / (2 * half);
    for (std::size_t start = 0; start < n; start += 2 * half) {
      for (std::size_t k = 0; k < half; ++k) {
        Complex w = table[k * stride];
        if (inverse) w = std::conj(w);
        const Complex t = w * data[start + k + half];
        data[start + k + half] = data[start + k] - t;
        data[start + k] += t;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : data) v *= scale;
  }
}

Spectrum fft_forward(const Signal& x) {
  ComplexVector data = x.vector();
  fft_in_place(data, false);
  return Spectrum(std::move(data));
}

Signal fft_inverse(const Spectrum& s) {
  ComplexVector data = s.vector();
  fft_in_place(data, true);
  return Signal(std::move(data));
}

Signal periodize(const Signal& x, int level) {
  check_level(level, x.log2_size());
  const std::size_t period = std::size_t{1} << level;
  ComplexVector out(period);
  for (std::size_t k = 0; k < x.size(); ++k) out[k & (period - 1)] += x[k];
  return Signal(std::move(out));
}

Spectrum subsample_spectrum(const Spectrum& s, int level) {
  check_level(level, s.log2_size());
  const std::size_t count = std::size_t{1} << level;
  const std::size_t stride = s.size() / count;
  ComplexVector out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = s[k * stride];
  return Spectrum(std::move(out));
}

bool modulation_check(const Signal& x, int level, std::uint64_t shift) {
  const int log2n = x.log2_size();
  if (level < 0 || level > log2n - 1) {
    throw Error(ErrorCode::InvalidLevel, "modulation level out of range");
  }
  const int period_log2 = log2n - level;
  if (shift >= (std::uint64_t{1} << period_log2)) {
    throw Error(ErrorCode::InvalidArgument, "modulation shift out of range");
  }
  const std::size_t n = x.size();
  const std::size_t offset = (std::size_t{1} << level) * shift;
  ComplexVector shifted(n);
  for (std::size_t k = 0; k < n; ++k) shifted[k] = x[(k + offset) & (n - 1)];

  const ComplexVector x_hat = naive_dft(x.values());
  const ComplexVector y_hat = naive_dft(shifted);
  double scale = 0;
  for (const auto& v : x_hat) scale = std::max(scale, std::abs(v));
  if (scale == 0) return std::all_of(y_hat.begin(), y_hat.end(), [](Complex v) { return v == Complex{}; });

  const std::uint64_t mask = (std::uint64_t{1} << period_log2) - 1;
  for (std::size_t l = 0; l < n; ++l) {
    // ω_{2^{J-j}}^{-l ν} = exp(+2πi l ν / 2^{J-j})
    const std::uint64_t e = (mask + 1 - ((l * shift) & mask)) & mask;
    const Complex expected = unit_root(e, period_log2) * x_hat[l];
    if (std::abs(expected - y_hat[l]) > 1e-10 * scale) return false;
  }
  return true;
}

}  // namespace spfft
