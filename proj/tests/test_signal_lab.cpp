#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "spfft/dft.hpp"
#include "spfft/signal_lab.hpp"
#include "test_util.hpp"

namespace spfft {
namespace {

TEST(CounterRng, MatchesReferenceSplitMix64) {
  CounterRng rng(0);
  EXPECT_EQ(rng.next_u64(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next_u64(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.next_u64(), 0x06c45d188009454fULL);
}

TEST(CounterRng, UnitInterval) {
  CounterRng rng(99);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(GenSparseSignal, GoldenSeed42) {
  // Generated by an independent SplitMix64 transcription of the generator.
  const auto [x, support] = gen_sparse_signal(64, 5, 42);
  EXPECT_EQ(support.first_index, 21u);
  EXPECT_EQ(support.length, 5u);
  const ComplexVector want{
      {-0x1.b3508ffd83fd5p+2, -0x1.1b63fb4ca0b20p+2}, {-0x1.8edf2c0971134p+1, -0x1.27a9231ea54bbp+3},
      {0x1.d754f9e32e844p+2, -0x1.6870fc72a5eb0p+2},  {0x1.80cf0da91916cp+2, -0x1.99c6cb598f994p+1},
      {0x1.2f5068319efa8p+1, -0x1.79b9c48bab388p+2},
  };
  for (std::size_t k = 0; k < 64; ++k) {
    if (k >= 21 && k < 26) {
      EXPECT_EQ(x[k], want[k - 21]) << k;
    } else {
      EXPECT_EQ(x[k], Complex{}) << k;
    }
  }
}

TEST(GenSparseSignal, FullAndSingleSupport) {
  const auto [dense, dsupport] = gen_sparse_signal(32, 32, 3);
  EXPECT_EQ(dsupport.length, 32u);
  EXPECT_LT(dsupport.first_index, 32u);
  EXPECT_GE(std::abs(dense[dsupport.first_index]), kEndpointFloor);

  const auto [single, ssupport] = gen_sparse_signal(32, 1, 4);
  EXPECT_EQ(minimal_support_length(single.values()), 1u);
  EXPECT_GE(std::abs(single[ssupport.first_index]), kEndpointFloor);
}

TEST(GenSparseSignal, BoxBounds) {
  const auto [x, support] = gen_sparse_signal(1024, 300, 5);
  for (const auto& v : x) {
    EXPECT_LE(std::abs(v.real()), kAmplitude);
    EXPECT_LE(std::abs(v.imag()), kAmplitude);
  }
}

TEST(GenSparseSignal, SupportLengthIsExact) {
  std::mt19937_64 rng(41);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t n = std::size_t{1} << (1 + rng() % 10);
    const std::size_t m = 1 + rng() % n;
    const auto [x, support] = gen_sparse_signal(n, m, seed);
    // Brute force over every start: the window must reach the farthest nonzero.
    std::size_t shortest = n;
    for (std::size_t start = 0; start < n; ++start) {
      std::size_t reach = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (x[k] != Complex{}) reach = std::max(reach, (k + n - start) % n + 1);
      }
      shortest = std::min(shortest, reach);
    }
    EXPECT_EQ(shortest, m) << "n=" << n << " seed=" << seed;
    EXPECT_EQ(minimal_support_length(x.values()), m);
  }
}

TEST(GenSparseSignal, Deterministic) {
  EXPECT_EQ(gen_sparse_signal(256, 17, 9).first, gen_sparse_signal(256, 17, 9).first);
  EXPECT_NE(gen_sparse_signal(256, 17, 9).first, gen_sparse_signal(256, 17, 10).first);
  EXPECT_THROW(gen_sparse_signal(256, 0, 1), Error);
  EXPECT_THROW(gen_sparse_signal(100, 3, 1), Error);
}

TEST(AddNoise, ZeroBound) {
  const Spectrum s = fft_forward(gen_sparse_signal(64, 4, 1).first);
  const auto out = add_noise(s, NoiseSpec::bound(0, 5));
  EXPECT_EQ(out.noisy, s);
  EXPECT_TRUE(std::isinf(snr_db(s.values(), out.noise.values())));
}

TEST(AddNoise, BoundRespected) {
  const Spectrum s = fft_forward(gen_sparse_signal(1024, 40, 2).first);
  for (NoiseShape shape : {NoiseShape::Disc, NoiseShape::Box}) {
    const auto out = add_noise(s, NoiseSpec::bound(0.75, 7, shape));
    const double limit = shape == NoiseShape::Disc ? 0.75 : 0.75 * std::sqrt(2.0);
    EXPECT_LE(norm_inf(out.noise.values()), limit);
    EXPECT_GT(norm_inf(out.noise.values()), 0.9 * limit);
    for (std::size_t k = 0; k < s.size(); ++k) EXPECT_EQ(out.noisy[k], s[k] + out.noise[k]);
  }
}

TEST(AddNoise, SnrCalibration) {
  const Spectrum s = fft_forward(gen_sparse_signal(256, 12, 3).first);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const double target = static_cast<double>(seed % 51) - 5.0;
    const auto out = add_noise(s, NoiseSpec::snr(target, seed));
    const double realized = snr_db(s.values(), out.noise.values());
    ASSERT_NEAR(realized, target, 0.01) << "seed=" << seed;
  }
}

TEST(AddNoise, CannotCalibrateZeroSpectrum) {
  try {
    add_noise(Spectrum::zeros(8), NoiseSpec::snr(10, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CannotCalibrate);
  }
  EXPECT_THROW(add_noise(Spectrum::zeros(8), NoiseSpec::bound(-1, 1)), Error);
}

TEST(AddNoise, LargeScaleNoiseMagnitude) {
  // Full-size regime: N = 2^22, m = 50, SNR 20. The reported mean sup-norm
  // of the noise is 6.751; accept a factor 1.5 either way.
  const std::size_t n = std::size_t{1} << 22;
  double mean_inf = 0;
  const int draws = 3;
  for (int t = 0; t < draws; ++t) {
    const Spectrum s = fft_forward(gen_sparse_signal(n, 50, 100 + t).first);
    mean_inf += norm_inf(add_noise(s, NoiseSpec::snr(20, 200 + t)).noise.values()) / draws;
  }
  EXPECT_GT(mean_inf, 6.751 / 1.5);
  EXPECT_LT(mean_inf, 6.751 * 1.5);
}

TEST(ErrorMetric, Examples) {
  const Signal x = gen_sparse_signal(16, 3, 1).first;
  EXPECT_EQ(error_l2_over_n(x, x), 0.0);
  ComplexVector shifted = x.vector();
  shifted[5] += 16.0;
  EXPECT_DOUBLE_EQ(error_l2_over_n(x, Signal(shifted)), 1.0);
  EXPECT_THROW(error_l2_over_n(x, Signal::zeros(8)), Error);
}

TEST(OracleInverse, ExactNoisyAndZero) {
  const Signal x = gen_sparse_signal(512, 20, 6).first;
  const Spectrum s = fft_forward(x);
  EXPECT_LT(testing::max_abs_diff(oracle_inverse(s).values(), x.values()), 1e-12 * 10);

  for (const auto& v : oracle_inverse(Spectrum::zeros(64))) EXPECT_EQ(v, Complex{});

  const auto noisy = add_noise(s, NoiseSpec::bound(2.0, 8));
  const double n = 512;
  const double want = norm2(noisy.noise.values()) / (n * std::sqrt(n));
  EXPECT_NEAR(error_l2_over_n(x, oracle_inverse(noisy.noisy)), want, 1e-10 * want);
}

TEST(OracleInverse, ParsevalUnderScaledInverse) {
  std::mt19937_64 rng(42);
  for (std::size_t n = 2; n <= 4096; n *= 2) {
    const Spectrum eps(testing::random_vector(rng, n));
    const double lhs = norm2(oracle_inverse(eps).values());
    const double rhs = norm2(eps.values()) / std::sqrt(static_cast<double>(n));
    EXPECT_NEAR(lhs, rhs, 1e-10 * rhs);
  }
}

TEST(MinimalSupportLength, Cases) {
  ComplexVector x(8);
  EXPECT_EQ(minimal_support_length(x), 0u);
  x[0] = 1;
  x[5] = 1;
  EXPECT_EQ(minimal_support_length(x), 4u);
  x[2] = 1;
  EXPECT_EQ(minimal_support_length(x), 6u);
}

}  // namespace
}  // namespace spfft
