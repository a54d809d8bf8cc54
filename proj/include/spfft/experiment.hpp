#pragma once

// Monte-Carlo harness: random small-support signals, calibrated spectral
// noise, and aggregated recovery statistics per noise level.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spfft/signal_lab.hpp"
#include "spfft/sparse_noisy.hpp"

namespace spfft {

enum class Algorithm { Exact, Noisy, IfftBaseline };

Algorithm parse_algorithm(std::string_view name);
const char* to_string(Algorithm algorithm);

struct ExperimentConfig {
  std::size_t n = std::size_t{1} << 16;
  std::size_t m = 50;
  /// Target SNR values in dB; +inf means noiseless.
  std::vector<double> snr_list;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  Algorithm algorithm = Algorithm::Noisy;
  NoisyConfig noisy;
  NoiseShape noise_shape = NoiseShape::Disc;
  /// Worker threads; 0 means hardware concurrency.
  std::size_t threads = 1;

  void validate() const;
};

/// One trial: signal seeded by seed ^ trial, noise by (seed, trial, snr).
TrialRecord run_trial(const ExperimentConfig& config, double snr_db, std::size_t trial);

struct ExperimentRow {
  double snr_db = 0;
  std::size_t trials = 0;
  double mu_correct_pct = 0;
  double mean_err_sparse = 0;
  double mean_err_ifft = 0;
  double mean_noise_inf = 0;
  double mean_noise_l1_over_n = 0;
  double mean_samples = 0;
  double mean_kappa_vectors = 0;
};

ExperimentRow aggregate(double snr_db, const std::vector<TrialRecord>& records);

/// Runs trials x snr_list; rows come back in snr_list order and do not
/// depend on the thread count.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

inline constexpr std::string_view kExperimentCsvHeader =
    "snr_db,trials,mu_correct_pct,mean_err_sparse,mean_err_ifft,mean_noise_inf,"
    "mean_noise_l1_over_N,mean_samples,mean_kappa_vectors";

std::string experiment_csv(const std::vector<ExperimentRow>& rows);

struct BenchRow {
  std::size_t n = 0;
  std::size_t m = 0;
  std::string algorithm;
  double mean_ns = 0;
  double samples_used = 0;
};

inline constexpr std::string_view kBenchCsvHeader = "N,m,algorithm,mean_ns,samples_used";

/// Wall-time of exact, noisy and full inverse FFT reconstructions on
/// noiseless spectra; m values above N are skipped.
std::vector<BenchRow> run_bench(const std::vector<std::size_t>& ns,
                                const std::vector<std::size_t>& ms, std::size_t trials,
                                std::uint64_t seed);

std::string bench_csv(const std::vector<BenchRow>& rows);

/// Locale-independent shortest round-trip formatting ("inf" for infinity).
std::string format_double(double v);
/// Locale-independent formatting with 17 significant digits.
std::string format_double17(double v);

/// Runs task(i) for i < count on up to `threads` workers.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& task);

/// Worker count from SPFFT_THREADS (unset or invalid: hardware concurrency).
std::size_t threads_from_env();

}  // namespace spfft
