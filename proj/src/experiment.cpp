#include "spfft/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <thread>

#include "spfft/dft.hpp"
#include "spfft/sparse_exact.hpp"

namespace spfft {

Algorithm parse_algorithm(std::string_view name) {
  if (name == "exact") return Algorithm::Exact;
  if (name == "noisy") return Algorithm::Noisy;
  if (name == "ifft-baseline" || name == "ifft") return Algorithm::IfftBaseline;
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm '" + std::string(name) + "'");
}

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Exact: return "exact";
    case Algorithm::Noisy: return "noisy";
    case Algorithm::IfftBaseline: return "ifft-baseline";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  log2_length(n);
  if (m < 1 || m > n) throw Error(ErrorCode::InvalidSupportLength, "m outside [1, N]");
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  if (snr_list.empty()) throw Error(ErrorCode::InvalidArgument, "snr list is empty");
  for (double snr : snr_list) {
    if (std::isnan(snr) || snr == -std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::InvalidArgument, "snr values must be finite or +inf");
    }
  }
  noisy.validate();
}

TrialRecord run_trial(const ExperimentConfig& config, double snr, std::size_t trial) {
  const auto [x, truth] = gen_sparse_signal(config.n, config.m, config.seed ^ trial);
  const Spectrum clean = fft_forward(x);

  TrialRecord record;
  record.n = config.n;
  record.m = config.m;
  record.snr_db = snr;

  Spectrum noisy = clean;
  if (std::isfinite(snr)) {
    const auto noise_seed = derive_seed(config.seed, trial, std::bit_cast<std::uint64_t>(snr));
    NoisySpectrum perturbed = add_noise(clean, NoiseSpec::snr(snr, noise_seed, config.noise_shape));
    record.noise_inf_norm = norm_inf(perturbed.noise.values());
    record.noise_l1_over_n = norm1(perturbed.noise.values()) / static_cast<double>(config.n);
    noisy = std::move(perturbed.noisy);
  }

  const auto shared = std::make_shared<const Spectrum>(std::move(noisy));
  record.err_ifft = error_l2_over_n(x, oracle_inverse(*shared));

  CountingSpectrumAccessor accessor(shared);
  switch (config.algorithm) {
    case Algorithm::Exact: {
      try {
        const ExactReconstruction r = reconstruct_exact(accessor, config.m);
        record.mu_correct = r.support.first_index == truth.first_index;
        record.err_sparse = error_l2_over_n(x, r.signal());
      } catch (const Error&) {
        // A failed run counts as a wrong support and an all-zero estimate.
        record.mu_correct = false;
        record.err_sparse = norm2(x.values()) / static_cast<double>(config.n);
      }
      record.samples_used = accessor.read_count();
      break;
    }
    case Algorithm::Noisy: {
      const NoisyReconstruction r = reconstruct_noisy(accessor, config.m, config.noisy);
      record.mu_correct = r.support.first_index == truth.first_index;
      record.err_sparse = error_l2_over_n(x, r.signal());
      record.samples_used = r.samples_used;
      record.kappa_vectors_used = r.kappa_vectors_used;
      break;
    }
    case Algorithm::IfftBaseline: {
      SupportDescriptor support;
      full_inverse_placement(accessor, config.m, support);
      record.mu_correct = support.first_index == truth.first_index;
      record.err_sparse = record.err_ifft;
      record.samples_used = accessor.read_count();
      break;
    }
  }
  return record;
}

ExperimentRow aggregate(double snr, const std::vector<TrialRecord>& records) {
  ExperimentRow row;
  row.snr_db = snr;
  row.trials = records.size();
  std::size_t correct = 0;
  for (const auto& r : records) {
    correct += r.mu_correct ? 1 : 0;
    row.mean_err_sparse += r.err_sparse;
    row.mean_err_ifft += r.err_ifft;
    row.mean_noise_inf += r.noise_inf_norm;
    row.mean_noise_l1_over_n += r.noise_l1_over_n;
    row.mean_samples += static_cast<double>(r.samples_used);
    row.mean_kappa_vectors += static_cast<double>(r.kappa_vectors_used);
  }
  const double count = static_cast<double>(records.size());
  row.mu_correct_pct = 100.0 * static_cast<double>(correct) / count;
  row.mean_err_sparse /= count;
  row.mean_err_ifft /= count;
  row.mean_noise_inf /= count;
  row.mean_noise_l1_over_n /= count;
  row.mean_samples /= count;
  row.mean_kappa_vectors /= count;
  return row;
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::size_t levels = config.snr_list.size();
  std::vector<TrialRecord> records(levels * config.trials);
  parallel_for(records.size(), config.threads, [&](std::size_t i) {
    const std::size_t level = i / config.trials;
    records[i] = run_trial(config, config.snr_list[level], i % config.trials);
  });
  std::vector<ExperimentRow> rows;
  for (std::size_t level = 0; level < levels; ++level) {
    const auto first = records.begin() + static_cast<std::ptrdiff_t>(level * config.trials);
    rows.push_back(aggregate(config.snr_list[level],
                             {first, first + static_cast<std::ptrdiff_t>(config.trials)}));
  }
  return rows;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

std::string format_double17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return {buf, res.ptr};
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::string out(kExperimentCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += format_double(r.snr_db) + ',' + std::to_string(r.trials) + ',' +
           format_double(r.mu_correct_pct) + ',' + format_double17(r.mean_err_sparse) + ',' +
           format_double17(r.mean_err_ifft) + ',' + format_double17(r.mean_noise_inf) + ',' +
           format_double17(r.mean_noise_l1_over_n) + ',' + format_double(r.mean_samples) + ',' +
           format_double(r.mean_kappa_vectors) + '\n';
  }
  return out;
}

std::vector<BenchRow> run_bench(const std::vector<std::size_t>& ns,
                                const std::vector<std::size_t>& ms, std::size_t trials,
                                std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  using Clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  for (std::size_t n : ns) {
    log2_length(n);
    for (std::size_t m : ms) {
      if (m < 1 || m > n) continue;
      BenchRow exact{n, m, "exact", 0, 0};
      BenchRow noisy{n, m, "noisy", 0, 0};
      BenchRow ifft{n, m, "ifft", 0, 0};
      for (std::size_t t = 0; t < trials; ++t) {
        const auto [x, truth] = gen_sparse_signal(n, m, seed ^ t);
        const auto spectrum = std::make_shared<const Spectrum>(fft_forward(x));

        CountingSpectrumAccessor exact_access(spectrum);
        auto start = Clock::now();
        const auto e = reconstruct_exact(exact_access, m);
        exact.mean_ns += std::chrono::duration<double, std::nano>(Clock::now() - start).count();
        exact.samples_used += static_cast<double>(e.samples_used);

        CountingSpectrumAccessor noisy_access(spectrum);
        start = Clock::now();
        const auto r = reconstruct_noisy(noisy_access, m);
        noisy.mean_ns += std::chrono::duration<double, std::nano>(Clock::now() - start).count();
        noisy.samples_used += static_cast<double>(r.samples_used);

        start = Clock::now();
        const Signal full = fft_inverse(*spectrum);
        ifft.mean_ns += std::chrono::duration<double, std::nano>(Clock::now() - start).count();
        ifft.samples_used += static_cast<double>(n);
      }
      for (BenchRow* row : {&exact, &noisy, &ifft}) {
        row->mean_ns /= static_cast<double>(trials);
        row->samples_used /= static_cast<double>(trials);
        rows.push_back(*row);
      }
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out(kBenchCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + std::to_string(r.m) + ',' + r.algorithm + ',' +
           format_double(std::round(r.mean_ns)) + ',' + format_double(r.samples_used) + '\n';
  }
  return out;
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> workers;
  for (std::size_t w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  workers.clear();
  if (failure) std::rethrow_exception(failure);
}

std::size_t threads_from_env() {
  const char* env = std::getenv("SPFFT_THREADS");
  std::size_t value = 0;
  if (env != nullptr) {
    const std::string_view text(env);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) value = 0;
  }
  return value == 0 ? std::max(1u, std::thread::hardware_concurrency()) : value;
}

}  // namespace spfft
