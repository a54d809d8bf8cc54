// spfft: generate small-support test vectors, reconstruct them from Fourier
// data with the sparse algorithms, and run the recovery experiments.
//
// Exit codes: 0 success, 2 validation error, 3 I/O error, 4 algorithm failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spfft/dft.hpp"
#include "spfft/experiment.hpp"
#include "spfft/signal_lab.hpp"
#include "spfft/sparse_exact.hpp"
#include "spfft/sparse_noisy.hpp"
#include "spfft/spf1.hpp"

namespace {

using namespace spfft;

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitAlgorithm = 4;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io:
    case ErrorCode::Format:
      return kExitIo;
    case ErrorCode::ZeroSignal:
    case ErrorCode::NotInvertible:
    case ErrorCode::DegenerateQuotient:
    case ErrorCode::NoisyQuotient:
    case ErrorCode::NoVectors:
    case ErrorCode::CannotCalibrate:
      return kExitAlgorithm;
    default:
      return kExitValidation;
  }
}

NoiseShape parse_shape(const std::string& name) {
  if (name == "disc") return NoiseShape::Disc;
  if (name == "box") return NoiseShape::Box;
  throw Error(ErrorCode::InvalidArgument, "unknown noise shape '" + name + "'");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

// The N = 256 demonstration vector with four spikes in a length-6 window.
Signal demo_vector() {
  ComplexVector x(256);
  x[105] = 8;
  x[107] = -3;
  x[108] = -5;
  x[110] = 2;
  return Signal(std::move(x));
}

struct GenOptions {
  std::size_t n = 256;
  std::size_t m = 6;
  std::uint64_t seed = 1;
  std::optional<double> snr;
  std::optional<double> delta;
  std::string shape = "disc";
  bool demo = false;
  std::string out_time;
  std::string out_freq;
  std::string meta;
};

int run_gen(const GenOptions& o) {
  Signal x;
  SupportDescriptor support;
  if (o.demo) {
    x = demo_vector();
    support = {105, 6};
  } else {
    std::tie(x, support) = gen_sparse_signal(o.n, o.m, o.seed);
  }
  Spectrum spectrum = fft_forward(x);
  std::string noise_note = "none";
  if (o.snr || o.delta) {
    const NoiseSpec spec = o.snr ? NoiseSpec::snr(*o.snr, derive_seed(o.seed, 1), parse_shape(o.shape))
                                 : NoiseSpec::bound(*o.delta, derive_seed(o.seed, 1), parse_shape(o.shape));
    NoisySpectrum noisy = add_noise(spectrum, spec);
    std::ostringstream note;
    note << "snr_db=" << format_double(snr_db(spectrum.values(), noisy.noise.values()))
         << " noise_inf=" << format_double17(norm_inf(noisy.noise.values()));
    noise_note = note.str();
    spectrum = std::move(noisy.noisy);
  }
  spf1::write(o.out_time, {spf1::Domain::Time, x.vector()});
  spf1::write(o.out_freq, {spf1::Domain::Frequency, spectrum.vector()});

  std::ostringstream meta;
  meta << "N=" << x.size() << "\nm=" << support.length << "\nmu=" << support.first_index
       << "\nseed=" << o.seed << "\nnoise=" << noise_note << "\n";
  write_text(o.meta.empty() ? o.out_time + ".meta" : o.meta, meta.str());
  return 0;
}

struct ReconstructOptions {
  std::string input;
  std::size_t m = 0;
  std::string algorithm = "exact";
  std::size_t max_kappa = 8;
  std::string out;
  std::string truth;
};

int run_reconstruct(const ReconstructOptions& o) {
  spf1::VectorFile in = spf1::read(o.input);
  if (in.domain != spf1::Domain::Frequency) {
    throw Error(ErrorCode::WrongDomain, o.input + " holds time-domain data, expected frequency");
  }
  const auto spectrum = std::make_shared<const Spectrum>(std::move(in.values));
  CountingSpectrumAccessor accessor(spectrum);
  const Algorithm algorithm = parse_algorithm(o.algorithm);

  NoisyConfig config;
  config.max_kappa_vectors = o.max_kappa;
  config.validate();

  const auto start = std::chrono::steady_clock::now();
  Signal result;
  SupportDescriptor support;
  bool fallback = false;
  std::string extra;
  switch (algorithm) {
    case Algorithm::Exact: {
      const auto r = reconstruct_exact(accessor, o.m);
      result = r.signal();
      support = r.support;
      fallback = r.fallback;
      extra = " nu=" + std::to_string(r.shift_nu);
      break;
    }
    case Algorithm::Noisy: {
      const auto r = reconstruct_noisy(accessor, o.m, config);
      result = r.signal();
      support = r.support;
      fallback = r.fallback;
      extra = " kappa_vectors=" + std::to_string(r.kappa_vectors_used) +
              (r.votes_stable ? "" : " votes=unstable");
      break;
    }
    case Algorithm::IfftBaseline: {
      const PlacedValues placed = full_inverse_placement(accessor, o.m, support);
      result = placed.to_signal();
      fallback = true;
      break;
    }
  }
  const auto wall_ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();

  if (!o.out.empty()) spf1::write(o.out, {spf1::Domain::Time, result.vector()});

  std::ostringstream report;
  report << "algorithm=" << to_string(algorithm) << " mode=" << (fallback ? "fallback" : "sparse")
         << " mu=" << support.first_index << " m=" << support.length
         << " samples_used=" << accessor.read_count() << " wall_ns=" << wall_ns << extra;
  if (!o.truth.empty()) {
    const spf1::VectorFile truth = spf1::read(o.truth);
    if (truth.domain != spf1::Domain::Time) {
      throw Error(ErrorCode::WrongDomain, o.truth + " holds frequency data, expected time");
    }
    report << " err=" << format_double17(error_l2_over_n(Signal(truth.values), result));
  }
  std::cout << report.str() << "\n";
  return 0;
}

std::vector<double> default_snr_list() {
  std::vector<double> out;
  for (int snr = 0; snr <= 50; snr += 5) out.push_back(snr);
  return out;
}

struct ExperimentOptions {
  std::optional<std::size_t> n;
  std::size_t m = 50;
  std::vector<std::string> snr;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string algorithm = "noisy";
  std::size_t max_kappa = 8;
  std::string shape = "disc";
  bool full = false;
  std::string out;
};

double parse_snr(const std::string& text) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, "invalid SNR value '" + text + "'");
  }
  return v;
}

int run_experiment_cmd(const ExperimentOptions& o) {
  ExperimentConfig config;
  config.n = o.n.value_or(o.full ? std::size_t{1} << 22 : std::size_t{1} << 16);
  config.m = o.m;
  config.trials = o.trials;
  config.seed = o.seed;
  config.algorithm = parse_algorithm(o.algorithm);
  config.noisy.max_kappa_vectors = o.max_kappa;
  config.noise_shape = parse_shape(o.shape);
  config.threads = threads_from_env();
  if (o.snr.empty()) {
    config.snr_list = default_snr_list();
  } else {
    for (const auto& s : o.snr) config.snr_list.push_back(parse_snr(s));
  }
  write_text(o.out, experiment_csv(run_experiment(config)));
  return 0;
}

struct BenchOptions {
  std::vector<std::size_t> n{std::size_t{1} << 22};
  std::vector<std::size_t> m{50};
  std::size_t trials = 5;
  std::uint64_t seed = 1;
  std::string out;
};

int run_bench_cmd(const BenchOptions& o) {
  write_text(o.out, bench_csv(run_bench(o.n, o.m, o.trials, o.seed)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse inverse FFT for vectors with short cyclic support"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a random small-support vector and its spectrum");
  gen_cmd->add_option("--n", gen.n, "Vector length (power of two)");
  gen_cmd->add_option("--m", gen.m, "Support length");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  auto* snr_opt = gen_cmd->add_option("--snr", gen.snr, "Add spectral noise at this SNR in dB");
  gen_cmd->add_option("--delta", gen.delta, "Add spectral noise bounded by delta")->excludes(snr_opt);
  gen_cmd->add_option("--noise-shape", gen.shape, "disc or box")->check(CLI::IsMember({"disc", "box"}));
  gen_cmd->add_flag("--demo", gen.demo, "Use the fixed N=256 four-spike demonstration vector");
  gen_cmd->add_option("--out-time", gen.out_time, "Time-domain output (SPF1)")->required();
  gen_cmd->add_option("--out-freq", gen.out_freq, "Frequency-domain output (SPF1)")->required();
  gen_cmd->add_option("--meta", gen.meta, "Sidecar text file (default: <out-time>.meta)");

  ReconstructOptions rec;
  auto* rec_cmd = app.add_subcommand("reconstruct", "Recover a vector from a frequency-domain file");
  rec_cmd->add_option("--input", rec.input, "Frequency-domain SPF1 file")->required();
  rec_cmd->add_option("--m", rec.m, "Support length bound")->required();
  rec_cmd->add_option("--algorithm", rec.algorithm, "exact, noisy or ifft-baseline")
      ->check(CLI::IsMember({"exact", "noisy", "ifft-baseline"}));
  rec_cmd->add_option("--max-kappa", rec.max_kappa, "Vector budget for the noisy support vote");
  rec_cmd->add_option("--out", rec.out, "Time-domain output (SPF1)");
  rec_cmd->add_option("--truth", rec.truth, "Ground-truth time-domain file for error reporting");

  ExperimentOptions exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Monte-Carlo recovery statistics as CSV");
  exp_cmd->add_option("--n", exp.n, "Vector length (default 2^16, 2^22 with --full)");
  exp_cmd->add_option("--m", exp.m, "Support length");
  exp_cmd->add_option("--snr", exp.snr, "SNR values in dB (comma separated, 'inf' = noiseless)")
      ->delimiter(',');
  exp_cmd->add_option("--trials", exp.trials, "Trials per SNR");
  exp_cmd->add_option("--seed", exp.seed, "Base seed");
  exp_cmd->add_option("--algorithm", exp.algorithm, "exact, noisy or ifft-baseline")
      ->check(CLI::IsMember({"exact", "noisy", "ifft-baseline"}));
  exp_cmd->add_option("--max-kappa", exp.max_kappa, "Vector budget for the noisy support vote");
  exp_cmd->add_option("--noise-shape", exp.shape, "disc or box")->check(CLI::IsMember({"disc", "box"}));
  exp_cmd->add_flag("--full", exp.full, "Use N = 2^22");
  exp_cmd->add_option("--out", exp.out, "CSV output path (default stdout)");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Wall-time of sparse vs full inverse FFT as CSV");
  bench_cmd->add_option("--n", bench.n, "Lengths (comma separated)")->delimiter(',');
  bench_cmd->add_option("--m", bench.m, "Support lengths (comma separated)")->delimiter(',');
  bench_cmd->add_option("--trials", bench.trials, "Repetitions per configuration");
  bench_cmd->add_option("--seed", bench.seed, "Base seed");
  bench_cmd->add_option("--out", bench.out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*rec_cmd) return run_reconstruct(rec);
    if (*exp_cmd) return run_experiment_cmd(exp);
    if (*bench_cmd) return run_bench_cmd(bench);
  } catch (const Error& e) {
    std::cerr << "spfft: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "spfft: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitValidation;
}
