#pragma once

#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spfft {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Largest supported exponent J for lengths N = 2^J.
inline constexpr int kMaxLog2Length = 30;

enum class ErrorCode {
  InvalidLength,
  InvalidLevel,
  InvalidArgument,
  InvalidOffset,
  InvalidSupportLength,
  AmbiguousSupport,
  OutOfRange,
  ZeroSignal,
  NotInvertible,
  DegenerateQuotient,
  NoisyQuotient,
  NoVectors,
  CannotCalibrate,
  LengthMismatch,
  WrongDomain,
  Format,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline bool is_power_of_two(std::size_t n) { return std::has_single_bit(n); }

/// Exponent of a power-of-two length; throws InvalidLength otherwise.
int log2_length(std::size_t n);

/// ceil(log2(m)) for m >= 1.
int ceil_log2(std::size_t m);

/// Dense complex vector whose length is a power of two (2^0 .. 2^30).
/// The tag keeps time-domain and frequency-domain data apart.
template <class Tag>
class PowerOfTwoVector {
 public:
  PowerOfTwoVector() : values_(1) {}

  explicit PowerOfTwoVector(ComplexVector values) : values_(std::move(values)) {
    log2_length(values_.size());
  }

  static PowerOfTwoVector zeros(std::size_t n) {
    return PowerOfTwoVector(ComplexVector(n));
  }

  std::size_t size() const noexcept { return values_.size(); }
  int log2_size() const { return std::countr_zero(values_.size()); }

  const Complex& operator[](std::size_t k) const { return values_[k]; }
  Complex& operator[](std::size_t k) { return values_[k]; }

  std::span<const Complex> values() const noexcept { return values_; }
  std::span<Complex> values() noexcept { return values_; }

  const ComplexVector& vector() const& noexcept { return values_; }
  ComplexVector release() && noexcept { return std::move(values_); }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const PowerOfTwoVector&, const PowerOfTwoVector&) = default;

 private:
  ComplexVector values_;
};

struct TimeDomainTag {};
struct FrequencyDomainTag {};

using Signal = PowerOfTwoVector<TimeDomainTag>;
using Spectrum = PowerOfTwoVector<FrequencyDomainTag>;

/// Cyclic support interval {(first_index + r) mod N : r = 0..length-1}.
struct SupportDescriptor {
  std::size_t first_index = 0;
  std::size_t length = 1;

  friend bool operator==(const SupportDescriptor&, const SupportDescriptor&) = default;
};

/// True iff index lies in the cyclic window [first, first + length) mod n.
inline bool in_cyclic_window(std::size_t index, std::size_t first, std::size_t length,
                             std::size_t n) {
  return ((index + n - first) & (n - 1)) < length;
}

}  // namespace spfft
