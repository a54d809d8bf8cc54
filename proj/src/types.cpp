#include "spfft/types.hpp"

namespace spfft {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidLength: return "InvalidLength";
    case ErrorCode::InvalidLevel: return "InvalidLevel";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidOffset: return "InvalidOffset";
    case ErrorCode::InvalidSupportLength: return "InvalidSupportLength";
    case ErrorCode::AmbiguousSupport: return "AmbiguousSupport";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ZeroSignal: return "ZeroSignal";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::DegenerateQuotient: return "DegenerateQuotient";
    case ErrorCode::NoisyQuotient: return "NoisyQuotient";
    case ErrorCode::NoVectors: return "NoVectors";
    case ErrorCode::CannotCalibrate: return "CannotCalibrate";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::WrongDomain: return "WrongDomain";
    case ErrorCode::Format: return "Format";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

int log2_length(std::size_t n) {
  if (!is_power_of_two(n) || std::countr_zero(n) > kMaxLog2Length) {
    throw Error(ErrorCode::InvalidLength,
                "length " + std::to_string(n) + " is not a power of two in [1, 2^30]");
  }
  return std::countr_zero(n);
}

int ceil_log2(std::size_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "ceil_log2 of zero");
  return m == 1 ? 0 : std::bit_width(m - 1);
}

}  // namespace spfft
