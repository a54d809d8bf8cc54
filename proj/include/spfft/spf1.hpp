#pragma once

// SPF1 vector file, all fields little-endian:
//   offset 0  magic "SPF1"
//   offset 4  u16 version = 1
//   offset 6  u8  domain (0 = time, 1 = frequency)
//   offset 7  u8  reserved = 0
//   offset 8  u64 length N (power of two)
//   offset 16 N records of (re f64, im f64)

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "spfft/types.hpp"

namespace spfft::spf1 {

enum class Domain : std::uint8_t { Time = 0, Frequency = 1 };

inline constexpr std::size_t kHeaderSize = 16;
inline constexpr std::uint16_t kVersion = 1;

struct VectorFile {
  Domain domain = Domain::Time;
  ComplexVector values;
};

std::vector<std::uint8_t> encode(const VectorFile& file);
/// Throws Error(Format) naming the byte offset of the first bad field.
VectorFile decode(std::span<const std::uint8_t> bytes);

void write(const std::filesystem::path& path, const VectorFile& file);
VectorFile read(const std::filesystem::path& path);

const char* to_string(Domain domain);

}  // namespace spfft::spf1
