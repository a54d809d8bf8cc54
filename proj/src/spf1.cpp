#include "spfft/spf1.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace spfft::spf1 {
namespace {

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t offset, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= std::uint64_t{in[offset + i]} << (8 * i);
  return v;
}

[[noreturn]] void format_error(std::size_t offset, const std::string& what) {
  throw Error(ErrorCode::Format, "SPF1 offset " + std::to_string(offset) + ": " + what);
}

}  // namespace

const char* to_string(Domain domain) {
  return domain == Domain::Time ? "time" : "frequency";
}

std::vector<std::uint8_t> encode(const VectorFile& file) {
  log2_length(file.values.size());
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + 16 * file.values.size());
  for (char c : {'S', 'P', 'F', '1'}) out.push_back(static_cast<std::uint8_t>(c));
  put_le(out, kVersion, 2);
  put_le(out, static_cast<std::uint8_t>(file.domain), 1);
  put_le(out, 0, 1);
  put_le(out, file.values.size(), 8);
  for (const auto& v : file.values) {
    put_le(out, std::bit_cast<std::uint64_t>(v.real()), 8);
    put_le(out, std::bit_cast<std::uint64_t>(v.imag()), 8);
  }
  return out;
}

VectorFile decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) format_error(bytes.size(), "truncated header");
  if (std::memcmp(bytes.data(), "SPF1", 4) != 0) format_error(0, "bad magic");
  if (get_le(bytes, 4, 2) != kVersion) format_error(4, "unsupported version");
  const auto domain = get_le(bytes, 6, 1);
  if (domain > 1) format_error(6, "unknown domain flag " + std::to_string(domain));
  if (get_le(bytes, 7, 1) != 0) format_error(7, "reserved byte must be zero");
  const std::uint64_t n = get_le(bytes, 8, 8);
  if (!is_power_of_two(n) || std::countr_zero(n) > kMaxLog2Length) {
    format_error(8, "length " + std::to_string(n) + " is not a supported power of two");
  }
  if (bytes.size() != kHeaderSize + 16 * n) {
    format_error(std::min<std::size_t>(bytes.size(), kHeaderSize + 16 * n),
                 "payload holds " + std::to_string(bytes.size() - kHeaderSize) +
                     " bytes, expected " + std::to_string(16 * n));
  }
  VectorFile file;
  file.domain = static_cast<Domain>(domain);
  file.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t at = kHeaderSize + 16 * k;
    file.values[k] = {std::bit_cast<double>(get_le(bytes, at, 8)),
                      std::bit_cast<double>(get_le(bytes, at + 8, 8))};
  }
  return file;
}

void write(const std::filesystem::path& path, const VectorFile& file) {
  const auto bytes = encode(file);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

VectorFile read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace spfft::spf1
