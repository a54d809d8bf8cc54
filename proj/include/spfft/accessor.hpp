#pragma once

#include <cstddef>
#include <memory>
#include <unordered_set>

#include "spfft/types.hpp"

namespace spfft {

/// Read-only view of a spectrum that records which entries were touched.
/// read_count() is the number of distinct indices read so far, the measure
/// of how many Fourier samples a reconstruction consumed.
///
/// Not thread-safe; one accessor belongs to one reconstruction.
class CountingSpectrumAccessor {
 public:
  explicit CountingSpectrumAccessor(std::shared_ptr<const Spectrum> spectrum);
  explicit CountingSpectrumAccessor(Spectrum spectrum);

  std::size_t size() const noexcept { return spectrum_->size(); }
  int log2_size() const { return spectrum_->log2_size(); }

  /// Returns x̂_index (bit-identical to the backing entry). Throws OutOfRange.
  Complex read(std::size_t index);

  /// Marks every entry as read and returns the whole spectrum.
  const Spectrum& read_all();

  std::size_t read_count() const noexcept;
  bool was_read(std::size_t index) const;

 private:
  std::shared_ptr<const Spectrum> spectrum_;
  std::unordered_set<std::size_t> accessed_;
  bool all_read_ = false;
};

}  // namespace spfft
