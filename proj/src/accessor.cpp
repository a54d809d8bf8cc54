#include "spfft/accessor.hpp"

#include <string>

namespace spfft {

CountingSpectrumAccessor::CountingSpectrumAccessor(std::shared_ptr<const Spectrum> spectrum)
    : spectrum_(std::move(spectrum)) {
  if (!spectrum_) throw Error(ErrorCode::InvalidArgument, "null spectrum");
}

CountingSpectrumAccessor::CountingSpectrumAccessor(Spectrum spectrum)
    : spectrum_(std::make_shared<const Spectrum>(std::move(spectrum))) {}

Complex CountingSpectrumAccessor::read(std::size_t index) {
  if (index >= spectrum_->size()) {
    throw Error(ErrorCode::OutOfRange, "spectrum index " + std::to_string(index) +
                                           " >= " + std::to_string(spectrum_->size()));
  }
  if (!all_read_) accessed_.insert(index);
  return (*spectrum_)[index];
}

const Spectrum& CountingSpectrumAccessor::read_all() {
  all_read_ = true;
  accessed_.clear();
  return *spectrum_;
}

std::size_t CountingSpectrumAccessor::read_count() const noexcept {
  return all_read_ ? spectrum_->size() : accessed_.size();
}

bool CountingSpectrumAccessor::was_read(std::size_t index) const {
  return all_read_ ? index < spectrum_->size() : accessed_.contains(index);
}

}  // namespace spfft
