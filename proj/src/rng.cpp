#include "pfd/rng.hpp"

namespace pfd::rng {

PhiloxEngine::result_type PhiloxEngine::operator()() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const auto block = philox4x32_10(
      {static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32), stream_, kStreamTag}, key_);
  ++block_;
  spare_ = word_b(block);
  has_spare_ = true;
  return word_a(block);
}

std::uint64_t PhiloxEngine::below(std::uint64_t bound) noexcept {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>((*this)()) * bound) >> 64);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k) noexcept {
  // Distinct tag from PhiloxEngine blocks so derived seeds never alias a stream.
  return word_a(philox4x32_10(
      {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32), 0, 0x53454544}, key_from_seed(base)));
}

}  // namespace pfd::rng
