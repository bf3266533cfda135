#include "nsbandit/rng.hpp"

namespace nsb {

namespace {
__extension__ typedef unsigned __int128 u128;
}  // namespace

std::uint64_t RngStream::below(std::uint64_t n) noexcept {
  if (n <= 1) {
    return 0;
  }
  u128 m = static_cast<u128>((*this)()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<u128>((*this)()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace nsb
