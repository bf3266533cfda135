#pragma once

#include <span>
#include <utility>
#include <vector>

#include "nsbandit/rng.hpp"

namespace nsb {

/// Fisher-Yates over `rng`; every permutation is equally likely.
template <class T>
void shuffle_in_place(std::span<T> items, RngStream& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

template <class T>
std::vector<T> shuffle(std::vector<T> items, RngStream& rng) {
  shuffle_in_place(std::span<T>(items), rng);
  return items;
}

}  // namespace nsb
