#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace nsb {

/// SplitMix64 finalizer. Bijective 64-bit mixing function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stable hash of an ordered list of 64-bit words. Used to derive stream ids
/// (e.g. from agent index and run index); the value is fixed across builds.
constexpr std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (std::uint64_t w : words) {
    h = mix64(h ^ mix64(w + 0x9e3779b97f4a7c15ULL));
  }
  return h;
}

/**
 * Counter-based deterministic generator.
 *
 * Output i (i = 0, 1, ...) is mix64(key + (i + 1) * 0x9e3779b97f4a7c15), where
 * key = hash_words({seed, stream_id}). This is SplitMix64 with a per-stream
 * starting point, so a stream can be re-created at any position and identical
 * (seed, stream_id) pairs produce identical sequences on every platform.
 *
 * Satisfies std::uniform_random_bit_generator.
 */
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_id_(stream_id), key_(hash_words({seed, stream_id})) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
  }

  /// Uniform real in [0, 1) with 53 bits of resolution.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). Exact (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t n) noexcept;

  /// True with probability p (p clamped to [0, 1]).
  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Derived stream: same seed, stream id hashed with `salt`.
  RngStream split(std::uint64_t salt) const noexcept {
    return RngStream(seed_, hash_words({stream_id_, salt}));
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  /// Number of 64-bit words drawn so far.
  std::uint64_t position() const noexcept { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

inline RngStream make_rng(std::uint64_t seed, std::uint64_t stream_id) noexcept {
  return RngStream(seed, stream_id);
}

}  // namespace nsb
