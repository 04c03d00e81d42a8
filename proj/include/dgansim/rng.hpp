#pragma once

#include <cstdint>
#include <string_view>

namespace dgansim {

// SplitMix64 finalizer. Bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based random word: the i-th word of the stream identified by `key`.
// Regenerating any window of a stream from (key, index) is exact, which is
// what makes seed announcements and replay checks bitwise reproducible.
inline std::uint64_t rng_word(std::uint64_t key, std::uint64_t index) {
  return mix64(key + index * 0x9e3779b97f4a7c15ull);
}

// Derive an independent child stream key from a parent key, a label, and an
// optional per-entity salt (e.g. a device id). This is the split function of
// the seed hierarchy: master seed -> named streams -> per-entity streams.
std::uint64_t derive_stream(std::uint64_t parent_key, std::string_view label,
                            std::uint64_t salt = 0);

// Incremental view over a keyed counter stream. Copying is cheap; restarting
// from the same (key, offset) reproduces the sequence bitwise.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key, std::uint64_t offset = 0)
      : key_(key), offset_(offset) {}

  std::uint64_t key() const { return key_; }
  std::uint64_t offset() const { return offset_; }

  std::uint64_t next_u64() { return rng_word(key_, offset_++); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }

  // Standard normal via Box-Muller (cosine branch). Consumes exactly two
  // stream words per call; offsets advance by 2, never by a data-dependent
  // amount, so noise batches can be regenerated from (key, offset, count).
  double next_gaussian();

  // Uniform index in [0, n). n must be positive.
  std::uint64_t next_index(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t key_;
  std::uint64_t offset_;
};

}  // namespace dgansim
