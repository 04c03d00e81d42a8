#include "dgansim/rng.hpp"

#include <cmath>
#include <numbers>

namespace dgansim {

std::uint64_t derive_stream(std::uint64_t parent_key, std::string_view label,
                            std::uint64_t salt) {
  // FNV-1a over the label, then two finalizer rounds folding in parent and salt.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return mix64(mix64(parent_key ^ h) + salt);
}

double RngStream::next_gaussian() {
  const std::uint64_t w1 = next_u64();
  const std::uint64_t w2 = next_u64();
  // u1 in (0, 1] so the log is always finite.
  const double u1 = (static_cast<double>(w1 >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(w2 >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace dgansim
