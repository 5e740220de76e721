#pragma once

#include <cstdint>

namespace becdimer {

/// SplitMix64 finaliser.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Counter-based stream: the k-th draw of stream `index` under `seed` is a
/// pure function of (seed, index, k), so results do not depend on how
/// indices are distributed over threads.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t index) noexcept
      : key_(splitmix64(seed ^ splitmix64(index + 0x632BE59BD9B4E019ULL))) {}

  constexpr std::uint64_t next_u64() noexcept { return splitmix64(key_ + 0xD1B54A32D192ED03ULL * ++counter_); }

  /// Uniform on (0, 1].
  constexpr double next_open_closed() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform on [0, 1).
  constexpr double next_unit() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace becdimer
