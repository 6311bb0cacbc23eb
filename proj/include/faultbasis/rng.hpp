#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace faultbasis {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Deterministic stream derivation: the same (base, salt) always yields the
/// same child seed, on every platform. Used to give each problem and each
/// restart its own independent stream.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) noexcept {
  return mix64(mix64(base + 0x9e3779b97f4a7c15ULL) ^
               mix64(salt + 0xd1b54a32d192ed03ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::string_view salt) noexcept {
  return derive_seed(base, fnv1a64(salt));
}

/// splitmix64 generator. Chosen over std:: engines because its whole output
/// sequence, including bounded draws and shuffles below, is pinned by this
/// header rather than by the standard library implementation.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Unbiased draw from [0, bound). bound must be >= 1.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// True with probability num/den.
  bool next_bernoulli(std::uint64_t num, std::uint64_t den) noexcept {
    return next_below(den) < num;
  }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) noexcept {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[next_below(i)]);
    }
  }

private:
  std::uint64_t state_;
};

}  // namespace faultbasis
