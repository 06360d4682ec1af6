#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace satbench {

// SplitMix64 step. Used for seeding and for deriving substream seeds.
inline constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Folds a sequence of stream tags (size, instance index, probe index, run
// index, ...) into a master seed. Every random stream in the toolkit is
// derived this way, so results are independent of scheduling and worker
// count.
inline constexpr std::uint64_t derive_seed(std::uint64_t master,
                                           std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = master;
  (void)splitmix64(s);
  for (std::uint64_t tag : path) {
    s ^= tag + 0x9e3779b97f4a7c15ull;
    (void)splitmix64(s);
  }
  return s;
}

// xoshiro256++ (Blackman & Vigna, public domain), seeded through SplitMix64.
// Chosen over std::mt19937_64 because the bounded and floating draws below
// are fully pinned down here, making run records bit-reproducible across
// platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, bound). Multiply-shift; the O(bound/2^64) bias is far
  // below anything observable at these sample sizes.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  std::uint32_t next_index(std::uint32_t bound) {
    return static_cast<std::uint32_t>(next_below(bound));
  }

  // Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bool() { return (next_u64() >> 63) != 0; }

private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace satbench
