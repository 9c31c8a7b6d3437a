#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace rancova {

// SplitMix64 finalizer. Used to derive statistically independent child seeds
// from a master seed, so work partitioned across threads stays reproducible.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Named substreams keep independently seeded parts of the pipeline from
// colliding even when they share a master seed and an index range.
enum class rng_stream : std::uint64_t {
  bootstrap = 1,
  calibration = 2,
  calibration_test = 3,
  simulation = 4,
  simulation_test = 5,
  simulation_calibration = 6,
  pointwise = 7,
  scenario = 8,
};

// Counter-based derivation: the child seed is a pure function of
// (master, stream, index), independent of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t master, rng_stream stream,
                                 std::uint64_t index) noexcept {
  std::uint64_t z = mix64(master ^ (0xD1B54A32D192ED03ULL * static_cast<std::uint64_t>(stream)));
  return mix64(z ^ (0x8CB92BA72F3D8DD7ULL * (index + 1)));
}

// xoshiro256++ (Blackman/Vigna), seeded through SplitMix64. Self-contained so
// streams are identical across platforms and standard library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept {
    std::uint64_t s = seed;
    for (auto& word : state_) {
      s += 0x9E3779B97F4A7C15ULL;
      std::uint64_t z = s;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      word = z ^ (z >> 31);
    }
  }

  std::uint64_t next_u64() noexcept {
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

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Unbiased integer in [0, n) via Lemire's multiply-shift rejection.
  std::size_t next_index(std::size_t n) noexcept {
    std::uint64_t x = next_u64();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0ULL - n) % n;
      while (low < threshold) {
        x = next_u64();
        m = static_cast<unsigned __int128>(x) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::size_t>(m >> 64);
  }

  // Standard normal via the polar method; the spare deviate is cached.
  double next_normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_unit() - 1.0;
      v = 2.0 * next_unit() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rancova
