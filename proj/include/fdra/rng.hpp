#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fdra {

// Seeding scheme "fdra-rng-v1".
//
// All randomness in the library flows from a single 64-bit root seed.
// Substreams are derived by hashing (seed, tag words) through splitmix64,
// so e.g. the fading draws of link (m,n) do not move when M or N changes.
// Draw functions map raw mt19937_64 output to doubles directly instead of
// going through std:: distributions, whose output is implementation-defined.

inline constexpr std::uint64_t kRngSchemeVersion = 1;

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t s1,
                                 std::uint64_t s2 = 0, std::uint64_t s3 = 0) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ mix64(s1));
  h = mix64(h ^ mix64(s2));
  h = mix64(h ^ mix64(s3));
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in (0, 1]; safe as a log argument.
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Exponential with unit mean (|h|^2 of a unit-power Rayleigh coefficient).
  double exponential() { return -std::log(uniform_pos()); }

  /// Uniform integer in [0, n), n >= 1.
  std::uint64_t bounded(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace fdra
