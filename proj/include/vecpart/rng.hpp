#pragma once

#include <cstdint>
#include <string_view>

// Seeded randomness for the whole toolkit. Everything here is integer
// arithmetic on fixed-width types, so a given seed produces the same stream
// on every platform and compiler. Never use std:: distributions for anything
// that must be reproducible: their output is implementation-defined.

namespace vecpart {

namespace detail {

// splitmix64 finalizer (public-domain constants, Steele et al.).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace detail

// Sequential splitmix64 stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return detail::mix64(state_ += detail::kGolden); }

  // Uniform in [0, 1), 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, bound), bound > 0. Multiply-high mapping; the residual
  // bias of ~bound/2^64 is irrelevant at the bounds used here.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

// The i-th value of the splitmix64 stream seeded with `seed`, computed
// without materializing the stream. Lets generators draw per-item values in
// any iteration order (or in parallel) with identical results.
inline std::uint64_t hash_at(std::uint64_t seed, std::uint64_t index) {
  return detail::mix64(seed + (index + 1) * detail::kGolden);
}

// Stable sub-seed for a named pipeline component. All CLI commands fan a
// single --seed out through this, so stages rerun in isolation reproduce the
// composed run.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view component) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : component) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return detail::mix64((root ^ h) + detail::kGolden);
}

}  // namespace vecpart
