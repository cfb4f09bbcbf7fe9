#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace dynemb {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// Stable hash of (master seed, parts...). Used to give every independent
// random stream (per node/walk, per time point, per stage) its own seed.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> parts);

inline Rng make_rng(std::uint64_t master, std::initializer_list<std::uint64_t> parts) {
  return Rng(derive_seed(master, parts));
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Uniform in [0, n). n must be positive.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  auto i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
  return i < n ? i : n - 1;
}

template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = uniform_index(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  shuffle(std::span<T>(items), rng);
}

// Stream tags for derive_seed so that stages never share randomness.
enum class Stream : std::uint64_t {
  TemporalWalks = 0x7701,
  LstmInit = 0x7702,
  LstmTrain = 0x7703,
  SkipgramInit = 0x7704,
  SkipgramTrain = 0x7705,
  StaticWalks = 0x7706,
  Injection = 0x7707,
  Negatives = 0x7708,
  Shuffle = 0x7709,
};

inline std::uint64_t tag(Stream s) { return static_cast<std::uint64_t>(s); }

}  // namespace dynemb
