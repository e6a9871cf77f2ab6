#pragma once

#include <cstdint>
#include <random>

namespace netdim {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seedable, splittable random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Bounded integers and unit doubles are derived here rather than
/// through <random> distributions, whose algorithms are implementation-defined,
/// so every build replays the same draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  /// Stream for sub-task `index` (e.g. trial t of a sweep). Independent of
  /// how many draws the parent has consumed.
  [[nodiscard]] Rng split(std::uint64_t index) const {
    return Rng(splitmix64(seed_ ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
  }

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    // Lemire's nearly-divisionless rejection method.
    unsigned __int128 product = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace netdim
