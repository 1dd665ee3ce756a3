#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace hrc {

/// Source of deterministic random words. Every random quantity in the
/// library is drawn from an explicitly passed stream; there is no global
/// generator. Implementations must be reproducible across platforms for a
/// fixed seed or key.
class RandomStream {
public:
  virtual ~RandomStream() = default;
  virtual std::uint64_t next_u64() = 0;
  virtual std::uint32_t next_u32() = 0;
};

/// SplitMix64 finalizer; also used as the mixing hash for derived seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Counter-based generator: output i is mix64(seed + (i+1)*gamma), so the
/// stream is a pure function of (seed, counter).
class SplitMix64 final : public RandomStream {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() override {
    return mix64(state_ += 0x9e3779b97f4a7c15ull);
  }

  std::uint32_t next_u32() override {
    return static_cast<std::uint32_t>(next_u64() >> 32);
  }

private:
  std::uint64_t state_;
};

/// Derives a per-trial seed from a base seed and grid/trial coordinates.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b, std::uint64_t c) {
  constexpr std::uint64_t gamma = 0x9e3779b97f4a7c15ull;
  std::uint64_t h = mix64(base ^ (a + gamma));
  h = mix64(h ^ (b + gamma));
  h = mix64(h ^ (c + gamma));
  return h;
}

/// Uniform double in [0,1) from the top 53 bits of one 64-bit draw.
inline double uniform_double(RandomStream& rng) {
  return static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53;
}

/// Unbiased integer in [0, bound) by rejection sampling on 32-bit draws.
inline std::uint32_t uniform_below(RandomStream& rng, std::uint32_t bound) {
  const std::uint32_t limit =
      bound == 0 ? 0 : static_cast<std::uint32_t>((0x100000000ull / bound) * bound);
  for (;;) {
    const std::uint32_t v = rng.next_u32();
    if (v < limit) return v % bound;
  }
}

/// Standard normal samples via the Box-Muller transform. Draws uniform
/// pairs from the underlying stream and hands out both halves in order.
class GaussianStream {
public:
  explicit GaussianStream(RandomStream& rng) : rng_(rng) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform_double(rng_);
    while (u1 == 0.0) u1 = uniform_double(rng_);
    const double u2 = uniform_double(rng_);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

private:
  RandomStream& rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace hrc
