#pragma once

// Counter-based random numbers (Philox4x32-10, Salmon et al. 2011).
//
// Every random decision in the simulator is a pure function of
// (key, counter), so parallel kernels reproduce the serial draw order
// bit-for-bit and snapshots only need to remember the key and the day.

#include <array>
#include <cstdint>

namespace seirah {

using Seed = std::uint64_t;

struct PhiloxCounter {
  std::array<std::uint32_t, 4> words{};
};

std::array<std::uint32_t, 4> philox4x32(const PhiloxCounter& counter, Seed key) noexcept;

/// Maps the top 53 bits of a 64-bit word to [0, 1).
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Purposes partition the counter space so unrelated draws never collide.
enum class Purpose : std::uint32_t {
  kContagion = 1,
  kProgression = 2,
  kWorkNetwork = 3,
  kCommuterPool = 4,
  kSeeding = 5,
  kGraph = 6,
  kSubSeed = 7,
};

/// One uniform in [0,1) addressed by (key, purpose, lane, day, index).
/// `lane` carries small identifiers such as zone and graph id.
inline double uniform_at(Seed key, Purpose purpose, std::uint32_t lane, std::uint32_t day,
                         std::uint32_t index) noexcept {
  PhiloxCounter c{{index, lane, day, static_cast<std::uint32_t>(purpose)}};
  auto out = philox4x32(c, key);
  return to_unit((static_cast<std::uint64_t>(out[0]) << 32) | out[1]);
}

/// Derives an independent 64-bit seed from a parent seed and two tags.
Seed derive_seed(Seed parent, std::uint32_t tag_a, std::uint32_t tag_b = 0) noexcept;

/// Sequential stream on top of Philox. Used where draws are inherently
/// ordered (graph generation, sampling without replacement). The sequence is
/// fully determined by (key, stream) and identical on every platform.
class CounterRng {
 public:
  CounterRng(Seed key, std::uint64_t stream) noexcept : key_(key), stream_(stream) {}

  std::uint64_t next_u64() noexcept;

  double uniform() noexcept { return to_unit(next_u64()); }

  /// Unbiased integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  bool bernoulli(double p) noexcept { return uniform() < p; }

 private:
  Seed key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

}  // namespace seirah
