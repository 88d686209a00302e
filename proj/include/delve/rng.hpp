#pragma once
// Counter-based random streams (Philox4x32-10).
//
// A stream is a value: drawing returns the value together with the advanced
// stream, and splitting derives a child from (key, stream id) alone. Episodes
// are therefore a pure function of their seed material and the action list.

#include <array>
#include <cstdint>
#include <utility>

namespace delve {

using PhiloxBlock = std::array<std::uint32_t, 4>;

/// Philox4x32 with 10 rounds. Exposed for known-answer tests.
PhiloxBlock philox4x32_10(PhiloxBlock counter, std::array<std::uint32_t, 2> key) noexcept;

class RngStream {
public:
  constexpr RngStream() = default;
  constexpr RngStream(std::array<std::uint32_t, 2> key, std::uint64_t base, std::uint64_t position = 0)
      : key_(key), base_(base), position_(position) {}

  static RngStream from_seed(std::uint64_t seed) noexcept;

  /// Child stream; depends only on this stream's key material and `stream_id`,
  /// never on how many values have been drawn.
  [[nodiscard]] RngStream split(std::uint64_t stream_id) const noexcept;

  [[nodiscard]] std::pair<std::uint32_t, RngStream> next_u32() const noexcept;
  [[nodiscard]] std::pair<std::uint64_t, RngStream> next_u64() const noexcept;
  /// Uniform double in [0, 1) with 53 random bits.
  [[nodiscard]] std::pair<double, RngStream> next_unit() const noexcept;

  [[nodiscard]] const std::array<std::uint32_t, 2>& key() const noexcept { return key_; }
  [[nodiscard]] std::uint64_t base() const noexcept { return base_; }
  [[nodiscard]] std::uint64_t position() const noexcept { return position_; }

  friend bool operator==(const RngStream&, const RngStream&) = default;

private:
  [[nodiscard]] PhiloxBlock block() const noexcept;

  std::array<std::uint32_t, 2> key_{0, 0};
  std::uint64_t base_ = 0;
  std::uint64_t position_ = 0;
};

[[nodiscard]] inline RngStream split(const RngStream& parent, std::uint64_t stream_id) noexcept {
  return parent.split(stream_id);
}

/// Uniform draw in [lo, hi). Throws std::invalid_argument when lo > hi.
[[nodiscard]] std::pair<double, RngStream> uniform(const RngStream& s, double lo, double hi);

/// Mutable cursor over a stream for code that draws many values in sequence.
/// It owns a copy; the caller writes `stream()` back when done.
class Sampler {
public:
  explicit Sampler(RngStream s) noexcept : s_(s) {}

  std::uint32_t u32() noexcept {
    auto [v, next] = s_.next_u32();
    s_ = next;
    return v;
  }
  std::uint64_t u64() noexcept {
    auto [v, next] = s_.next_u64();
    s_ = next;
    return v;
  }
  double unit() noexcept {
    auto [v, next] = s_.next_unit();
    s_ = next;
    return v;
  }
  double uniform(double lo, double hi);
  /// Integer in [0, n); n must be positive.
  std::uint32_t below(std::uint32_t n) noexcept;
  bool chance(double p) noexcept { return unit() < p; }

  [[nodiscard]] const RngStream& stream() const noexcept { return s_; }

private:
  RngStream s_;
};

/// Fixed stream ids. New subsystems take new ids; existing ids never change.
namespace streams {
inline constexpr std::uint64_t kLevelParams = 0x10;
inline constexpr std::uint64_t kWorldShared = 0x11;  // potions, chest loot
inline constexpr std::uint64_t kFloorBase = 0x100;   // + floor index
inline constexpr std::uint64_t kRetryBase = 0x200;   // + attempt index
inline constexpr std::uint64_t kEpisode = 0x20;      // per-episode dynamics
inline constexpr std::uint64_t kBatchEnvBase = 0;    // env i uses id i
inline constexpr std::uint64_t kBatchPool = 0xB00000000ULL;
inline constexpr std::uint64_t kBatchPolicy = 0xB10000000ULL;
inline constexpr std::uint64_t kMutation = 0x30;
}  // namespace streams

}  // namespace delve
