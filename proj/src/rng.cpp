#include "delve/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace delve {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

// Splits use a tweaked key so child material never coincides with a draw.
constexpr std::uint32_t kSplitTweak0 = 0xA5A5A5A5u;
constexpr std::uint32_t kSplitTweak1 = 0x3C6EF372u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

PhiloxBlock philox4x32_10(PhiloxBlock c, std::array<std::uint32_t, 2> k) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

RngStream RngStream::from_seed(std::uint64_t seed) noexcept {
  return RngStream({static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, 0x6A09E667F3BCC908ULL);
}

PhiloxBlock RngStream::block() const noexcept {
  return philox4x32_10({static_cast<std::uint32_t>(position_), static_cast<std::uint32_t>(position_ >> 32),
                        static_cast<std::uint32_t>(base_), static_cast<std::uint32_t>(base_ >> 32)},
                       key_);
}

RngStream RngStream::split(std::uint64_t stream_id) const noexcept {
  const PhiloxBlock out = philox4x32_10(
      {static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
       static_cast<std::uint32_t>(base_), static_cast<std::uint32_t>(base_ >> 32)},
      {key_[0] ^ kSplitTweak0, key_[1] ^ kSplitTweak1});
  return RngStream({out[0], out[1]}, (static_cast<std::uint64_t>(out[3]) << 32) | out[2], 0);
}

std::pair<std::uint32_t, RngStream> RngStream::next_u32() const noexcept {
  const PhiloxBlock b = block();
  return {b[0], RngStream(key_, base_, position_ + 1)};
}

std::pair<std::uint64_t, RngStream> RngStream::next_u64() const noexcept {
  const PhiloxBlock b = block();
  return {(static_cast<std::uint64_t>(b[0]) << 32) | b[1], RngStream(key_, base_, position_ + 1)};
}

std::pair<double, RngStream> RngStream::next_unit() const noexcept {
  auto [bits, next] = next_u64();
  return {static_cast<double>(bits >> 11) * 0x1.0p-53, next};
}

std::pair<double, RngStream> uniform(const RngStream& s, double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("uniform: lo must not exceed hi");
  auto [u, next] = s.next_unit();
  if (lo == hi) return {lo, next};
  double v = lo + (hi - lo) * u;
  if (v >= hi) v = std::nextafter(hi, lo);
  return {v, next};
}

double Sampler::uniform(double lo, double hi) {
  auto [v, next] = delve::uniform(s_, lo, hi);
  s_ = next;
  return v;
}

std::uint32_t Sampler::below(std::uint32_t n) noexcept {
  // Lemire's multiply-shift; the bias is below 2^-32 and irrelevant here.
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(u32()) * n) >> 32);
}

}  // namespace delve
