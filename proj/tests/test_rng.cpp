#include <doctest.h>

#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

#include "delve/rng.hpp"

using namespace delve;

TEST_CASE("philox4x32-10 matches the Random123 known-answer vectors") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxBlock{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
        PhiloxBlock{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
        PhiloxBlock{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are values: drawing does not mutate the source") {
  const RngStream s = RngStream::from_seed(42);
  const auto [a, next] = s.next_u32();
  const auto [b, next2] = s.next_u32();
  CHECK(a == b);
  CHECK(next == next2);
  CHECK(next.position() == s.position() + 1);
  CHECK(next.next_u32().first != a);
}

TEST_CASE("split depends only on key material and id, not on draws") {
  const RngStream s = RngStream::from_seed(7);
  const RngStream advanced = s.next_u64().second.next_u64().second;
  CHECK(s.split(3) == advanced.split(3));
  CHECK(s.split(3) != s.split(4));
  CHECK(split(s, 9) == s.split(9));
  CHECK(s.split(3).position() == 0);
}

TEST_CASE("distinct seeds and split ids give distinct first draws") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed = 0; seed < 200; ++seed) seen.insert(RngStream::from_seed(seed).next_u64().first);
  const RngStream root = RngStream::from_seed(1);
  for (std::uint64_t id = 0; id < 200; ++id) seen.insert(root.split(id).next_u64().first);
  CHECK(seen.size() == 400);
}

TEST_CASE("a stream can be rebuilt from key, base and position") {
  const RngStream s = RngStream::from_seed(11).split(5).next_u32().second;
  const RngStream copy(s.key(), s.base(), s.position());
  CHECK(copy == s);
  CHECK(copy.next_u64().first == s.next_u64().first);
}

TEST_CASE("unit draws lie in [0, 1) and have the right mean") {
  Sampler rng(RngStream::from_seed(3));
  double sum = 0.0;
  constexpr int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("below(n) is bounded and roughly uniform") {
  Sampler rng(RngStream::from_seed(5));
  std::array<int, 7> counts{};
  constexpr int n = 70000;
  for (int i = 0; i < n; ++i) {
    const std::uint32_t v = rng.below(7);
    REQUIRE(v < 7);
    ++counts[v];
  }
  // Chi-square with 6 degrees of freedom; 22.46 is the 0.999 quantile.
  double chi = 0.0;
  for (int c : counts) chi += (c - n / 7.0) * (c - n / 7.0) / (n / 7.0);
  CHECK(chi < 22.46);
}

TEST_CASE("uniform respects its bounds and rejects inverted ranges") {
  Sampler rng(RngStream::from_seed(8));
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform(-2.5, 1.5);
    REQUIRE(v >= -2.5);
    REQUIRE(v < 1.5);
  }
  CHECK(rng.uniform(3.0, 3.0) == 3.0);
  CHECK_THROWS_AS(rng.uniform(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)uniform(RngStream::from_seed(1), 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("the sampler walks the same sequence as manual draws") {
  RngStream s = RngStream::from_seed(21);
  Sampler rng(s);
  for (int i = 0; i < 10; ++i) {
    auto [v, next] = s.next_u32();
    CHECK(rng.u32() == v);
    s = next;
  }
  CHECK(rng.stream() == s);
}
