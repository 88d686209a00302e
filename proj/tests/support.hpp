#pragma once
// Fixtures shared by the test executables.

#include <cstdint>
#include <vector>

#include "delve/batch.hpp"
#include "delve/catalog.hpp"
#include "delve/engine.hpp"

namespace delve::test {

inline Pos at(int r, int c) { return {static_cast<std::int16_t>(r), static_cast<std::int16_t>(c)}; }

inline GameState fresh(Tier t, std::uint64_t seed, std::uint32_t max_len = kDefaultMaxEpisodeLength) {
  return new_episode(RngStream::from_seed(seed), t, EngineConfig{max_len}).state;
}

/// Open grass field with the player in the middle facing down and spawning
/// disabled (creature capacities 0). Extended floors are fully lit.
inline GameState arena(Tier t, int rows = 17, int cols = 17) {
  World w;
  w.tier = t;
  w.level_id = 0;
  const int floors = t == Tier::Classic ? 1 : kNumFloors;
  for (int f = 0; f < floors; ++f) {
    FloorMap m;
    m.rows = static_cast<std::int16_t>(rows);
    m.cols = static_cast<std::int16_t>(cols);
    const std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    m.blocks.assign(n, BlockId::Grass);
    m.items.assign(n, ItemId::None);
    if (t == Tier::Extended) m.light.assign(n, 1.0f);
    m.spawn = at(rows / 2, cols / 2);
    w.floors.push_back(std::move(m));
  }
  for (int i = 0; i < kNumPotions; ++i) w.potion_permutation[static_cast<std::size_t>(i)] = static_cast<PotionEffect>(i);
  GameState s = reset(w, t, RngStream::from_seed(99));
  for (FloorCreatures& fc : s.creatures) {
    fc.melee.capacity = 0;
    fc.ranged.capacity = 0;
    fc.passive.capacity = 0;
  }
  return s;
}

/// Puts a creature in the first free lane of its class (raising the capacity
/// when needed) and returns a pointer to it.
inline Creature* add_creature(GameState& s, CreatureKind k, Pos p, int floor = -1) {
  const int f = floor < 0 ? s.player.floor : floor;
  FloorCreatures& fc = s.creatures[static_cast<std::size_t>(f)];
  const CreatureInfo& info = creature_info(k);
  CreatureArray& arr = info.type == CreatureType::Melee ? fc.melee : info.type == CreatureType::Ranged ? fc.ranged : fc.passive;
  for (std::size_t i = 0; i < kMaxLanes; ++i) {
    if (arr.lanes[i].alive) continue;
    arr.capacity = std::max<std::uint8_t>(arr.capacity, static_cast<std::uint8_t>(i + 1));
    arr.lanes[i] = Creature{k, p, Tenths::whole(info.health), 0, true};
    return &arr.lanes[i];
  }
  return nullptr;
}

inline void face(GameState& s, Direction d) { s.player.facing = d; }

inline Pos ahead(const GameState& s) { return s.player.pos + offset(s.player.facing); }

inline void set_ahead(GameState& s, BlockId b) { s.floor().set_block(ahead(s), b); }

/// Uniformly random legal actions.
inline std::vector<Action> random_actions(Tier t, std::uint64_t seed, std::size_t n) {
  Sampler rng(RngStream::from_seed(seed).split(0xACE));
  std::vector<Action> out(n);
  for (Action& a : out) a = static_cast<Action>(rng.below(static_cast<std::uint32_t>(num_actions(t))));
  return out;
}

}  // namespace delve::test
