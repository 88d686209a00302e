#pragma once
// Complete, value-semantic snapshot of one episode.

#include <array>
#include <bitset>
#include <cstdint>
#include <vector>

#include "delve/catalog.hpp"
#include "delve/rng.hpp"
#include "delve/types.hpp"
#include "delve/worldgen.hpp"

namespace delve {

inline constexpr std::uint32_t kDefaultMaxEpisodeLength = 100000;
inline constexpr int kMaxLanes = 3;
inline constexpr int kPlantCapacity = 10;
inline constexpr int kMaxInventory = 99;

struct Inventory {
  std::uint8_t wood = 0;
  std::uint8_t stone = 0;
  std::uint8_t coal = 0;
  std::uint8_t iron = 0;
  std::uint8_t diamond = 0;
  std::uint8_t sapphire = 0;
  std::uint8_t ruby = 0;
  std::uint8_t sapling = 0;
  std::uint8_t torch = 0;
  std::uint8_t arrow = 0;
  std::uint8_t book = 0;
  std::array<std::uint8_t, kNumPotions> potions{};

  friend bool operator==(const Inventory&, const Inventory&) = default;
};

struct Player {
  std::uint8_t floor = 0;
  Pos pos;
  Direction facing = Direction::Down;
  Tenths health, food, drink, energy, mana;
  std::uint8_t xp = 0;
  std::uint8_t dexterity = 1;
  std::uint8_t strength = 1;
  std::uint8_t intelligence = 1;
  std::uint8_t sword = 0;    // 0 none, 1 wood, 2 stone, 3 iron, 4 diamond
  std::uint8_t pickaxe = 0;  // same scale
  bool bow = false;
  std::array<std::uint8_t, 4> armour{};  // 0 none, 1 iron, 2 diamond
  Enchant sword_enchant = Enchant::None;
  Enchant bow_enchant = Enchant::None;
  std::array<Enchant, 4> armour_enchants{};
  bool learned_fireball = false;
  bool learned_iceball = false;
  bool sleeping = false;
  bool resting = false;

  // Survival clocks, in half-steps so sleeping can tick at half rate.
  std::int16_t hunger = 0;
  std::int16_t thirst = 0;
  std::int16_t fatigue = 0;
  std::int16_t recover = 0;
  std::int16_t mana_clock = 0;

  friend bool operator==(const Player&, const Player&) = default;
};

struct Creature {
  CreatureKind kind = CreatureKind::Zombie;
  Pos pos;
  Tenths health;
  std::uint8_t cooldown = 0;
  bool alive = false;

  friend bool operator==(const Creature&, const Creature&) = default;
};

/// Fixed-capacity masked array. Lanes at index >= capacity are never used;
/// dead lanes are ignored by every phase and zeroed at the end of a step.
struct CreatureArray {
  std::uint8_t capacity = 0;
  std::array<Creature, kMaxLanes> lanes{};

  [[nodiscard]] int live_count() const {
    int n = 0;
    for (int i = 0; i < capacity; ++i) n += lanes[static_cast<std::size_t>(i)].alive ? 1 : 0;
    return n;
  }
  friend bool operator==(const CreatureArray&, const CreatureArray&) = default;
};

struct Projectile {
  ProjectileKind kind = ProjectileKind::Arrow;
  Pos pos;
  Direction dir = Direction::Left;
  DamageProfile damage;
  bool alive = false;

  friend bool operator==(const Projectile& a, const Projectile& b) {
    return a.kind == b.kind && a.pos == b.pos && a.dir == b.dir && a.damage.tenths == b.damage.tenths &&
           a.alive == b.alive;
  }
};

struct ProjectileArray {
  std::uint8_t capacity = 0;
  std::array<Projectile, kMaxLanes> lanes{};

  [[nodiscard]] int live_count() const {
    int n = 0;
    for (int i = 0; i < capacity; ++i) n += lanes[static_cast<std::size_t>(i)].alive ? 1 : 0;
    return n;
  }
  friend bool operator==(const ProjectileArray&, const ProjectileArray&) = default;
};

/// Creature classes of one floor. In Classic the melee, ranged and passive
/// arrays hold zombies, skeletons and cows, and `enemy_projectiles` arrows.
struct FloorCreatures {
  CreatureArray melee;
  CreatureArray ranged;
  CreatureArray passive;
  ProjectileArray player_projectiles;
  ProjectileArray enemy_projectiles;

  friend bool operator==(const FloorCreatures&, const FloorCreatures&) = default;
};

struct Plant {
  std::uint8_t floor = 0;
  Pos pos;
  std::uint16_t age = 0;
  bool alive = false;

  friend bool operator==(const Plant&, const Plant&) = default;
};

inline constexpr int kBossWaves = 8;

struct BossState {
  std::uint8_t wave = 0;        // waves summoned so far
  std::uint8_t health = kBossWaves;
  bool vulnerable = false;

  friend bool operator==(const BossState&, const BossState&) = default;
};

using AchievementSet = std::bitset<kNumExtendedAchievements>;

struct GameState {
  Tier tier = Tier::Classic;
  std::uint32_t max_episode_length = kDefaultMaxEpisodeLength;
  std::uint64_t level_id = 0;

  std::vector<FloorMap> floors;
  std::array<PotionEffect, kNumPotions> potion_permutation{};
  std::vector<ChestLoot> chests;

  Player player;
  Inventory inventory;
  std::array<FloorCreatures, kNumFloors> creatures{};
  std::array<Plant, kPlantCapacity> plants{};

  AchievementSet achievements;
  std::uint32_t time = 0;
  float day_phase = 0.0f;  // position in the day/night cycle, [0, 1)
  float daylight = 1.0f;
  std::uint16_t floors_visited = 1;  // bit f
  std::uint16_t floor_cleared = 0;   // bit f
  std::array<std::uint8_t, kNumFloors> kills{};
  BossState boss;
  bool done = false;

  RngStream rng;

  [[nodiscard]] const FloorMap& floor() const { return floors[player.floor]; }
  [[nodiscard]] FloorMap& floor() { return floors[player.floor]; }
  [[nodiscard]] bool visited(int f) const { return (floors_visited >> f) & 1u; }
  [[nodiscard]] bool cleared(int f) const { return (floor_cleared >> f) & 1u; }
  [[nodiscard]] bool boss_vulnerable() const { return boss.vulnerable; }

  friend bool operator==(const GameState&, const GameState&) = default;
};

// ---------------------------------------------------------------------------
// Stat maxima

inline Tenths max_health(const GameState& s) {
  return Tenths::whole(s.tier == Tier::Classic ? 9 : 9 + s.player.strength);
}
inline Tenths max_food(const GameState& s) {
  return Tenths::whole(s.tier == Tier::Classic ? 9 : 12 + s.player.dexterity);
}
inline Tenths max_drink(const GameState& s) { return max_food(s); }
inline Tenths max_energy(const GameState& s) { return max_food(s); }
inline Tenths max_mana(const GameState& s) {
  return Tenths::whole(s.tier == Tier::Classic ? 0 : 16 + s.player.intelligence);
}

}  // namespace delve
