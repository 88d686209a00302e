#pragma once
// Procedural generation of the nine floors and the level-editing operators
// used by environment-design methods.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "delve/rng.hpp"
#include "delve/types.hpp"

namespace delve {

// ---------------------------------------------------------------------------
// Perlin noise

struct Octave {
  std::uint32_t frequency;  // lattice cells per axis
  double amplitude;
};

/// Gradient angles of one octave: (res+1)^2 values, row-major.
struct AngleField {
  std::uint32_t res = 1;
  std::vector<double> angles;

  friend bool operator==(const AngleField&, const AngleField&) = default;
};

struct Dims {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
};

/// Fractal Perlin noise: sum of amplitude-weighted octaves divided by the total
/// amplitude, clamped to [-1, 1]. `angles[i]` drives `octaves[i]`.
/// Throws std::invalid_argument when a dimension is not divisible by an octave
/// frequency or an angle field does not match its octave.
std::vector<double> perlin(Dims dims, std::span<const AngleField> angles, std::span<const Octave> octaves);

// ---------------------------------------------------------------------------
// Level parameters

inline constexpr int kOverworldChannels = 3;  // water, mountain, vegetation
inline constexpr std::array<Octave, 2> kOverworldOctaves = {{{4, 1.0}, {8, 0.5}}};

/// The generative description of one world. `overworld_angles` holds
/// kOverworldChannels * kOverworldOctaves.size() fields, channel-major.
struct LevelParams {
  std::uint64_t seed = 0;
  std::vector<AngleField> overworld_angles;
  std::array<std::uint64_t, kNumFloors> per_floor_seeds{};

  friend bool operator==(const LevelParams&, const LevelParams&) = default;
};

LevelParams make_level_params(const RngStream& stream);
inline LevelParams make_level_params(std::uint64_t seed) { return make_level_params(RngStream::from_seed(seed)); }

/// Wraps an angle into [0, 2*pi).
double normalize_angle(double a);

// ---------------------------------------------------------------------------
// Worlds

struct FloorMap {
  std::int16_t rows = 0;
  std::int16_t cols = 0;
  std::vector<BlockId> blocks;
  std::vector<ItemId> items;
  std::vector<float> light;  // per-tile base light in [0,1]; empty in Classic
  Pos spawn;
  std::optional<Pos> ladder_down;
  std::optional<Pos> ladder_up;

  [[nodiscard]] bool in_bounds(Pos p) const { return p.row >= 0 && p.col >= 0 && p.row < rows && p.col < cols; }
  [[nodiscard]] std::size_t index(Pos p) const { return static_cast<std::size_t>(p.row) * cols + p.col; }
  [[nodiscard]] BlockId block(Pos p) const { return in_bounds(p) ? blocks[index(p)] : BlockId::OutOfBounds; }
  [[nodiscard]] ItemId item(Pos p) const { return in_bounds(p) ? items[index(p)] : ItemId::None; }
  void set_block(Pos p, BlockId b) { blocks[index(p)] = b; }

  friend bool operator==(const FloorMap&, const FloorMap&) = default;
};

enum class PotionEffect : std::uint8_t { HealthUp = 0, ManaUp, EnergyUp, HealthDown, ManaDown, FoodDrinkUp };
inline constexpr int kNumPotions = 6;

struct Loot {
  std::uint8_t arrows = 0;
  std::uint8_t torches = 0;
  std::uint8_t books = 0;
  std::array<std::uint8_t, kNumPotions> potions{};
  bool bow = false;

  friend bool operator==(const Loot&, const Loot&) = default;
};

struct ChestLoot {
  std::uint8_t floor = 0;
  Pos pos;
  Loot loot;

  friend bool operator==(const ChestLoot&, const ChestLoot&) = default;
};

struct WorldConfig {
  Tier tier = Tier::Extended;
  Dims overworld{48, 48};
  Dims underground{48, 48};
  int chests_dungeon = 4;  // floor 1
  int chests_sewers = 3;   // floor 3
  int chests_vaults = 5;   // floor 4

  static WorldConfig classic() { return {Tier::Classic, {64, 64}, {64, 64}, 0, 0, 0}; }
  static WorldConfig extended() { return {}; }
  static WorldConfig for_tier(Tier t) { return t == Tier::Classic ? classic() : extended(); }

  friend bool operator==(const WorldConfig&, const WorldConfig&) = default;
};

struct World {
  Tier tier = Tier::Extended;
  std::uint64_t level_id = 0;  // LevelParams::seed of the source level
  std::vector<FloorMap> floors;  // 1 floor in Classic, 9 in Extended
  std::array<PotionEffect, kNumPotions> potion_permutation{};
  std::vector<ChestLoot> chests;

  friend bool operator==(const World&, const World&) = default;
};

World generate_world(const LevelParams& params, const WorldConfig& config);
inline World generate_world(const LevelParams& params, Tier tier) {
  return generate_world(params, WorldConfig::for_tier(tier));
}

/// Blocks a floor's generator may emit.
std::span<const BlockId> floor_palette(Tier tier, int floor);

// ---------------------------------------------------------------------------
// Level mutation

inline constexpr double kDefaultNoiseMutation = 0.5;
inline constexpr int kCentralWindow = 16;

/// Adds U(-range, range) to every overworld angle and renormalizes.
LevelParams mutate_noise(const LevelParams& params, const RngStream& s, double range = kDefaultNoiseMutation);

/// Record of a tile exchange, returned by the `_traced` variants for testing.
struct SwapTrace {
  bool swapped = false;
  Pos first;   // inside the central window
  Pos second;
};

/// Exchanges one overworld tile from the central 16x16 window with another
/// overworld tile. Spawn and ladder tiles are never selected.
World mutate_swap(const World& world, const RngStream& s);
World mutate_swap_traced(const World& world, const RngStream& s, SwapTrace& trace);

/// Like mutate_swap, but both tiles belong to one compatibility class:
/// {stone, coal, iron, diamond, sapphire, ruby} or {grass, tree}. Returns the
/// world unchanged when no legal pair exists.
World mutate_rswap(const World& world, const RngStream& s);
World mutate_rswap_traced(const World& world, const RngStream& s, SwapTrace& trace);

/// Compatibility class of a block for mutate_rswap: 1 ores, 2 vegetation, 0 none.
int rswap_class(BlockId b);

}  // namespace delve
