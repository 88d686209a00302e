#pragma once
// Static game tables: block/item/creature/action/achievement metadata.

#include <array>
#include <optional>
#include <string_view>

#include "delve/types.hpp"

namespace delve {

// ---------------------------------------------------------------------------
// Names

std::string_view block_name(BlockId b);
std::string_view item_name(ItemId i);
std::string_view creature_name(CreatureKind k);
std::string_view projectile_name(ProjectileKind k);
std::string_view action_name(Action a);
std::string_view achievement_name(Achievement a);
std::string_view floor_name(int floor);

std::optional<Achievement> achievement_from_name(std::string_view name);

/// Keyboard binding for each action, as used by the human play client.
std::string_view action_key(Action a);

// ---------------------------------------------------------------------------
// Achievements

/// Reward value of an achievement in the Extended tier: 1, 3, 5 or 8.
int achievement_tier_value(Achievement a);

/// Reward for unlocking `a` in tier `t` (Classic pays 1 for everything).
inline int achievement_reward(Tier t, Achievement a) {
  return t == Tier::Classic ? 1 : achievement_tier_value(a);
}

/// Sum of rewards over every achievement of a tier (226 / 22).
int max_achievement_return(Tier t);

/// The achievement for entering `floor` for the first time (floors 1..8).
Achievement enter_floor_achievement(int floor);

// ---------------------------------------------------------------------------
// Creatures

enum class CreatureType : std::uint8_t { Melee, Ranged, Passive };
enum class Collision : std::uint8_t { Ground, Flying, Amphibian, Aquatic };

struct DamageProfile {
  // In tenths; indexes physical, fire, ice.
  std::array<std::int32_t, 3> tenths{0, 0, 0};
};

struct DefenseProfile {
  // Percentages in [0, 100]; physical, fire, ice.
  std::array<std::int32_t, 3> percent{0, 0, 0};
};

struct CreatureInfo {
  CreatureType type;
  std::int32_t health;  // whole points
  DamageProfile damage;
  DefenseProfile defense;
  Collision collision;
  std::uint16_t floor_mask;  // bit f set when the creature lives on floor f
  ProjectileKind projectile;  // ranged only
  std::int32_t food;          // passive only: food restored when eaten
  std::optional<Achievement> defeat_achievement;
};

const CreatureInfo& creature_info(CreatureKind k);

// ---------------------------------------------------------------------------
// Blocks

/// Tiles a ground creature or the player may stand on.
bool is_walkable(BlockId b);
/// Tiles that stop projectiles and flyers.
bool is_solid(BlockId b);
/// Tiles a creature with the given collision type may occupy.
bool creature_can_enter(Collision c, BlockId b);
/// Blocks that can appear in a Classic world.
bool is_classic_block(BlockId b);

}  // namespace delve
