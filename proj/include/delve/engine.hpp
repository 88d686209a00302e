#pragma once
// Single-environment transition function for both tiers.
//
// A step applies its phases in a fixed order:
//   1. player action          5. spawn / despawn and boss waves
//   2. projectile advance     6. plant growth and day/night
//   3. creature actions       7. achievements and reward
//   4. survival stats         8. termination

#include <bitset>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "delve/state.hpp"
#include "delve/worldgen.hpp"

namespace delve {

/// Thrown when stepping an episode that has already ended.
class EpisodeOver : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct EngineConfig {
  std::uint32_t max_episode_length = kDefaultMaxEpisodeLength;
};

/// Allocation-free result of one in-place step.
struct StepResult {
  double reward = 0.0;
  bool done = false;
  AchievementSet unlocked;
  Tenths health_delta;
  std::uint32_t time = 0;
  std::uint8_t floor = 0;
};

struct StepInfo {
  std::uint32_t time = 0;
  std::uint8_t floor = 0;
  Tenths health_delta;
};

struct StepOutcome {
  GameState state;
  double reward = 0.0;
  bool done = false;
  std::vector<Achievement> newly_unlocked;
  StepInfo info;
};

/// Fresh episode on `world`. Throws std::invalid_argument when the world was
/// generated for another tier.
GameState reset(const World& world, Tier tier, const RngStream& rng, const EngineConfig& config = {});

/// Pure transition. Throws std::invalid_argument for an action outside the
/// tier's action set and EpisodeOver when `state.done`.
StepOutcome step(const GameState& state, Action action);
StepOutcome step(const GameState& state, int action);

/// In-place transition used by the batch runner.
StepResult step_inplace(GameState& state, Action action);

/// Damage in tenths after per-category defence: floor((sum dmg*(100-def) + 50) / 100),
/// i.e. the exact sum rounded half-up to one decimal. Percentages are clamped to [0, 100].
Tenths resolve_attack(const DamageProfile& damage, const DefenseProfile& defense);

/// Sum of achievement rewards for the set bits of `set` in tier `t`.
int achievement_value(Tier t, const AchievementSet& set);

// ---------------------------------------------------------------------------
// Mechanics constants

namespace rules {
inline constexpr int kDayLength = 300;
inline constexpr int kAggroRadius = 6;
inline constexpr int kRangedRange = 5;
inline constexpr int kDespawnRadius = 12;
inline constexpr int kSpawnMinDistance = 3;
inline constexpr int kSpawnMaxDistance = 9;
inline constexpr int kAttackCooldown = 2;
inline constexpr double kChaseProbability = 0.8;
inline constexpr int kHungerPeriod = 25;   // steps per food point at dexterity 1
inline constexpr int kThirstPeriod = 20;
inline constexpr int kFatiguePeriod = 30;
inline constexpr int kRecoverPeriod = 25;  // steps per regenerated health point
inline constexpr int kDepletionPeriod = 15;  // steps per damage point per depleted stat
inline constexpr int kSleepRecoverPeriod = 10;
inline constexpr int kManaPeriod = 20;
inline constexpr int kPlantRipeAge = 300;
inline constexpr int kFloorClearKills = 8;
inline constexpr int kSpellManaCost = 2;
inline constexpr int kEnchantManaCost = 9;
inline constexpr int kSaplingPercent = 10;
inline constexpr int kTorchRadius = 3;
inline constexpr float kLightThreshold = 0.05f;
}  // namespace rules

/// Daylight in [0, 1] at a given step: 1 - |cos(pi * (t/300 mod 1 + 0.3))|^3.
float daylight_at(std::uint32_t time);

/// Light of a tile on the player's current floor (Extended): floor base light,
/// scaled by daylight on the overworld, raised by nearby torches.
float tile_light(const GameState& s, Pos p);

/// Player defence from armour pieces and their enchantments.
DefenseProfile player_defense(const Player& p);
/// Player melee damage profile from sword tier, strength and enchantment.
DamageProfile player_melee_damage(const Player& p);

/// The creature standing on `p` on the player's floor, if any.
const Creature* creature_at(const GameState& s, Pos p);

/// Action set of a tier, validated.
bool action_valid(Tier t, int action);

}  // namespace delve
