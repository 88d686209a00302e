#pragma once
// Core vocabulary: tiers, ids, positions and fixed-point stats.

#include <compare>
#include <cstdint>
#include <cstdlib>

namespace delve {

enum class Tier : std::uint8_t { Classic = 0, Extended = 1 };

inline constexpr int kNumFloors = 9;
inline constexpr int kBossFloor = 8;

/// One-decimal fixed point. All player stats, creature health and damage
/// are held in tenths so that every transition is exact integer arithmetic.
class Tenths {
public:
  constexpr Tenths() = default;
  constexpr explicit Tenths(std::int32_t raw) : raw_(raw) {}
  static constexpr Tenths whole(std::int32_t n) { return Tenths(n * 10); }

  [[nodiscard]] constexpr std::int32_t raw() const { return raw_; }
  [[nodiscard]] constexpr float value() const { return static_cast<float>(raw_) / 10.0f; }
  [[nodiscard]] constexpr double as_double() const { return static_cast<double>(raw_) / 10.0; }

  constexpr Tenths& operator+=(Tenths o) { raw_ += o.raw_; return *this; }
  constexpr Tenths& operator-=(Tenths o) { raw_ -= o.raw_; return *this; }
  friend constexpr Tenths operator+(Tenths a, Tenths b) { return Tenths(a.raw_ + b.raw_); }
  friend constexpr Tenths operator-(Tenths a, Tenths b) { return Tenths(a.raw_ - b.raw_); }
  friend constexpr auto operator<=>(Tenths, Tenths) = default;
  friend constexpr bool operator==(Tenths, Tenths) = default;

private:
  std::int32_t raw_ = 0;
};

struct Pos {
  std::int16_t row = 0;
  std::int16_t col = 0;

  friend constexpr bool operator==(Pos, Pos) = default;
  friend constexpr Pos operator+(Pos a, Pos b) {
    return {static_cast<std::int16_t>(a.row + b.row), static_cast<std::int16_t>(a.col + b.col)};
  }
};

constexpr int chebyshev(Pos a, Pos b) {
  const int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
  const int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
  return dr > dc ? dr : dc;
}
constexpr int manhattan(Pos a, Pos b) {
  return (a.row > b.row ? a.row - b.row : b.row - a.row) + (a.col > b.col ? a.col - b.col : b.col - a.col);
}

/// Facing order matches the movement actions and the direction one-hot.
enum class Direction : std::uint8_t { Left = 0, Right = 1, Up = 2, Down = 3 };

constexpr Pos offset(Direction d) {
  switch (d) {
    case Direction::Left: return {0, -1};
    case Direction::Right: return {0, 1};
    case Direction::Up: return {-1, 0};
    case Direction::Down: return {1, 0};
  }
  return {0, 0};
}

enum class BlockId : std::uint8_t {
  Invalid = 0,
  OutOfBounds = 1,
  Grass = 2,
  Water = 3,
  Stone = 4,
  Tree = 5,
  Wood = 6,
  Path = 7,
  Coal = 8,
  Iron = 9,
  Diamond = 10,
  CraftingTable = 11,
  Furnace = 12,
  Sand = 13,
  Lava = 14,
  Plant = 15,
  RipePlant = 16,
  Wall = 17,
  Darkness = 18,
  MossyWall = 19,
  Stalagmite = 20,
  Sapphire = 21,
  Ruby = 22,
  Chest = 23,
  Fountain = 24,
  FireGrass = 25,
  IceGrass = 26,
  Gravel = 27,
  FireTree = 28,
  IceShrub = 29,
  EnchantTableFire = 30,
  EnchantTableIce = 31,
  Necromancer = 32,
  Grave = 33,
  Grave2 = 34,
  Grave3 = 35,
  NecromancerVulnerable = 36,
};
inline constexpr int kNumBlocks = 37;
inline constexpr int kNumClassicBlocks = 17;  // ids 0..16

enum class ItemId : std::uint8_t { None = 0, Torch = 1, LadderDown = 2, LadderUp = 3, LadderDownBlocked = 4 };
inline constexpr int kNumItems = 5;

enum class CreatureKind : std::uint8_t {
  Zombie = 0,
  Skeleton,
  Cow,
  OrcSoldier,
  OrcMage,
  Snail,
  GnomeWarrior,
  GnomeArcher,
  Bat,
  Lizard,
  Kobold,
  Knight,
  Archer,
  Troll,
  DeepThing,
  Pigman,
  FireElemental,
  FrostTroll,
  IceElemental,
};
inline constexpr int kNumCreatureKinds = 19;

enum class ProjectileKind : std::uint8_t {
  Arrow = 0,  // player
  Fireball,   // player
  Iceball,    // player
  EnemyArrow,
  EnemyFireball,
  EnemyIceball,
};
inline constexpr int kNumProjectileKinds = 6;

enum class Enchant : std::uint8_t { None = 0, Fire = 1, Ice = 2 };

enum class Action : std::uint8_t {
  Noop = 0,
  Left,
  Right,
  Up,
  Down,
  Do,
  Sleep,
  PlaceStone,
  PlaceTable,
  PlaceFurnace,
  PlacePlant,
  MakeWoodPickaxe,
  MakeStonePickaxe,
  MakeIronPickaxe,
  MakeWoodSword,
  MakeStoneSword,
  MakeIronSword,
  Rest,
  Descend,
  Ascend,
  MakeDiamondPickaxe,
  MakeDiamondSword,
  MakeIronArmour,
  MakeDiamondArmour,
  ShootArrow,
  MakeArrow,
  CastFireball,
  CastIceball,
  PlaceTorch,
  DrinkPotionRed,
  DrinkPotionGreen,
  DrinkPotionBlue,
  DrinkPotionPink,
  DrinkPotionCyan,
  DrinkPotionYellow,
  ReadBook,
  EnchantSword,
  EnchantArmour,
  MakeTorch,
  LevelUpDexterity,
  LevelUpStrength,
  LevelUpIntelligence,
  EnchantBow,
};
inline constexpr int kNumExtendedActions = 43;
inline constexpr int kNumClassicActions = 17;

enum class Achievement : std::uint8_t {
  CollectWood = 0,
  PlaceTable,
  EatCow,
  CollectSapling,
  CollectDrink,
  MakeWoodPickaxe,
  MakeWoodSword,
  PlacePlant,
  DefeatZombie,
  CollectStone,
  PlaceStone,
  EatPlant,
  DefeatSkeleton,
  MakeStonePickaxe,
  MakeStoneSword,
  WakeUp,
  PlaceFurnace,
  CollectCoal,
  CollectIron,
  CollectDiamond,
  MakeIronPickaxe,
  MakeIronSword,
  MakeArrow,
  MakeTorch,
  PlaceTorch,
  MakeDiamondSword,
  MakeIronArmour,
  MakeDiamondArmour,
  EnterGnomishMines,
  EnterDungeon,
  EnterSewers,
  EnterVault,
  EnterTrollMines,
  EnterFireRealm,
  EnterIceRealm,
  EnterGraveyard,
  DefeatGnomeWarrior,
  DefeatGnomeArcher,
  DefeatOrcSoldier,
  DefeatOrcMage,
  DefeatLizard,
  DefeatKobold,
  DefeatTroll,
  DefeatDeepThing,
  DefeatPigman,
  DefeatFireElemental,
  DefeatFrostTroll,
  DefeatIceElemental,
  DamageNecromancer,
  DefeatNecromancer,
  EatBat,
  EatSnail,
  FindBow,
  FireBow,
  CollectSapphire,
  LearnFireball,
  CastFireball,
  LearnIceball,
  CastIceball,
  CollectRuby,
  MakeDiamondPickaxe,
  OpenChest,
  DrinkPotion,
  EnchantSword,
  EnchantArmour,
  DefeatKnight,
  DefeatArcher,
};
inline constexpr int kNumExtendedAchievements = 67;
inline constexpr int kNumClassicAchievements = 22;

constexpr int num_actions(Tier t) { return t == Tier::Classic ? kNumClassicActions : kNumExtendedActions; }
constexpr int num_achievements(Tier t) {
  return t == Tier::Classic ? kNumClassicAchievements : kNumExtendedAchievements;
}

constexpr int to_int(auto e) { return static_cast<int>(e); }

}  // namespace delve
