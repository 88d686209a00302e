#include "delve/catalog.hpp"

#include <numeric>

namespace delve {

namespace {

constexpr std::array<std::string_view, kNumBlocks> kBlockNames = {
    "invalid",    "out_of_bounds",      "grass",          "water",     "stone",     "tree",        "wood",
    "path",       "coal",               "iron",           "diamond",   "crafting_table", "furnace", "sand",
    "lava",       "plant",              "ripe_plant",     "wall",      "darkness",  "mossy_wall",  "stalagmite",
    "sapphire",   "ruby",               "chest",          "fountain",  "fire_grass", "ice_grass",  "gravel",
    "fire_tree",  "ice_shrub",          "enchantment_table_fire", "enchantment_table_ice", "necromancer",
    "grave",      "grave2",             "grave3",         "necromancer_vulnerable",
};

constexpr std::array<std::string_view, kNumItems> kItemNames = {"none", "torch", "ladder_down", "ladder_up",
                                                                "ladder_down_blocked"};

constexpr std::array<std::string_view, kNumCreatureKinds> kCreatureNames = {
    "zombie", "skeleton", "cow",   "orc_soldier", "orc_mage",   "snail",  "gnome_warrior",
    "gnome_archer", "bat", "lizard", "kobold",    "knight",     "archer", "troll",
    "deep_thing", "pigman", "fire_elemental", "frost_troll", "ice_elemental",
};

constexpr std::array<std::string_view, kNumProjectileKinds> kProjectileNames = {
    "arrow", "fireball", "iceball", "enemy_arrow", "enemy_fireball", "enemy_iceball"};

constexpr std::array<std::string_view, kNumExtendedActions> kActionNames = {
    "NOOP",
    "LEFT",
    "RIGHT",
    "UP",
    "DOWN",
    "DO",
    "SLEEP",
    "PLACE_STONE",
    "PLACE_TABLE",
    "PLACE_FURNACE",
    "PLACE_PLANT",
    "MAKE_WOOD_PICKAXE",
    "MAKE_STONE_PICKAXE",
    "MAKE_IRON_PICKAXE",
    "MAKE_WOOD_SWORD",
    "MAKE_STONE_SWORD",
    "MAKE_IRON_SWORD",
    "REST",
    "DESCEND",
    "ASCEND",
    "MAKE_DIAMOND_PICKAXE",
    "MAKE_DIAMOND_SWORD",
    "MAKE_IRON_ARMOUR",
    "MAKE_DIAMOND_ARMOUR",
    "SHOOT_ARROW",
    "MAKE_ARROW",
    "CAST_FIREBALL",
    "CAST_ICEBALL",
    "PLACE_TORCH",
    "DRINK_POTION_RED",
    "DRINK_POTION_GREEN",
    "DRINK_POTION_BLUE",
    "DRINK_POTION_PINK",
    "DRINK_POTION_CYAN",
    "DRINK_POTION_YELLOW",
    "READ_BOOK",
    "ENCHANT_SWORD",
    "ENCHANT_ARMOUR",
    "MAKE_TORCH",
    "LEVEL_UP_DEXTERITY",
    "LEVEL_UP_STRENGTH",
    "LEVEL_UP_INTELLIGENCE",
    "ENCHANT_BOW",
};

constexpr std::array<std::string_view, kNumExtendedActions> kActionKeys = {
    "q", "a", "d", "w", "s", " ", "Tab", "r", "t", "f", "p", "1", "2", "3", "5",
    "6", "7", "e", ".", ",", "4", "8", "y", "u", "i", "o", "g", "h", "j", "z",
    "x", "c", "v", "b", "n", "m", "k", "l", "[", "]", "-", "=", ";",
};

struct AchievementRow {
  std::string_view name;
  int value;
};

constexpr std::array<AchievementRow, kNumExtendedAchievements> kAchievements = {{
    {"COLLECT_WOOD", 1},
    {"PLACE_TABLE", 1},
    {"EAT_COW", 1},
    {"COLLECT_SAPLING", 1},
    {"COLLECT_DRINK", 1},
    {"MAKE_WOOD_PICKAXE", 1},
    {"MAKE_WOOD_SWORD", 1},
    {"PLACE_PLANT", 1},
    {"DEFEAT_ZOMBIE", 1},
    {"COLLECT_STONE", 1},
    {"PLACE_STONE", 1},
    {"EAT_PLANT", 1},
    {"DEFEAT_SKELETON", 1},
    {"MAKE_STONE_PICKAXE", 1},
    {"MAKE_STONE_SWORD", 1},
    {"WAKE_UP", 1},
    {"PLACE_FURNACE", 1},
    {"COLLECT_COAL", 1},
    {"COLLECT_IRON", 1},
    {"COLLECT_DIAMOND", 1},
    {"MAKE_IRON_PICKAXE", 1},
    {"MAKE_IRON_SWORD", 1},
    {"MAKE_ARROW", 1},
    {"MAKE_TORCH", 1},
    {"PLACE_TORCH", 1},
    {"MAKE_DIAMOND_SWORD", 3},
    {"MAKE_IRON_ARMOUR", 3},
    {"MAKE_DIAMOND_ARMOUR", 3},
    {"ENTER_GNOMISH_MINES", 3},
    {"ENTER_DUNGEON", 3},
    {"ENTER_SEWERS", 5},
    {"ENTER_VAULT", 5},
    {"ENTER_TROLL_MINES", 5},
    {"ENTER_FIRE_REALM", 8},
    {"ENTER_ICE_REALM", 8},
    {"ENTER_GRAVEYARD", 8},
    {"DEFEAT_GNOME_WARRIOR", 3},
    {"DEFEAT_GNOME_ARCHER", 3},
    {"DEFEAT_ORC_SOLIDER", 3},
    {"DEFEAT_ORC_MAGE", 3},
    {"DEFEAT_LIZARD", 5},
    {"DEFEAT_KOBOLD", 5},
    {"DEFEAT_TROLL", 5},
    {"DEFEAT_DEEP_THING", 5},
    {"DEFEAT_PIGMAN", 8},
    {"DEFEAT_FIRE_ELEMENTAL", 8},
    {"DEFEAT_FROST_TROLL", 8},
    {"DEFEAT_ICE_ELEMENTAL", 8},
    {"DAMAGE_NECROMANCER", 8},
    {"DEFEAT_NECROMANCER", 8},
    {"EAT_BAT", 3},
    {"EAT_SNAIL", 3},
    {"FIND_BOW", 3},
    {"FIRE_BOW", 3},
    {"COLLECT_SAPPHIRE", 3},
    {"LEARN_FIREBALL", 5},
    {"CAST_FIREBALL", 5},
    {"LEARN_ICEBALL", 5},
    {"CAST_ICEBALL", 5},
    {"COLLECT_RUBY", 3},
    {"MAKE_DIAMOND_PICKAXE", 3},
    {"OPEN_CHEST", 3},
    {"DRINK_POTION", 3},
    {"ENCHANT_SWORD", 5},
    {"ENCHANT_ARMOUR", 5},
    {"DEFEAT_KNIGHT", 5},
    {"DEFEAT_ARCHER", 5},
}};

constexpr std::array<std::string_view, kNumFloors> kFloorNames = {
    "overworld", "dungeon", "gnomish_mines", "sewers", "vaults", "troll_mines", "fire_realm", "ice_realm",
    "graveyard"};

constexpr std::uint16_t floors(std::initializer_list<int> fs) {
  std::uint16_t m = 0;
  for (int f : fs) m |= static_cast<std::uint16_t>(1u << f);
  return m;
}

constexpr DamageProfile dmg(int phys, int fire = 0, int ice = 0) { return {{phys * 10, fire * 10, ice * 10}}; }
constexpr DefenseProfile def(int phys, int fire = 0, int ice = 0) { return {{phys, fire, ice}}; }

using CT = CreatureType;
using CO = Collision;
using PK = ProjectileKind;
using A = Achievement;

const std::array<CreatureInfo, kNumCreatureKinds> kCreatures = {{
    {CT::Melee, 5, dmg(2), def(0), CO::Ground, floors({0}), PK::EnemyArrow, 0, A::DefeatZombie},
    {CT::Ranged, 3, dmg(2), def(0), CO::Ground, floors({0}), PK::EnemyArrow, 0, A::DefeatSkeleton},
    {CT::Passive, 3, dmg(0), def(0), CO::Ground, floors({0}), PK::EnemyArrow, 6, A::EatCow},
    {CT::Melee, 7, dmg(3), def(0), CO::Ground, floors({1}), PK::EnemyArrow, 0, A::DefeatOrcSoldier},
    {CT::Ranged, 5, dmg(3), def(0), CO::Ground, floors({1}), PK::EnemyFireball, 0, A::DefeatOrcMage},
    {CT::Passive, 6, dmg(0), def(0), CO::Ground, floors({1, 3, 4}), PK::EnemyArrow, 2, A::EatSnail},
    {CT::Melee, 9, dmg(4), def(0), CO::Ground, floors({2}), PK::EnemyArrow, 0, A::DefeatGnomeWarrior},
    {CT::Ranged, 6, dmg(2), def(0), CO::Ground, floors({2}), PK::EnemyArrow, 0, A::DefeatGnomeArcher},
    {CT::Passive, 4, dmg(0), def(0), CO::Flying, floors({2, 5, 6}), PK::EnemyArrow, 3, A::EatBat},
    {CT::Melee, 11, dmg(5), def(0), CO::Amphibian, floors({3}), PK::EnemyArrow, 0, A::DefeatLizard},
    {CT::Ranged, 8, dmg(4), def(0), CO::Ground, floors({3}), PK::EnemyArrow, 0, A::DefeatKobold},
    {CT::Melee, 12, dmg(6), def(50), CO::Ground, floors({4}), PK::EnemyArrow, 0, A::DefeatKnight},
    {CT::Ranged, 12, dmg(4), def(50), CO::Ground, floors({4}), PK::EnemyArrow, 0, A::DefeatArcher},
    {CT::Melee, 20, dmg(6, 1, 1), def(20), CO::Ground, floors({5}), PK::EnemyArrow, 0, A::DefeatTroll},
    {CT::Ranged, 6, dmg(4, 3, 3), def(0), CO::Aquatic, floors({5}), PK::EnemyArrow, 0, A::DefeatDeepThing},
    {CT::Melee, 20, dmg(3, 5), def(90, 100), CO::Ground, floors({6}), PK::EnemyArrow, 0, A::DefeatPigman},
    {CT::Ranged, 14, dmg(3, 5), def(90, 100), CO::Flying, floors({6}), PK::EnemyFireball, 0,
     A::DefeatFireElemental},
    {CT::Melee, 24, dmg(4, 0, 5), def(90, 0, 100), CO::Ground, floors({7}), PK::EnemyArrow, 0, A::DefeatFrostTroll},
    {CT::Ranged, 16, dmg(4, 0, 4), def(90, 0, 100), CO::Flying, floors({7}), PK::EnemyIceball, 0,
     A::DefeatIceElemental},
}};

}  // namespace

std::string_view block_name(BlockId b) {
  const auto i = static_cast<std::size_t>(b);
  return i < kBlockNames.size() ? kBlockNames[i] : "invalid";
}
std::string_view item_name(ItemId i) { return kItemNames.at(static_cast<std::size_t>(i)); }
std::string_view creature_name(CreatureKind k) { return kCreatureNames.at(static_cast<std::size_t>(k)); }
std::string_view projectile_name(ProjectileKind k) { return kProjectileNames.at(static_cast<std::size_t>(k)); }
std::string_view action_name(Action a) { return kActionNames.at(static_cast<std::size_t>(a)); }
std::string_view action_key(Action a) { return kActionKeys.at(static_cast<std::size_t>(a)); }
std::string_view achievement_name(Achievement a) { return kAchievements.at(static_cast<std::size_t>(a)).name; }
std::string_view floor_name(int floor) { return kFloorNames.at(static_cast<std::size_t>(floor)); }

std::optional<Achievement> achievement_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kAchievements.size(); ++i)
    if (kAchievements[i].name == name) return static_cast<Achievement>(i);
  return std::nullopt;
}

int achievement_tier_value(Achievement a) { return kAchievements.at(static_cast<std::size_t>(a)).value; }

int max_achievement_return(Tier t) {
  int sum = 0;
  for (int i = 0; i < num_achievements(t); ++i) sum += achievement_reward(t, static_cast<Achievement>(i));
  return sum;
}

Achievement enter_floor_achievement(int floor) {
  static constexpr std::array<Achievement, kNumFloors> kEnter = {
      A::CollectWood,  // unused: the overworld has no entry achievement
      A::EnterDungeon, A::EnterGnomishMines, A::EnterSewers,    A::EnterVault,
      A::EnterTrollMines, A::EnterFireRealm, A::EnterIceRealm, A::EnterGraveyard,
  };
  return kEnter.at(static_cast<std::size_t>(floor));
}

const CreatureInfo& creature_info(CreatureKind k) { return kCreatures[static_cast<std::size_t>(k)]; }

bool is_walkable(BlockId b) {
  switch (b) {
    case BlockId::Grass:
    case BlockId::Sand:
    case BlockId::Path:
    case BlockId::FireGrass:
    case BlockId::IceGrass:
    case BlockId::Gravel:
      return true;
    default:
      return false;
  }
}

bool is_solid(BlockId b) { return !(is_walkable(b) || b == BlockId::Water || b == BlockId::Lava); }

bool creature_can_enter(Collision c, BlockId b) {
  switch (c) {
    case Collision::Ground: return is_walkable(b);
    case Collision::Flying: return !is_solid(b);
    case Collision::Amphibian: return is_walkable(b) || b == BlockId::Water;
    case Collision::Aquatic: return b == BlockId::Water;
  }
  return false;
}

bool is_classic_block(BlockId b) { return static_cast<int>(b) < kNumClassicBlocks; }

}  // namespace delve
