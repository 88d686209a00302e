#include "delve/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "delve/catalog.hpp"

namespace delve {

namespace {

using A = Achievement;

constexpr std::array<Direction, 4> kDirections = {Direction::Left, Direction::Right, Direction::Up, Direction::Down};

// ---------------------------------------------------------------------------
// Creature class tables

enum class Slot : std::uint8_t { Melee = 0, Ranged = 1, Passive = 2 };

struct KindList {
  std::array<CreatureKind, kNumCreatureKinds> kinds{};
  std::uint8_t count = 0;
};

struct FloorKinds {
  std::array<std::array<KindList, 3>, kNumFloors> table{};
};

const FloorKinds& floor_kinds() {
  static const FloorKinds kTable = [] {
    FloorKinds t;
    for (int k = 0; k < kNumCreatureKinds; ++k) {
      const CreatureInfo& info = creature_info(static_cast<CreatureKind>(k));
      const auto slot = static_cast<std::size_t>(info.type);
      for (int f = 0; f < kNumFloors; ++f) {
        if (((info.floor_mask >> f) & 1u) == 0) continue;
        KindList& list = t.table[static_cast<std::size_t>(f)][slot];
        list.kinds[list.count++] = static_cast<CreatureKind>(k);
      }
    }
    return t;
  }();
  return kTable;
}

CreatureArray& slot_array(FloorCreatures& fc, Slot s) {
  switch (s) {
    case Slot::Melee: return fc.melee;
    case Slot::Ranged: return fc.ranged;
    case Slot::Passive: return fc.passive;
  }
  return fc.melee;
}

template <class F>
void for_each_live(FloorCreatures& fc, F&& f) {
  for (CreatureArray* arr : {&fc.melee, &fc.ranged, &fc.passive})
    for (int i = 0; i < arr->capacity; ++i)
      if (Creature& c = arr->lanes[static_cast<std::size_t>(i)]; c.alive) f(c);
}

int live_creatures(const FloorCreatures& fc) {
  return fc.melee.live_count() + fc.ranged.live_count() + fc.passive.live_count();
}

// ---------------------------------------------------------------------------
// Small helpers

int sign(int v) { return (v > 0) - (v < 0); }

void add_count(std::uint8_t& v, int n) { v = static_cast<std::uint8_t>(std::clamp(v + n, 0, kMaxInventory)); }

void add_stat(Tenths& v, Tenths delta, Tenths max) {
  v = Tenths(std::clamp(v.raw() + delta.raw(), 0, std::max(0, max.raw())));
}

bool on_floor_map(const FloorMap& m, Pos p) { return m.in_bounds(p); }

Creature* creature_at_mut(GameState& s, Pos p) {
  FloorCreatures& fc = s.creatures[s.player.floor];
  for (CreatureArray* arr : {&fc.melee, &fc.ranged, &fc.passive})
    for (int i = 0; i < arr->capacity; ++i)
      if (Creature& c = arr->lanes[static_cast<std::size_t>(i)]; c.alive && c.pos == p) return &c;
  return nullptr;
}

bool occupied(const GameState& s, Pos p) { return s.player.pos == p || creature_at(s, p) != nullptr; }

bool nearby_block(const GameState& s, BlockId b) {
  const FloorMap& m = s.floor();
  for (int dr = -1; dr <= 1; ++dr)
    for (int dc = -1; dc <= 1; ++dc)
      if (m.block(s.player.pos + Pos{static_cast<std::int16_t>(dr), static_cast<std::int16_t>(dc)}) == b) return true;
  return false;
}

class Step {
public:
  Step(GameState& s) : s_(s), rng_(s.rng) {}

  StepResult run(Action action) {
    const AchievementSet before = s_.achievements;
    const Tenths health_before = s_.player.health;

    player_action(action);
    advance_projectiles();
    creatures_act();
    survival();
    spawn_and_despawn();
    plants_and_clock();

    StepResult r;
    r.unlocked = s_.achievements & ~before;
    r.health_delta = s_.player.health - health_before;
    r.reward = achievement_value(s_.tier, r.unlocked) + static_cast<double>(r.health_delta.raw()) / 100.0;
    s_.done = s_.player.health.raw() <= 0 || s_.time >= s_.max_episode_length;
    r.done = s_.done;
    r.time = s_.time;
    r.floor = s_.player.floor;

    canonicalize();
    s_.rng = rng_.stream();
    return r;
  }

private:
  GameState& s_;
  Sampler rng_;

  Player& pl() { return s_.player; }
  Inventory& inv() { return s_.inventory; }
  FloorMap& map() { return s_.floor(); }
  FloorCreatures& here() { return s_.creatures[s_.player.floor]; }

  void unlock(Achievement a) {
    if (s_.tier == Tier::Classic && to_int(a) >= kNumClassicAchievements) return;
    s_.achievements.set(static_cast<std::size_t>(a));
  }

  void damage_player(Tenths dealt) {
    if (dealt.raw() <= 0) return;
    add_stat(pl().health, Tenths(-dealt.raw()), max_health(s_));
    pl().sleeping = false;
    pl().resting = false;
  }

  // -------------------------------------------------------------------------
  // Phase 1

  void player_action(Action a) {
    if (pl().sleeping || pl().resting) a = Action::Noop;
    switch (a) {
      case Action::Noop: break;
      case Action::Left: move(Direction::Left); break;
      case Action::Right: move(Direction::Right); break;
      case Action::Up: move(Direction::Up); break;
      case Action::Down: move(Direction::Down); break;
      case Action::Do: interact(); break;
      case Action::Sleep:
        if (pl().energy < max_energy(s_)) {
          pl().sleeping = true;
          pl().fatigue = std::min<std::int16_t>(pl().fatigue, 0);
        }
        break;
      case Action::PlaceStone: place_stone(); break;
      case Action::PlaceTable: place_table(); break;
      case Action::PlaceFurnace: place_furnace(); break;
      case Action::PlacePlant: place_plant(); break;
      case Action::MakeWoodPickaxe: make_tool(pl().pickaxe, 1, A::MakeWoodPickaxe); break;
      case Action::MakeStonePickaxe: make_tool(pl().pickaxe, 2, A::MakeStonePickaxe); break;
      case Action::MakeIronPickaxe: make_tool(pl().pickaxe, 3, A::MakeIronPickaxe); break;
      case Action::MakeDiamondPickaxe: make_tool(pl().pickaxe, 4, A::MakeDiamondPickaxe); break;
      case Action::MakeWoodSword: make_tool(pl().sword, 1, A::MakeWoodSword); break;
      case Action::MakeStoneSword: make_tool(pl().sword, 2, A::MakeStoneSword); break;
      case Action::MakeIronSword: make_tool(pl().sword, 3, A::MakeIronSword); break;
      case Action::MakeDiamondSword: make_tool(pl().sword, 4, A::MakeDiamondSword); break;
      case Action::Rest:
        if (pl().health < max_health(s_)) pl().resting = true;
        break;
      case Action::Descend: descend(); break;
      case Action::Ascend: ascend(); break;
      case Action::MakeIronArmour: make_armour(1); break;
      case Action::MakeDiamondArmour: make_armour(2); break;
      case Action::ShootArrow: shoot_arrow(); break;
      case Action::MakeArrow:
        if (nearby_block(s_, BlockId::CraftingTable) && inv().wood >= 1 && inv().stone >= 1) {
          add_count(inv().wood, -1);
          add_count(inv().stone, -1);
          add_count(inv().arrow, 2);
          unlock(A::MakeArrow);
        }
        break;
      case Action::CastFireball: cast(ProjectileKind::Fireball); break;
      case Action::CastIceball: cast(ProjectileKind::Iceball); break;
      case Action::PlaceTorch: place_torch(); break;
      case Action::DrinkPotionRed:
      case Action::DrinkPotionGreen:
      case Action::DrinkPotionBlue:
      case Action::DrinkPotionPink:
      case Action::DrinkPotionCyan:
      case Action::DrinkPotionYellow:
        drink_potion(to_int(a) - to_int(Action::DrinkPotionRed));
        break;
      case Action::ReadBook: read_book(); break;
      case Action::EnchantSword: enchant_sword(); break;
      case Action::EnchantArmour: enchant_armour(); break;
      case Action::MakeTorch:
        if (nearby_block(s_, BlockId::CraftingTable) && inv().wood >= 1 && inv().coal >= 1) {
          add_count(inv().wood, -1);
          add_count(inv().coal, -1);
          add_count(inv().torch, 4);
          unlock(A::MakeTorch);
        }
        break;
      case Action::LevelUpDexterity: level_up(pl().dexterity); break;
      case Action::LevelUpStrength: level_up(pl().strength); break;
      case Action::LevelUpIntelligence: level_up(pl().intelligence); break;
      case Action::EnchantBow: enchant_bow(); break;
    }
  }

  Pos facing_tile() const { return s_.player.pos + offset(s_.player.facing); }

  void move(Direction d) {
    pl().facing = d;
    const Pos t = facing_tile();
    const FloorMap& m = map();
    if (!on_floor_map(m, t) || creature_at(s_, t) != nullptr) return;
    const BlockId b = m.block(t);
    if (is_walkable(b)) {
      pl().pos = t;
    } else if (b == BlockId::Lava) {
      pl().pos = t;
      damage_player(pl().health);
    }
  }

  void interact() {
    const Pos t = facing_tile();
    FloorMap& m = map();
    if (!m.in_bounds(t)) return;
    if (Creature* c = creature_at_mut(s_, t)) {
      melee(*c);
      return;
    }
    const auto mine = [&](int tier, std::uint8_t& count, Achievement a) {
      if (pl().pickaxe < tier) return;
      add_count(count, 1);
      m.set_block(t, BlockId::Path);
      unlock(a);
    };
    switch (m.block(t)) {
      case BlockId::Tree:
      case BlockId::FireTree:
      case BlockId::IceShrub:
        add_count(inv().wood, 1);
        unlock(A::CollectWood);
        break;
      case BlockId::Stone:
      case BlockId::Stalagmite: mine(1, inv().stone, A::CollectStone); break;
      case BlockId::Coal: mine(1, inv().coal, A::CollectCoal); break;
      case BlockId::Iron: mine(2, inv().iron, A::CollectIron); break;
      case BlockId::Diamond: mine(3, inv().diamond, A::CollectDiamond); break;
      case BlockId::Sapphire: mine(4, inv().sapphire, A::CollectSapphire); break;
      case BlockId::Ruby: mine(4, inv().ruby, A::CollectRuby); break;
      case BlockId::Water:
      case BlockId::Fountain:
        add_stat(pl().drink, Tenths::whole(1), max_drink(s_));
        pl().thirst = 0;
        unlock(A::CollectDrink);
        break;
      case BlockId::Grass:
        if (rng_.below(100) < static_cast<std::uint32_t>(rules::kSaplingPercent)) {
          add_count(inv().sapling, 1);
          unlock(A::CollectSapling);
        }
        break;
      case BlockId::RipePlant:
        add_stat(pl().food, Tenths::whole(4), max_food(s_));
        pl().hunger = 0;
        m.set_block(t, BlockId::Plant);
        for (Plant& p : s_.plants)
          if (p.alive && p.floor == pl().floor && p.pos == t) p.age = 0;
        unlock(A::EatPlant);
        break;
      case BlockId::Chest: open_chest(t); break;
      case BlockId::NecromancerVulnerable: hit_boss(t); break;
      default: break;
    }
  }

  void open_chest(Pos t) {
    map().set_block(t, BlockId::Path);
    unlock(A::OpenChest);
    for (const ChestLoot& c : s_.chests) {
      if (c.floor != pl().floor || !(c.pos == t)) continue;
      add_count(inv().arrow, c.loot.arrows);
      add_count(inv().torch, c.loot.torches);
      add_count(inv().book, c.loot.books);
      for (int i = 0; i < kNumPotions; ++i)
        add_count(inv().potions[static_cast<std::size_t>(i)], c.loot.potions[static_cast<std::size_t>(i)]);
      if (c.loot.bow && !pl().bow) {
        pl().bow = true;
        unlock(A::FindBow);
      }
    }
  }

  void hit_boss(Pos t) {
    if (!s_.boss.vulnerable || s_.boss.health == 0) return;
    s_.boss.vulnerable = false;
    s_.boss.health = static_cast<std::uint8_t>(s_.boss.health - 1);
    unlock(A::DamageNecromancer);
    if (s_.boss.health == 0) {
      map().set_block(t, BlockId::Path);
      s_.floor_cleared |= static_cast<std::uint16_t>(1u << kBossFloor);
      unlock(A::DefeatNecromancer);
    } else {
      map().set_block(t, BlockId::Necromancer);
    }
  }

  void melee(Creature& c) {
    const CreatureInfo& info = creature_info(c.kind);
    c.health -= resolve_attack(player_melee_damage(pl()), info.defense);
    if (c.health.raw() > 0) return;
    if (info.type == CreatureType::Passive) {
      add_stat(pl().food, Tenths::whole(info.food), max_food(s_));
      pl().hunger = 0;
      c.alive = false;
      if (info.defeat_achievement) unlock(*info.defeat_achievement);
      return;
    }
    kill_hostile(c);
  }

  void kill_hostile(Creature& c) {
    c.alive = false;
    if (const auto& a = creature_info(c.kind).defeat_achievement) unlock(*a);
    const int f = pl().floor;
    auto& k = s_.kills[static_cast<std::size_t>(f)];
    if (k < 255) ++k;
    if (s_.tier == Tier::Extended && f >= 1 && f < kBossFloor && k >= rules::kFloorClearKills && !s_.cleared(f)) {
      s_.floor_cleared |= static_cast<std::uint16_t>(1u << f);
      FloorMap& m = s_.floors[static_cast<std::size_t>(f)];
      if (m.ladder_down) m.items[m.index(*m.ladder_down)] = ItemId::LadderDown;
    }
  }

  bool placeable(Pos t) const {
    const FloorMap& m = s_.floor();
    return m.in_bounds(t) && creature_at(s_, t) == nullptr && m.item(t) == ItemId::None;
  }

  void place_stone() {
    const Pos t = facing_tile();
    if (inv().stone < 1 || !placeable(t)) return;
    const BlockId b = map().block(t);
    if (!(is_walkable(b) || b == BlockId::Water || b == BlockId::Lava)) return;
    map().set_block(t, BlockId::Stone);
    add_count(inv().stone, -1);
    unlock(A::PlaceStone);
  }

  void place_table() {
    const Pos t = facing_tile();
    if (inv().wood < 1 || !placeable(t) || !is_walkable(map().block(t))) return;
    map().set_block(t, BlockId::CraftingTable);
    add_count(inv().wood, -1);
    unlock(A::PlaceTable);
  }

  void place_furnace() {
    const Pos t = facing_tile();
    if (inv().stone < 1 || !placeable(t) || !is_walkable(map().block(t))) return;
    if (!nearby_block(s_, BlockId::CraftingTable)) return;
    map().set_block(t, BlockId::Furnace);
    add_count(inv().stone, -1);
    unlock(A::PlaceFurnace);
  }

  void place_plant() {
    const Pos t = facing_tile();
    if (inv().sapling < 1 || !placeable(t) || map().block(t) != BlockId::Grass) return;
    auto slot = std::find_if(s_.plants.begin(), s_.plants.end(), [](const Plant& p) { return !p.alive; });
    if (slot == s_.plants.end()) return;
    *slot = Plant{pl().floor, t, 0, true};
    map().set_block(t, BlockId::Plant);
    add_count(inv().sapling, -1);
    unlock(A::PlacePlant);
  }

  void place_torch() {
    const Pos t = facing_tile();
    if (inv().torch < 1 || !placeable(t) || !is_walkable(map().block(t))) return;
    map().items[map().index(t)] = ItemId::Torch;
    add_count(inv().torch, -1);
    unlock(A::PlaceTorch);
  }

  void make_tool(std::uint8_t& tool, int tier, Achievement a) {
    if (!nearby_block(s_, BlockId::CraftingTable)) return;
    if (tier >= 3 && !nearby_block(s_, BlockId::Furnace)) return;
    Inventory& i = inv();
    switch (tier) {
      case 1:
        if (i.wood < 1) return;
        add_count(i.wood, -1);
        break;
      case 2:
        if (i.wood < 1 || i.stone < 1) return;
        add_count(i.wood, -1);
        add_count(i.stone, -1);
        break;
      case 3:
        if (i.wood < 1 || i.coal < 1 || i.iron < 1) return;
        add_count(i.wood, -1);
        add_count(i.coal, -1);
        add_count(i.iron, -1);
        break;
      default: {
        const int diamonds = &tool == &pl().pickaxe ? 3 : 2;
        if (i.wood < 1 || i.diamond < diamonds) return;
        add_count(i.wood, -1);
        add_count(i.diamond, -diamonds);
        break;
      }
    }
    tool = static_cast<std::uint8_t>(std::max<int>(tool, tier));
    unlock(a);
  }

  void make_armour(int tier) {
    if (!nearby_block(s_, BlockId::CraftingTable) || !nearby_block(s_, BlockId::Furnace)) return;
    auto slot = std::find_if(pl().armour.begin(), pl().armour.end(), [&](std::uint8_t a) { return a < tier; });
    if (slot == pl().armour.end()) return;
    Inventory& i = inv();
    if (tier == 1) {
      if (i.iron < 3 || i.coal < 3) return;
      add_count(i.iron, -3);
      add_count(i.coal, -3);
      unlock(A::MakeIronArmour);
    } else {
      if (i.diamond < 3) return;
      add_count(i.diamond, -3);
      unlock(A::MakeDiamondArmour);
    }
    *slot = static_cast<std::uint8_t>(tier);
  }

  void enter_floor(int f, Pos at) {
    pl().floor = static_cast<std::uint8_t>(f);
    pl().pos = at;
    if (!s_.visited(f)) {
      s_.floors_visited |= static_cast<std::uint16_t>(1u << f);
      pl().xp = static_cast<std::uint8_t>(std::min(pl().xp + 1, 255));
      unlock(enter_floor_achievement(f));
    }
  }

  void descend() {
    const FloorMap& m = map();
    if (pl().floor >= kBossFloor || m.item(pl().pos) != ItemId::LadderDown) return;
    const int next = pl().floor + 1;
    const FloorMap& below = s_.floors[static_cast<std::size_t>(next)];
    enter_floor(next, below.ladder_up.value_or(below.spawn));
  }

  void ascend() {
    const FloorMap& m = map();
    if (pl().floor == 0 || m.item(pl().pos) != ItemId::LadderUp) return;
    const int prev = pl().floor - 1;
    const FloorMap& above = s_.floors[static_cast<std::size_t>(prev)];
    enter_floor(prev, above.ladder_down.value_or(above.spawn));
  }

  Projectile* free_lane(ProjectileArray& arr) {
    for (int i = 0; i < arr.capacity; ++i)
      if (!arr.lanes[static_cast<std::size_t>(i)].alive) return &arr.lanes[static_cast<std::size_t>(i)];
    return nullptr;
  }

  static void add_enchant(DamageProfile& d, Enchant e, std::int32_t amount) {
    if (e == Enchant::Fire) d.tenths[1] += amount;
    if (e == Enchant::Ice) d.tenths[2] += amount;
  }

  void shoot_arrow() {
    if (!pl().bow || inv().arrow < 1) return;
    Projectile* p = free_lane(here().player_projectiles);
    if (p == nullptr) return;
    DamageProfile d;
    d.tenths[0] = (3 + pl().dexterity) * 10;
    add_enchant(d, pl().bow_enchant, d.tenths[0] / 2);
    *p = Projectile{ProjectileKind::Arrow, pl().pos, pl().facing, d, true};
    add_count(inv().arrow, -1);
    unlock(A::FireBow);
  }

  void cast(ProjectileKind kind) {
    const bool fire = kind == ProjectileKind::Fireball;
    if (!(fire ? pl().learned_fireball : pl().learned_iceball)) return;
    if (pl().mana < Tenths::whole(rules::kSpellManaCost)) return;
    Projectile* p = free_lane(here().player_projectiles);
    if (p == nullptr) return;
    DamageProfile d;
    d.tenths[fire ? 1 : 2] = (6 + pl().intelligence) * 10;
    *p = Projectile{kind, pl().pos, pl().facing, d, true};
    pl().mana -= Tenths::whole(rules::kSpellManaCost);
    unlock(fire ? A::CastFireball : A::CastIceball);
  }

  void drink_potion(int colour) {
    auto& count = inv().potions[static_cast<std::size_t>(colour)];
    if (count < 1) return;
    add_count(count, -1);
    switch (s_.potion_permutation[static_cast<std::size_t>(colour)]) {
      case PotionEffect::HealthUp: add_stat(pl().health, Tenths::whole(8), max_health(s_)); break;
      case PotionEffect::ManaUp: add_stat(pl().mana, Tenths::whole(8), max_mana(s_)); break;
      case PotionEffect::EnergyUp: add_stat(pl().energy, Tenths::whole(8), max_energy(s_)); break;
      case PotionEffect::HealthDown: damage_player(Tenths::whole(3)); break;
      case PotionEffect::ManaDown: add_stat(pl().mana, Tenths::whole(-3), max_mana(s_)); break;
      case PotionEffect::FoodDrinkUp:
        add_stat(pl().food, Tenths::whole(4), max_food(s_));
        add_stat(pl().drink, Tenths::whole(4), max_drink(s_));
        break;
    }
    unlock(A::DrinkPotion);
  }

  void read_book() {
    if (inv().book < 1 || (pl().learned_fireball && pl().learned_iceball)) return;
    add_count(inv().book, -1);
    bool fire;
    if (pl().learned_fireball) fire = false;
    else if (pl().learned_iceball) fire = true;
    else fire = rng_.below(2) == 0;
    if (fire) {
      pl().learned_fireball = true;
      unlock(A::LearnFireball);
    } else {
      pl().learned_iceball = true;
      unlock(A::LearnIceball);
    }
  }

  /// Element offered by an adjacent enchantment table whose gem and mana the
  /// player can pay, or None.
  Enchant enchant_source() {
    if (pl().mana < Tenths::whole(rules::kEnchantManaCost)) return Enchant::None;
    if (nearby_block(s_, BlockId::EnchantTableFire) && inv().ruby >= 1) return Enchant::Fire;
    if (nearby_block(s_, BlockId::EnchantTableIce) && inv().sapphire >= 1) return Enchant::Ice;
    return Enchant::None;
  }

  void pay_enchant(Enchant e) {
    add_count(e == Enchant::Fire ? inv().ruby : inv().sapphire, -1);
    pl().mana -= Tenths::whole(rules::kEnchantManaCost);
  }

  void enchant_sword() {
    const Enchant e = enchant_source();
    if (e == Enchant::None || pl().sword == 0 || pl().sword_enchant == e) return;
    pay_enchant(e);
    pl().sword_enchant = e;
    unlock(A::EnchantSword);
  }

  void enchant_armour() {
    const Enchant e = enchant_source();
    if (e == Enchant::None) return;
    for (std::size_t i = 0; i < 4; ++i) {
      if (pl().armour[i] == 0 || pl().armour_enchants[i] == e) continue;
      pay_enchant(e);
      pl().armour_enchants[i] = e;
      unlock(A::EnchantArmour);
      return;
    }
  }

  void enchant_bow() {
    const Enchant e = enchant_source();
    if (e == Enchant::None || !pl().bow || pl().bow_enchant == e) return;
    pay_enchant(e);
    pl().bow_enchant = e;
  }

  void level_up(std::uint8_t& attribute) {
    if (pl().xp < 1 || attribute >= 5) return;
    pl().xp = static_cast<std::uint8_t>(pl().xp - 1);
    attribute = static_cast<std::uint8_t>(attribute + 1);
  }

  // -------------------------------------------------------------------------
  // Phase 2

  /// Applies a player projectile to `at`. Returns true when it was absorbed.
  bool player_projectile_hits(const Projectile& p, Pos at) {
    if (Creature* c = creature_at_mut(s_, at)) {
      c->health -= resolve_attack(p.damage, creature_info(c->kind).defense);
      if (c->health.raw() <= 0) {
        if (creature_info(c->kind).type == CreatureType::Passive) c->alive = false;
        else kill_hostile(*c);
      }
      return true;
    }
    if (map().block(at) == BlockId::NecromancerVulnerable) {
      hit_boss(at);
      return true;
    }
    return false;
  }

  // A projectile checks its own tile first: something may have walked into it.
  void advance_projectiles() {
    FloorCreatures& fc = here();
    const FloorMap& m = map();
    for (int i = 0; i < fc.player_projectiles.capacity; ++i) {
      Projectile& p = fc.player_projectiles.lanes[static_cast<std::size_t>(i)];
      if (!p.alive) continue;
      p.alive = false;
      if (creature_at(s_, p.pos) != nullptr && player_projectile_hits(p, p.pos)) continue;
      const Pos next = p.pos + offset(p.dir);
      if (!m.in_bounds(next) || player_projectile_hits(p, next) || is_solid(m.block(next))) continue;
      p.pos = next;
      p.alive = true;
    }
    for (int i = 0; i < fc.enemy_projectiles.capacity; ++i) {
      Projectile& p = fc.enemy_projectiles.lanes[static_cast<std::size_t>(i)];
      if (!p.alive) continue;
      p.alive = false;
      const Pos next = p.pos + offset(p.dir);
      if (p.pos == pl().pos || next == pl().pos) {
        damage_player(resolve_attack(p.damage, player_defense(pl())));
        continue;
      }
      if (creature_at(s_, p.pos) != nullptr) continue;
      if (!m.in_bounds(next) || creature_at(s_, next) != nullptr || is_solid(m.block(next))) continue;
      p.pos = next;
      p.alive = true;
    }
  }

  // -------------------------------------------------------------------------
  // Phase 3

  bool can_move_to(const Creature& c, Pos t) const {
    const FloorMap& m = s_.floor();
    return m.in_bounds(t) && creature_can_enter(creature_info(c.kind).collision, m.block(t)) && !occupied(s_, t);
  }

  void random_move(Creature& c) {
    const Pos t = c.pos + offset(kDirections[rng_.below(4)]);
    if (can_move_to(c, t)) c.pos = t;
  }

  void move_toward(Creature& c, Pos target) {
    const int dr = target.row - c.pos.row;
    const int dc = target.col - c.pos.col;
    const Pos by_row{static_cast<std::int16_t>(c.pos.row + sign(dr)), c.pos.col};
    const Pos by_col{c.pos.row, static_cast<std::int16_t>(c.pos.col + sign(dc))};
    const bool rows_first = std::abs(dr) >= std::abs(dc);
    const Pos first = rows_first ? by_row : by_col;
    const Pos second = rows_first ? by_col : by_row;
    if (!(first == c.pos) && can_move_to(c, first)) c.pos = first;
    else if (!(second == c.pos) && can_move_to(c, second)) c.pos = second;
  }

  bool clear_line(Pos from, Pos to) const {
    const FloorMap& m = s_.floor();
    const Pos step{static_cast<std::int16_t>(sign(to.row - from.row)), static_cast<std::int16_t>(sign(to.col - from.col))};
    for (Pos p = from + step; !(p == to); p = p + step)
      if (is_solid(m.block(p))) return false;
    return true;
  }

  void creatures_act() {
    FloorCreatures& fc = here();
    const Pos me = pl().pos;
    for_each_live(fc, [&](Creature& c) {
      const CreatureInfo& info = creature_info(c.kind);
      const bool ready = c.cooldown == 0;
      if (!ready) --c.cooldown;
      const int near = chebyshev(c.pos, me);
      switch (info.type) {
        case CreatureType::Melee:
          if (manhattan(c.pos, me) == 1) {
            if (ready) {
              damage_player(resolve_attack(info.damage, player_defense(pl())));
              c.cooldown = rules::kAttackCooldown;
            }
          } else if (near <= rules::kAggroRadius && rng_.chance(rules::kChaseProbability)) {
            move_toward(c, me);
          } else {
            random_move(c);
          }
          break;
        case CreatureType::Ranged: {
          const bool aligned = c.pos.row == me.row || c.pos.col == me.col;
          const int dist = manhattan(c.pos, me);
          if (ready && aligned && dist <= rules::kRangedRange && clear_line(c.pos, me) && fire_at_player(c)) {
            c.cooldown = rules::kAttackCooldown;
          } else if (near <= rules::kAggroRadius && dist > 3 && rng_.chance(rules::kChaseProbability)) {
            move_toward(c, me);
          } else {
            random_move(c);
          }
          break;
        }
        case CreatureType::Passive:
          if (rng_.chance(0.5)) random_move(c);
          break;
      }
    });
  }

  bool fire_at_player(const Creature& c) {
    const Pos me = pl().pos;
    Direction d;
    if (me.row == c.pos.row) d = me.col < c.pos.col ? Direction::Left : Direction::Right;
    else d = me.row < c.pos.row ? Direction::Up : Direction::Down;
    const CreatureInfo& info = creature_info(c.kind);
    const Pos start = c.pos + offset(d);
    if (start == me) {
      damage_player(resolve_attack(info.damage, player_defense(pl())));
      return true;
    }
    if (is_solid(map().block(start)) || creature_at(s_, start) != nullptr) return false;
    Projectile* p = free_lane(here().enemy_projectiles);
    if (p == nullptr) return false;
    *p = Projectile{info.projectile, start, d, info.damage, true};
    return true;
  }

  // -------------------------------------------------------------------------
  // Phase 4

  void survival() {
    Player& p = pl();
    const bool classic = s_.tier == Tier::Classic;
    const int dex = classic ? 1 : p.dexterity;
    const int inc = p.sleeping ? 1 : 2;

    p.hunger = static_cast<std::int16_t>(p.hunger + inc);
    if (p.hunger >= 2 * rules::kHungerPeriod * dex) {
      p.hunger = 0;
      add_stat(p.food, Tenths::whole(-1), max_food(s_));
    }
    p.thirst = static_cast<std::int16_t>(p.thirst + inc);
    if (p.thirst >= 2 * rules::kThirstPeriod * dex) {
      p.thirst = 0;
      add_stat(p.drink, Tenths::whole(-1), max_drink(s_));
    }
    if (p.sleeping) {
      p.fatigue = static_cast<std::int16_t>(std::min<int>(p.fatigue, 0) - 2);
      if (p.fatigue <= -2 * rules::kSleepRecoverPeriod) {
        p.fatigue = 0;
        add_stat(p.energy, Tenths::whole(1), max_energy(s_));
      }
    } else {
      p.fatigue = static_cast<std::int16_t>(p.fatigue + 2);
      if (p.fatigue >= 2 * rules::kFatiguePeriod * dex) {
        p.fatigue = 0;
        add_stat(p.energy, Tenths::whole(-1), max_energy(s_));
      }
    }

    const int depleted = (p.food.raw() <= 0) + (p.drink.raw() <= 0) + (p.energy.raw() <= 0 && !p.sleeping);
    if (depleted == 0) {
      p.recover = static_cast<std::int16_t>(p.recover + (p.sleeping || p.resting ? 4 : 2));
      if (p.recover >= 2 * rules::kRecoverPeriod) {
        p.recover = 0;
        add_stat(p.health, Tenths::whole(1), max_health(s_));
      }
    } else {
      p.recover = static_cast<std::int16_t>(p.recover - depleted * (p.sleeping ? 1 : 2));
      if (p.recover <= -2 * rules::kDepletionPeriod) {
        p.recover = 0;
        damage_player(Tenths::whole(1));
      }
    }

    if (!classic) {
      p.mana_clock = static_cast<std::int16_t>(p.mana_clock + 2);
      if (p.mana_clock >= 2 * rules::kManaPeriod) {
        p.mana_clock = 0;
        add_stat(p.mana, Tenths::whole(1), max_mana(s_));
      }
    }

    if (p.sleeping && p.energy >= max_energy(s_)) {
      p.sleeping = false;
      unlock(A::WakeUp);
    }
    if (p.resting && p.health >= max_health(s_)) p.resting = false;
  }

  // -------------------------------------------------------------------------
  // Phase 5

  bool spawn_tile_ok(CreatureKind kind, Pos t, int floor) const {
    const FloorMap& m = s_.floor();
    if (!m.in_bounds(t) || occupied(s_, t)) return false;
    const BlockId b = m.block(t);
    if (floor == 0) {
      switch (kind) {
        case CreatureKind::Zombie:
        case CreatureKind::Cow: return b == BlockId::Grass;
        case CreatureKind::Skeleton: return b == BlockId::Path;
        default: break;
      }
    }
    return creature_can_enter(creature_info(kind).collision, b);
  }

  void place_creature(CreatureArray& arr, CreatureKind kind, Pos at) {
    for (int i = 0; i < arr.capacity; ++i) {
      Creature& c = arr.lanes[static_cast<std::size_t>(i)];
      if (c.alive) continue;
      c = Creature{kind, at, Tenths::whole(creature_info(kind).health), 0, true};
      return;
    }
  }

  double spawn_chance(Slot slot, int floor) const {
    if (floor == 0) {
      switch (slot) {
        case Slot::Melee: return 0.005 + 0.05 * (1.0 - s_.daylight);
        case Slot::Ranged: return 0.05;
        case Slot::Passive: return 0.01;
      }
    }
    return slot == Slot::Passive ? 0.02 : 0.05;
  }

  void spawn_and_despawn() {
    const int f = pl().floor;
    FloorCreatures& fc = here();
    if (f == kBossFloor) {
      boss_logic();
      return;
    }
    const Pos me = pl().pos;
    for_each_live(fc, [&](Creature& c) {
      if (chebyshev(c.pos, me) > rules::kDespawnRadius) c.alive = false;
    });
    const auto& kinds = floor_kinds().table[static_cast<std::size_t>(f)];
    for (Slot slot : {Slot::Melee, Slot::Ranged, Slot::Passive}) {
      const KindList& list = kinds[static_cast<std::size_t>(slot)];
      CreatureArray& arr = slot_array(fc, slot);
      if (list.count == 0 || arr.live_count() >= arr.capacity) continue;
      if (!rng_.chance(spawn_chance(slot, f))) continue;
      const CreatureKind kind = list.count == 1 ? list.kinds[0] : list.kinds[rng_.below(list.count)];
      constexpr int span = 2 * rules::kSpawnMaxDistance + 1;
      const Pos t{static_cast<std::int16_t>(me.row + static_cast<int>(rng_.below(span)) - rules::kSpawnMaxDistance),
                  static_cast<std::int16_t>(me.col + static_cast<int>(rng_.below(span)) - rules::kSpawnMaxDistance)};
      if (chebyshev(t, me) < rules::kSpawnMinDistance || !spawn_tile_ok(kind, t, f)) continue;
      place_creature(arr, kind, t);
    }
  }

  void boss_logic() {
    BossState& b = s_.boss;
    if (b.health == 0 || b.vulnerable) return;
    if (live_creatures(here()) > 0) return;
    const int hits = kBossWaves - b.health;
    FloorMap& m = map();
    if (b.wave == hits) {
      if (b.wave >= kBossWaves) return;
      ++b.wave;
      summon_wave(b.wave - 1);
    } else {
      b.vulnerable = true;
      for (BlockId& blk : m.blocks)
        if (blk == BlockId::Necromancer) blk = BlockId::NecromancerVulnerable;
    }
  }

  void summon_wave(int source_floor) {
    FloorCreatures& fc = here();
    const auto& kinds = floor_kinds().table[static_cast<std::size_t>(source_floor)];
    const FloorMap& m = map();
    for (Slot slot : {Slot::Melee, Slot::Ranged}) {
      const KindList& list = kinds[static_cast<std::size_t>(slot)];
      CreatureArray& arr = slot_array(fc, slot);
      if (list.count == 0) continue;
      const int count = (arr.capacity + 1) / 2;
      for (int n = 0; n < count; ++n) {
        const CreatureKind kind = list.count == 1 ? list.kinds[0] : list.kinds[rng_.below(list.count)];
        for (int attempt = 0; attempt < 32; ++attempt) {
          const Pos t{static_cast<std::int16_t>(rng_.below(static_cast<std::uint32_t>(m.rows))),
                      static_cast<std::int16_t>(rng_.below(static_cast<std::uint32_t>(m.cols)))};
          if (chebyshev(t, pl().pos) < 2 || occupied(s_, t)) continue;
          if (!creature_can_enter(creature_info(kind).collision, m.block(t))) continue;
          place_creature(arr, kind, t);
          break;
        }
      }
    }
  }

  // -------------------------------------------------------------------------
  // Phase 6

  void plants_and_clock() {
    for (Plant& p : s_.plants) {
      if (!p.alive) continue;
      FloorMap& m = s_.floors[p.floor];
      const BlockId b = m.block(p.pos);
      if (b != BlockId::Plant && b != BlockId::RipePlant) {
        p.alive = false;
        continue;
      }
      if (p.age < 0xFFFF) ++p.age;
      if (b == BlockId::Plant && p.age >= rules::kPlantRipeAge) m.set_block(p.pos, BlockId::RipePlant);
    }
    ++s_.time;
    s_.day_phase = static_cast<float>(s_.time % rules::kDayLength) / static_cast<float>(rules::kDayLength);
    s_.daylight = daylight_at(s_.time);
  }

  // -------------------------------------------------------------------------

  void canonicalize() {
    for (FloorCreatures& fc : s_.creatures) {
      for (CreatureArray* arr : {&fc.melee, &fc.ranged, &fc.passive})
        for (Creature& c : arr->lanes)
          if (!c.alive) c = Creature{};
      for (ProjectileArray* arr : {&fc.player_projectiles, &fc.enemy_projectiles})
        for (Projectile& p : arr->lanes)
          if (!p.alive) p = Projectile{};
    }
    for (Plant& p : s_.plants)
      if (!p.alive) p = Plant{};
  }
};

}  // namespace

// ---------------------------------------------------------------------------

Tenths resolve_attack(const DamageProfile& damage, const DefenseProfile& defense) {
  std::int64_t sum = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    const std::int64_t d = std::max<std::int32_t>(0, damage.tenths[c]);
    const std::int64_t def = std::clamp<std::int32_t>(defense.percent[c], 0, 100);
    sum += d * (100 - def);
  }
  return Tenths(static_cast<std::int32_t>((sum + 50) / 100));
}

int achievement_value(Tier t, const AchievementSet& set) {
  if (set.none()) return 0;
  int v = 0;
  for (int i = 0; i < num_achievements(t); ++i)
    if (set.test(static_cast<std::size_t>(i))) v += achievement_reward(t, static_cast<Achievement>(i));
  return v;
}

float daylight_at(std::uint32_t time) {
  const double progress = static_cast<double>(time % rules::kDayLength) / rules::kDayLength + 0.3;
  const double c = std::abs(std::cos(std::numbers::pi * progress));
  return static_cast<float>(1.0 - c * c * c);
}

float tile_light(const GameState& s, Pos p) {
  const FloorMap& m = s.floor();
  if (!m.in_bounds(p) || m.light.empty()) return 0.0f;
  float light = m.light[m.index(p)];
  if (s.player.floor == 0) light *= s.daylight;
  constexpr int r = rules::kTorchRadius;
  for (int dr = -r; dr <= r; ++dr)
    for (int dc = -r; dc <= r; ++dc) {
      const Pos q{static_cast<std::int16_t>(p.row + dr), static_cast<std::int16_t>(p.col + dc)};
      if (m.item(q) != ItemId::Torch) continue;
      const float d = std::sqrt(static_cast<float>(dr * dr + dc * dc));
      light = std::max(light, 1.0f - d / static_cast<float>(r + 1));
    }
  return std::min(light, 1.0f);
}

DefenseProfile player_defense(const Player& p) {
  DefenseProfile d;
  for (std::size_t i = 0; i < 4; ++i) {
    if (p.armour[i] == 0) continue;
    d.percent[0] += 10 * p.armour[i];
    if (p.armour_enchants[i] == Enchant::Fire) d.percent[1] += 20;
    if (p.armour_enchants[i] == Enchant::Ice) d.percent[2] += 20;
  }
  for (auto& v : d.percent) v = std::min(v, 80);
  return d;
}

DamageProfile player_melee_damage(const Player& p) {
  static constexpr std::array<int, 5> kBase = {1, 2, 3, 5, 8};
  DamageProfile d;
  d.tenths[0] = kBase[std::min<std::size_t>(p.sword, 4)] * (1 + p.strength) * 5;
  const std::int32_t extra = d.tenths[0] / 2;
  if (p.sword_enchant == Enchant::Fire) d.tenths[1] = extra;
  if (p.sword_enchant == Enchant::Ice) d.tenths[2] = extra;
  return d;
}

const Creature* creature_at(const GameState& s, Pos p) {
  const FloorCreatures& fc = s.creatures[s.player.floor];
  for (const CreatureArray* arr : {&fc.melee, &fc.ranged, &fc.passive})
    for (int i = 0; i < arr->capacity; ++i)
      if (const Creature& c = arr->lanes[static_cast<std::size_t>(i)]; c.alive && c.pos == p) return &c;
  return nullptr;
}

bool action_valid(Tier t, int action) { return action >= 0 && action < num_actions(t); }

GameState reset(const World& world, Tier tier, const RngStream& rng, const EngineConfig& config) {
  if (world.tier != tier) throw std::invalid_argument("reset: world was generated for the other tier");
  const std::size_t expected = tier == Tier::Classic ? 1 : kNumFloors;
  if (world.floors.size() != expected) throw std::invalid_argument("reset: world has the wrong number of floors");
  if (config.max_episode_length == 0) throw std::invalid_argument("reset: max_episode_length must be positive");

  GameState s;
  s.tier = tier;
  s.max_episode_length = config.max_episode_length;
  s.level_id = world.level_id;
  s.floors = world.floors;
  s.potion_permutation = world.potion_permutation;
  s.chests = world.chests;
  if (tier == Tier::Extended) {
    for (int f = 1; f < kBossFloor; ++f) {
      FloorMap& m = s.floors[static_cast<std::size_t>(f)];
      if (m.ladder_down) m.items[m.index(*m.ladder_down)] = ItemId::LadderDownBlocked;
    }
  }

  s.player.pos = s.floors[0].spawn;
  s.player.health = max_health(s);
  s.player.food = max_food(s);
  s.player.drink = max_drink(s);
  s.player.energy = max_energy(s);
  s.player.mana = max_mana(s);

  const int floors = tier == Tier::Classic ? 1 : kNumFloors;
  for (int f = 0; f < floors; ++f) {
    FloorCreatures& fc = s.creatures[static_cast<std::size_t>(f)];
    fc.melee.capacity = 3;
    fc.ranged.capacity = 2;
    fc.passive.capacity = 3;
    fc.player_projectiles.capacity = tier == Tier::Classic ? 0 : 3;
    fc.enemy_projectiles.capacity = 3;
  }
  s.daylight = daylight_at(0);
  s.rng = rng;
  return s;
}

StepResult step_inplace(GameState& state, Action action) {
  if (state.done) throw EpisodeOver("step: episode already finished");
  if (!action_valid(state.tier, to_int(action))) throw std::invalid_argument("step: action not in this tier's action set");
  return Step(state).run(action);
}

StepOutcome step(const GameState& state, int action) {
  if (!action_valid(state.tier, action)) throw std::invalid_argument("step: action not in this tier's action set");
  if (state.done) throw EpisodeOver("step: episode already finished");
  StepOutcome out{state, 0.0, false, {}, {}};
  const StepResult r = Step(out.state).run(static_cast<Action>(action));
  out.reward = r.reward;
  out.done = r.done;
  for (int i = 0; i < kNumExtendedAchievements; ++i)
    if (r.unlocked.test(static_cast<std::size_t>(i))) out.newly_unlocked.push_back(static_cast<Achievement>(i));
  out.info = {r.time, r.floor, r.health_delta};
  return out;
}

StepOutcome step(const GameState& state, Action action) { return step(state, to_int(action)); }

}  // namespace delve
