#include "delve/obs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "delve/engine.hpp"

namespace delve {

namespace {

// ---------------------------------------------------------------------------
// Layout

SymbolicLayout build_layout(Tier t) {
  SymbolicLayout L{};
  L.tier = t;
  const bool classic = t == Tier::Classic;
  L.view_rows = classic ? kClassicViewRows : kExtendedViewRows;
  L.view_cols = classic ? kClassicViewCols : kExtendedViewCols;
  L.block_group = classic ? kClassicBlockGroup : kExtendedBlockGroup;
  L.item_group = classic ? 0 : kExtendedItemGroup;
  L.creature_group = classic ? kClassicCreatureGroup : kExtendedCreatureGroup;
  L.has_light = !classic;
  L.per_tile = L.block_group + L.item_group + L.creature_group + (L.has_light ? 1 : 0);
  L.map_len = static_cast<std::size_t>(L.view_rows * L.view_cols) * L.per_tile;
  L.inventory_offset = L.map_len;

  std::size_t at = L.map_len;
  const auto add = [&](std::string name, std::size_t len, Scaling sc) {
    L.inventory.push_back({std::move(name), at, len, sc});
    at += len;
  };
  if (classic) {
    for (const char* n : {"health", "food", "drink", "energy"}) add(n, 1, Scaling::Tenth);
    for (const char* n : {"sapling", "wood", "stone", "coal", "iron", "diamond"}) add(n, 1, Scaling::SqrtTenth);
    for (const char* n : {"wood_pickaxe", "stone_pickaxe", "iron_pickaxe", "wood_sword", "stone_sword", "iron_sword"})
      add(n, 1, Scaling::Indicator);
    add("direction", 4, Scaling::OneHot);
    add("daylight", 1, Scaling::Unit);
    add("sleeping", 1, Scaling::Indicator);
  } else {
    for (const char* n : {"wood", "stone", "coal", "iron", "diamond", "sapphire", "ruby", "sapling", "torch", "arrow"})
      add(n, 1, Scaling::SqrtTenth);
    for (const char* n : {"potion_red", "potion_green", "potion_blue", "potion_pink", "potion_cyan", "potion_yellow"})
      add(n, 1, Scaling::SqrtTenth);
    add("book", 1, Scaling::Half);
    add("pickaxe", 1, Scaling::Quarter);
    add("sword", 1, Scaling::Quarter);
    add("sword_enchantment", 1, Scaling::Enchant);
    add("bow", 1, Scaling::Indicator);
    for (int i = 0; i < 4; ++i) add("armour_" + std::to_string(i), 1, Scaling::Half);
    for (int i = 0; i < 4; ++i) add("armour_enchantment_" + std::to_string(i), 1, Scaling::Enchant);
    for (const char* n : {"health", "food", "drink", "energy", "mana", "xp", "dexterity", "strength", "intelligence"})
      add(n, 1, Scaling::Tenth);
    add("direction", 4, Scaling::OneHot);
    add("daylight", 1, Scaling::Unit);
    for (const char* n : {"sleeping", "resting", "learned_fireball", "learned_iceball"}) add(n, 1, Scaling::Indicator);
    add("floor", 1, Scaling::Tenth);
    add("floor_cleared", 1, Scaling::Indicator);
    add("boss_vulnerable", 1, Scaling::Indicator);
    add("padding", kExtendedInventorySection - (at - L.map_len), Scaling::Padding);
  }
  L.total_len = at;
  return L;
}

std::string_view scaling_name(Scaling s) {
  switch (s) {
    case Scaling::OneHot: return "onehot";
    case Scaling::Unit: return "x";
    case Scaling::SqrtTenth: return "sqrt(n)/10";
    case Scaling::Half: return "n/2";
    case Scaling::Quarter: return "n/4";
    case Scaling::Tenth: return "x/10";
    case Scaling::Indicator: return "indicator";
    case Scaling::Enchant: return "fire=1,ice=2";
    case Scaling::Padding: return "zero";
  }
  return "";
}

// ---------------------------------------------------------------------------
// View

constexpr int kMaxViewTiles = kExtendedViewRows * kExtendedViewCols;

int block_slot(Tier t, BlockId b) {
  if (t == Tier::Extended) return to_int(b);
  return b == BlockId::Invalid ? 0 : to_int(b) - 1;
}

/// Fills `out` (view_rows * view_cols entries) with the player's view.
void fill_view(const GameState& s, std::span<TileView> out) {
  const SymbolicLayout& L = symbolic_layout(s.tier);
  const FloorMap& m = s.floor();
  const int r0 = s.player.pos.row - L.view_rows / 2;
  const int c0 = s.player.pos.col - L.view_cols / 2;
  const bool extended = s.tier == Tier::Extended;

  for (int vr = 0; vr < L.view_rows; ++vr)
    for (int vc = 0; vc < L.view_cols; ++vc) {
      const Pos p{static_cast<std::int16_t>(r0 + vr), static_cast<std::int16_t>(c0 + vc)};
      TileView& t = out[static_cast<std::size_t>(vr * L.view_cols + vc)];
      t = TileView{m.block(p), m.item(p), 0, 1.0f, true};
      if (extended) t.light = m.in_bounds(p) ? m.light[m.index(p)] * (s.player.floor == 0 ? s.daylight : 1.0f) : 0.0f;
    }

  const auto at = [&](Pos p) -> TileView* {
    const int vr = p.row - r0;
    const int vc = p.col - c0;
    if (vr < 0 || vc < 0 || vr >= L.view_rows || vc >= L.view_cols) return nullptr;
    return &out[static_cast<std::size_t>(vr * L.view_cols + vc)];
  };

  const FloorCreatures& fc = s.creatures[s.player.floor];
  for (const ProjectileArray* arr : {&fc.player_projectiles, &fc.enemy_projectiles})
    for (int i = 0; i < arr->capacity; ++i)
      if (const Projectile& p = arr->lanes[static_cast<std::size_t>(i)]; p.alive)
        if (TileView* t = at(p.pos)) t->creature = projectile_slot(s.tier, p.kind);
  for (const CreatureArray* arr : {&fc.melee, &fc.ranged, &fc.passive})
    for (int i = 0; i < arr->capacity; ++i)
      if (const Creature& c = arr->lanes[static_cast<std::size_t>(i)]; c.alive)
        if (TileView* t = at(c.pos)) t->creature = creature_slot(s.tier, c.kind);

  if (!extended) return;

  // Torch light, identical arithmetic to tile_light.
  constexpr int r = rules::kTorchRadius;
  for (int row = r0 - r; row < r0 + L.view_rows + r; ++row)
    for (int col = c0 - r; col < c0 + L.view_cols + r; ++col) {
      const Pos q{static_cast<std::int16_t>(row), static_cast<std::int16_t>(col)};
      if (m.item(q) != ItemId::Torch) continue;
      for (int dr = -r; dr <= r; ++dr)
        for (int dc = -r; dc <= r; ++dc) {
          TileView* t = at(Pos{static_cast<std::int16_t>(row - dr), static_cast<std::int16_t>(col - dc)});
          if (t == nullptr || t->block == BlockId::OutOfBounds) continue;
          const float d = std::sqrt(static_cast<float>(dr * dr + dc * dc));
          t->light = std::max(t->light, 1.0f - d / static_cast<float>(r + 1));
        }
    }
  for (int i = 0; i < L.view_rows * L.view_cols; ++i) {
    TileView& t = out[static_cast<std::size_t>(i)];
    t.light = std::min(t.light, 1.0f);
    if (t.light < rules::kLightThreshold || s.player.sleeping) t = TileView{BlockId::Darkness, ItemId::None, 0, t.light, false};
  }
}

float sqrt_tenth(int n) { return static_cast<float>(std::sqrt(static_cast<double>(n)) / 10.0); }
float tenths_obs(Tenths t) { return static_cast<float>(t.raw() / 100.0); }
float enchant_obs(Enchant e) { return static_cast<float>(to_int(e)); }

int from_sqrt_tenth(float v) { return static_cast<int>(std::lround(static_cast<double>(v) * 10.0 * static_cast<double>(v) * 10.0)); }
Tenths from_tenths_obs(float v) { return Tenths(static_cast<std::int32_t>(std::lround(static_cast<double>(v) * 100.0))); }

std::uint8_t count_of(float v) { return static_cast<std::uint8_t>(std::clamp(from_sqrt_tenth(v), 0, 255)); }

}  // namespace

const LayoutField& SymbolicLayout::field(std::string_view name) const {
  for (const LayoutField& f : inventory)
    if (f.name == name) return f;
  throw std::out_of_range("layout has no field named " + std::string(name));
}

const SymbolicLayout& symbolic_layout(Tier t) {
  static const SymbolicLayout kClassic = build_layout(Tier::Classic);
  static const SymbolicLayout kExtended = build_layout(Tier::Extended);
  return t == Tier::Classic ? kClassic : kExtended;
}

nlohmann::json layout_manifest(Tier t) {
  const SymbolicLayout& L = symbolic_layout(t);
  nlohmann::json j;
  j["version"] = kLayoutVersion;
  j["tier"] = t == Tier::Classic ? "classic" : "extended";
  j["total_len"] = L.total_len;
  j["map"] = {{"offset", 0},
              {"rows", L.view_rows},
              {"cols", L.view_cols},
              {"order", "row-major, player at the centre tile"},
              {"per_tile", L.per_tile}};

  nlohmann::json groups = nlohmann::json::array();
  std::size_t off = 0;
  const auto group = [&](const char* name, std::size_t len, nlohmann::json values) {
    groups.push_back({{"name", name}, {"offset", off}, {"length", len}, {"values", std::move(values)}});
    off += len;
  };
  nlohmann::json blocks = nlohmann::json::array();
  for (int b = t == Tier::Classic ? 1 : 0; b < static_cast<int>(L.block_group) + (t == Tier::Classic ? 1 : 0); ++b)
    blocks.push_back(block_name(static_cast<BlockId>(b)));
  group("block", L.block_group, blocks);
  if (L.item_group > 0) {
    nlohmann::json items = nlohmann::json::array();
    for (int i = 0; i < kNumItems; ++i) items.push_back(item_name(static_cast<ItemId>(i)));
    group("item", L.item_group, items);
  }
  nlohmann::json creatures = nlohmann::json::array();
  creatures.push_back("none");
  if (t == Tier::Classic) {
    for (const char* n : {"zombie", "cow", "skeleton", "arrow"}) creatures.push_back(n);
  } else {
    for (int k = 0; k < kNumCreatureKinds; ++k) creatures.push_back(creature_name(static_cast<CreatureKind>(k)));
    for (int k = 0; k < kNumProjectileKinds; ++k) creatures.push_back(projectile_name(static_cast<ProjectileKind>(k)));
    while (creatures.size() < L.creature_group) creatures.push_back("reserved");
  }
  group("creature", L.creature_group, creatures);
  if (L.has_light) group("light", 1, nlohmann::json::array({"x"}));
  j["map"]["tile_groups"] = groups;
  j["map"]["mask"] = L.has_light ? "block, item and creature groups are zero when light < 0.05 or the player sleeps"
                                 : "none";

  nlohmann::json inv = nlohmann::json::array();
  for (const LayoutField& f : L.inventory)
    inv.push_back({{"name", f.name}, {"offset", f.offset}, {"length", f.length}, {"scaling", scaling_name(f.scaling)}});
  j["inventory"] = {{"offset", L.inventory_offset}, {"length", L.total_len - L.inventory_offset}, {"fields", inv}};
  return j;
}

std::uint64_t layout_hash(Tier t) {
  const std::string dump = layout_manifest(t).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int creature_slot(Tier t, CreatureKind k) {
  if (t == Tier::Extended) return 1 + to_int(k);
  switch (k) {
    case CreatureKind::Zombie: return 1;
    case CreatureKind::Cow: return 2;
    case CreatureKind::Skeleton: return 3;
    default: throw std::invalid_argument("creature does not exist in the classic tier");
  }
}

int projectile_slot(Tier t, ProjectileKind k) {
  if (t == Tier::Extended) return 1 + kNumCreatureKinds + to_int(k);
  if (k == ProjectileKind::Arrow || k == ProjectileKind::EnemyArrow) return 4;
  throw std::invalid_argument("projectile does not exist in the classic tier");
}

std::vector<TileView> view_tiles(const GameState& s) {
  const SymbolicLayout& L = symbolic_layout(s.tier);
  std::vector<TileView> v(static_cast<std::size_t>(L.view_rows * L.view_cols));
  fill_view(s, v);
  return v;
}

std::vector<float> encode_symbolic(const GameState& s) {
  std::vector<float> out(symbolic_layout(s.tier).total_len);
  encode_symbolic_into(s, out);
  return out;
}

void encode_symbolic_into(const GameState& s, std::span<float> out) {
  const SymbolicLayout& L = symbolic_layout(s.tier);
  if (out.size() != L.total_len) throw std::invalid_argument("encode_symbolic_into: output has the wrong length");
  std::fill(out.begin(), out.end(), 0.0f);

  std::array<TileView, kMaxViewTiles> view;
  const int n = L.view_rows * L.view_cols;
  fill_view(s, std::span(view.data(), static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    const TileView& t = view[static_cast<std::size_t>(i)];
    float* tile = out.data() + static_cast<std::size_t>(i) * L.per_tile;
    if (L.has_light) tile[L.per_tile - 1] = t.light;
    if (!t.visible) continue;
    tile[block_slot(s.tier, t.block)] = 1.0f;
    if (L.item_group > 0) tile[L.block_group + static_cast<std::size_t>(t.item)] = 1.0f;
    tile[L.block_group + L.item_group + static_cast<std::size_t>(t.creature)] = 1.0f;
  }

  const Player& p = s.player;
  const Inventory& inv = s.inventory;
  float* o = out.data() + L.inventory_offset;
  const auto put = [&](float v) { *o++ = v; };
  const auto direction = [&] {
    o[to_int(p.facing)] = 1.0f;
    o += 4;
  };
  if (s.tier == Tier::Classic) {
    for (Tenths v : {p.health, p.food, p.drink, p.energy}) put(tenths_obs(v));
    for (int c : {inv.sapling, inv.wood, inv.stone, inv.coal, inv.iron, inv.diamond}) put(sqrt_tenth(c));
    for (int tier = 1; tier <= 3; ++tier) put(p.pickaxe >= tier ? 1.0f : 0.0f);
    for (int tier = 1; tier <= 3; ++tier) put(p.sword >= tier ? 1.0f : 0.0f);
    direction();
    put(s.daylight);
    put(p.sleeping ? 1.0f : 0.0f);
    return;
  }
  for (int c : {inv.wood, inv.stone, inv.coal, inv.iron, inv.diamond, inv.sapphire, inv.ruby, inv.sapling, inv.torch,
                inv.arrow})
    put(sqrt_tenth(c));
  for (std::uint8_t c : inv.potions) put(sqrt_tenth(c));
  put(static_cast<float>(inv.book) / 2.0f);
  put(static_cast<float>(p.pickaxe) / 4.0f);
  put(static_cast<float>(p.sword) / 4.0f);
  put(enchant_obs(p.sword_enchant));
  put(p.bow ? 1.0f : 0.0f);
  for (std::uint8_t a : p.armour) put(static_cast<float>(a) / 2.0f);
  for (Enchant e : p.armour_enchants) put(enchant_obs(e));
  for (Tenths v : {p.health, p.food, p.drink, p.energy, p.mana}) put(tenths_obs(v));
  for (int v : {p.xp, p.dexterity, p.strength, p.intelligence}) put(static_cast<float>(v) / 10.0f);
  direction();
  put(s.daylight);
  for (bool b : {p.sleeping, p.resting, p.learned_fireball, p.learned_iceball}) put(b ? 1.0f : 0.0f);
  put(static_cast<float>(p.floor) / 10.0f);
  put(s.cleared(p.floor) ? 1.0f : 0.0f);
  put(s.boss.vulnerable ? 1.0f : 0.0f);
}

DecodedObs decode_symbolic(Tier t, std::span<const float> obs) {
  const SymbolicLayout& L = symbolic_layout(t);
  if (obs.size() != L.total_len) throw std::invalid_argument("decode_symbolic: wrong observation length");
  DecodedObs d;
  const int n = L.view_rows * L.view_cols;
  d.tiles.resize(static_cast<std::size_t>(n));

  const auto one_hot = [](const float* g, std::size_t len) -> int {
    int idx = -1;
    for (std::size_t i = 0; i < len; ++i) {
      if (g[i] == 0.0f) continue;
      if (g[i] != 1.0f || idx >= 0) throw std::invalid_argument("decode_symbolic: malformed one-hot group");
      idx = static_cast<int>(i);
    }
    return idx;
  };

  for (int i = 0; i < n; ++i) {
    const float* tile = obs.data() + static_cast<std::size_t>(i) * L.per_tile;
    TileView& v = d.tiles[static_cast<std::size_t>(i)];
    const float light = L.has_light ? tile[L.per_tile - 1] : 1.0f;
    const int b = one_hot(tile, L.block_group);
    const int item = L.item_group > 0 ? one_hot(tile + L.block_group, L.item_group) : 0;
    const int c = one_hot(tile + L.block_group + L.item_group, L.creature_group);
    if (b < 0 && item <= 0 && c < 0) {
      v = TileView{BlockId::Darkness, ItemId::None, 0, light, false};
      continue;
    }
    if (b < 0 || item < 0 || c < 0) throw std::invalid_argument("decode_symbolic: partially masked tile");
    v = TileView{static_cast<BlockId>(t == Tier::Classic ? b + 1 : b), static_cast<ItemId>(item), c, light, true};
  }

  const auto val = [&](std::string_view name) { return obs[L.field(name).offset]; };
  Inventory& inv = d.inventory;
  d.stats[0] = from_tenths_obs(val("health"));
  d.stats[1] = from_tenths_obs(val("food"));
  d.stats[2] = from_tenths_obs(val("drink"));
  d.stats[3] = from_tenths_obs(val("energy"));
  inv.sapling = count_of(val("sapling"));
  inv.wood = count_of(val("wood"));
  inv.stone = count_of(val("stone"));
  inv.coal = count_of(val("coal"));
  inv.iron = count_of(val("iron"));
  inv.diamond = count_of(val("diamond"));
  const LayoutField& dir = L.field("direction");
  d.facing = static_cast<Direction>(std::max(0, one_hot(obs.data() + dir.offset, 4)));
  d.sleeping = val("sleeping") == 1.0f;

  if (t == Tier::Classic) {
    d.pickaxe = static_cast<int>(val("wood_pickaxe") + val("stone_pickaxe") + val("iron_pickaxe"));
    d.sword = static_cast<int>(val("wood_sword") + val("stone_sword") + val("iron_sword"));
    return d;
  }
  d.stats[4] = from_tenths_obs(val("mana"));
  inv.sapphire = count_of(val("sapphire"));
  inv.ruby = count_of(val("ruby"));
  inv.torch = count_of(val("torch"));
  inv.arrow = count_of(val("arrow"));
  inv.book = static_cast<std::uint8_t>(std::lround(val("book") * 2.0f));
  static constexpr std::array<std::string_view, kNumPotions> kPotions = {
      "potion_red", "potion_green", "potion_blue", "potion_pink", "potion_cyan", "potion_yellow"};
  for (std::size_t i = 0; i < kNumPotions; ++i) inv.potions[i] = count_of(val(kPotions[i]));
  d.pickaxe = static_cast<int>(std::lround(val("pickaxe") * 4.0f));
  d.sword = static_cast<int>(std::lround(val("sword") * 4.0f));
  d.floor = static_cast<int>(std::lround(val("floor") * 10.0f));
  return d;
}

// ---------------------------------------------------------------------------
// Text

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string fmt_tenths(Tenths t) {
  const int r = t.raw();
  if (r % 10 == 0) return std::to_string(r / 10);
  return std::to_string(r / 10) + "." + std::to_string(std::abs(r % 10));
}

std::string_view creature_text(Tier t, int slot) {
  if (slot == 0) return "none";
  if (t == Tier::Classic) {
    static constexpr std::array<std::string_view, 5> kNames = {"none", "zombie", "cow", "skeleton", "arrow"};
    return kNames[static_cast<std::size_t>(slot)];
  }
  if (slot <= kNumCreatureKinds) return creature_name(static_cast<CreatureKind>(slot - 1));
  return projectile_name(static_cast<ProjectileKind>(slot - 1 - kNumCreatureKinds));
}

std::string_view direction_text(Direction d) {
  switch (d) {
    case Direction::Left: return "left";
    case Direction::Right: return "right";
    case Direction::Up: return "up";
    case Direction::Down: return "down";
  }
  return "";
}

std::string_view enchant_text(Enchant e) {
  switch (e) {
    case Enchant::None: return "none";
    case Enchant::Fire: return "fire";
    case Enchant::Ice: return "ice";
  }
  return "";
}

}  // namespace

std::vector<std::string> render_text(const GameState& s) {
  std::vector<std::string> lines;
  for (const TileView& t : view_tiles(s)) {
    if (!t.visible) {
      lines.emplace_back("darkness");
      continue;
    }
    std::string line(creature_text(s.tier, t.creature));
    line += " on ";
    line += item_name(t.item);
    line += " on ";
    line += block_name(t.block);
    lines.push_back(std::move(line));
  }

  const Player& p = s.player;
  const Inventory& inv = s.inventory;
  const auto kv = [&](std::string_view name, const std::string& value) { lines.push_back(upper(name) + ": " + value); };
  const auto num = [&](std::string_view name, int v) { kv(name, std::to_string(v)); };

  kv("health", fmt_tenths(p.health));
  kv("food", fmt_tenths(p.food));
  kv("drink", fmt_tenths(p.drink));
  kv("energy", fmt_tenths(p.energy));
  if (s.tier == Tier::Extended) kv("mana", fmt_tenths(p.mana));
  num("sapling", inv.sapling);
  num("wood", inv.wood);
  num("stone", inv.stone);
  num("coal", inv.coal);
  num("iron", inv.iron);
  num("diamond", inv.diamond);
  if (s.tier == Tier::Classic) {
    num("wood_pickaxe", p.pickaxe >= 1);
    num("stone_pickaxe", p.pickaxe >= 2);
    num("iron_pickaxe", p.pickaxe >= 3);
    num("wood_sword", p.sword >= 1);
    num("stone_sword", p.sword >= 2);
    num("iron_sword", p.sword >= 3);
  } else {
    num("sapphire", inv.sapphire);
    num("ruby", inv.ruby);
    num("torch", inv.torch);
    num("arrow", inv.arrow);
    num("book", inv.book);
    static constexpr std::array<std::string_view, kNumPotions> kPotions = {
        "potion_red", "potion_green", "potion_blue", "potion_pink", "potion_cyan", "potion_yellow"};
    for (std::size_t i = 0; i < kNumPotions; ++i) num(kPotions[i], inv.potions[i]);
    num("pickaxe", p.pickaxe);
    num("sword", p.sword);
    kv("sword_enchantment", std::string(enchant_text(p.sword_enchant)));
    num("bow", p.bow);
    kv("bow_enchantment", std::string(enchant_text(p.bow_enchant)));
    for (std::size_t i = 0; i < 4; ++i) {
      num("armour_" + std::to_string(i), p.armour[i]);
      kv("armour_enchantment_" + std::to_string(i), std::string(enchant_text(p.armour_enchants[i])));
    }
    num("xp", p.xp);
    num("dexterity", p.dexterity);
    num("strength", p.strength);
    num("intelligence", p.intelligence);
    num("learned_fireball", p.learned_fireball);
    num("learned_iceball", p.learned_iceball);
    num("floor", p.floor);
    num("floor_cleared", s.cleared(p.floor));
    num("boss_vulnerable", s.boss.vulnerable);
    num("resting", p.resting);
  }
  kv("direction", std::string(direction_text(p.facing)));
  kv("daylight", std::to_string(static_cast<int>(std::lround(s.daylight * 100.0f))) + "%");
  num("sleeping", p.sleeping);
  return lines;
}

// ---------------------------------------------------------------------------
// Tiles

namespace {

constexpr std::array<Rgb, kNumBlocks> kBlockColours = {{
    {255, 0, 255},    // invalid
    {12, 12, 12},     // out of bounds
    {86, 166, 58},    // grass
    {48, 96, 200},    // water
    {128, 128, 128},  // stone
    {28, 100, 36},    // tree
    {150, 100, 50},   // wood
    {196, 170, 120},  // path
    {52, 52, 52},     // coal
    {200, 150, 120},  // iron
    {180, 240, 245},  // diamond
    {160, 110, 60},   // crafting table
    {90, 70, 70},     // furnace
    {228, 210, 140},  // sand
    {230, 90, 20},    // lava
    {120, 200, 90},   // plant
    {210, 60, 90},    // ripe plant
    {70, 60, 80},     // wall
    {1, 1, 1},        // darkness
    {60, 90, 60},     // mossy wall
    {150, 140, 130},  // stalagmite
    {40, 70, 220},    // sapphire
    {200, 20, 40},    // ruby
    {170, 120, 30},   // chest
    {110, 180, 230},  // fountain
    {150, 70, 40},    // fire grass
    {200, 225, 240},  // ice grass
    {110, 100, 95},   // gravel
    {190, 50, 20},    // fire tree
    {140, 190, 210},  // ice shrub
    {240, 120, 60},   // enchantment table fire
    {90, 160, 250},   // enchantment table ice
    {80, 20, 100},    // necromancer
    {100, 100, 110},  // grave
    {95, 105, 100},   // grave2
    {105, 95, 100},   // grave3
    {200, 60, 230},   // necromancer vulnerable
}};

constexpr std::array<Rgb, kNumCreatureKinds> kCreatureColours = {{
    {40, 140, 40},    // zombie
    {230, 230, 220},  // skeleton
    {120, 80, 50},    // cow
    {60, 110, 60},    // orc soldier
    {110, 60, 140},   // orc mage
    {180, 160, 90},   // snail
    {150, 110, 70},   // gnome warrior
    {170, 130, 90},   // gnome archer
    {60, 50, 60},     // bat
    {80, 150, 90},    // lizard
    {170, 90, 60},    // kobold
    {190, 190, 200},  // knight
    {160, 160, 120},  // archer
    {100, 120, 90},   // troll
    {30, 60, 90},     // deep thing
    {230, 140, 150},  // pigman
    {250, 150, 30},   // fire elemental
    {170, 210, 240},  // frost troll
    {210, 240, 255},  // ice elemental
}};

constexpr std::array<Rgb, kNumProjectileKinds> kProjectileColours = {{
    {240, 230, 200},
    {255, 120, 0},
    {140, 220, 255},
    {200, 190, 170},
    {230, 80, 0},
    {100, 180, 230},
}};

// 3x5 digits, one row per nibble, bit 2 = left column.
constexpr std::array<std::array<std::uint8_t, 5>, 10> kDigits = {{
    {7, 5, 5, 5, 7},
    {2, 6, 2, 2, 7},
    {7, 1, 7, 4, 7},
    {7, 1, 7, 1, 7},
    {5, 5, 7, 1, 1},
    {7, 4, 7, 1, 7},
    {7, 4, 7, 5, 7},
    {7, 1, 1, 1, 1},
    {7, 5, 7, 5, 7},
    {7, 5, 7, 1, 7},
}};

class Canvas {
public:
  Canvas(Frame& f) : f_(f) {}
  void fill(int x0, int y0, int w, int h, Rgb c) {
    for (int y = std::max(0, y0); y < std::min(f_.height, y0 + h); ++y)
      for (int x = std::max(0, x0); x < std::min(f_.width, x0 + w); ++x) {
        std::uint8_t* px = &f_.rgb[(static_cast<std::size_t>(y) * static_cast<std::size_t>(f_.width) +
                                    static_cast<std::size_t>(x)) *
                                   3];
        px[0] = c.r;
        px[1] = c.g;
        px[2] = c.b;
      }
  }
  void digit(int x0, int y0, int d, int scale, Rgb c) {
    for (int row = 0; row < 5; ++row)
      for (int col = 0; col < 3; ++col)
        if ((kDigits[static_cast<std::size_t>(d)][static_cast<std::size_t>(row)] >> (2 - col)) & 1)
          fill(x0 + col * scale, y0 + row * scale, scale, scale, c);
  }

private:
  Frame& f_;
};

struct StripSlot {
  Rgb colour;
  int value;
};

std::vector<StripSlot> strip_slots(const GameState& s) {
  const Player& p = s.player;
  const Inventory& inv = s.inventory;
  const auto whole = [](Tenths t) { return t.raw() / 10; };
  std::vector<StripSlot> v = {
      {{220, 40, 40}, whole(p.health)},  {{200, 140, 60}, whole(p.food)},   {{60, 120, 230}, whole(p.drink)},
      {{230, 220, 60}, whole(p.energy)}, {block_colour(BlockId::Plant), inv.sapling},
      {block_colour(BlockId::Tree), inv.wood},      {block_colour(BlockId::Stone), inv.stone},
      {block_colour(BlockId::Coal), inv.coal},      {block_colour(BlockId::Iron), inv.iron},
      {block_colour(BlockId::Diamond), inv.diamond}, {{200, 200, 200}, p.pickaxe},  {{255, 255, 255}, p.sword},
  };
  if (s.tier == Tier::Classic) return v;
  const std::vector<StripSlot> more = {
      {{120, 60, 230}, whole(p.mana)},
      {block_colour(BlockId::Sapphire), inv.sapphire},
      {block_colour(BlockId::Ruby), inv.ruby},
      {{250, 200, 60}, inv.torch},
      {{240, 230, 200}, inv.arrow},
      {{150, 90, 40}, inv.book},
      {{255, 60, 60}, inv.potions[0]},
      {{60, 220, 60}, inv.potions[1]},
      {{60, 60, 255}, inv.potions[2]},
      {{255, 140, 200}, inv.potions[3]},
      {{60, 230, 230}, inv.potions[4]},
      {{240, 240, 60}, inv.potions[5]},
      {{180, 180, 190}, p.armour[0]},
      {{180, 180, 190}, p.armour[1]},
      {{180, 180, 190}, p.armour[2]},
      {{180, 180, 190}, p.armour[3]},
      {{160, 110, 60}, p.bow},
      {{250, 250, 250}, p.xp},
      {{120, 240, 120}, p.dexterity},
      {{240, 120, 120}, p.strength},
      {{120, 120, 240}, p.intelligence},
      {{140, 140, 140}, p.floor},
      {{255, 120, 0}, to_int(p.sword_enchant)},
      {{255, 120, 0}, p.learned_fireball},
      {{140, 220, 255}, p.learned_iceball},
  };
  v.insert(v.end(), more.begin(), more.end());
  return v;
}

}  // namespace

Rgb block_colour(BlockId b) { return kBlockColours[static_cast<std::size_t>(b)]; }

int strip_rows(Tier t) { return t == Tier::Classic ? 2 : 4; }

Frame render_tiles(const GameState& s, int tile_px) {
  if (tile_px != 7 && tile_px != 10 && tile_px != 16)
    throw std::invalid_argument("render_tiles: tile_px must be 7, 10 or 16");
  const SymbolicLayout& L = symbolic_layout(s.tier);
  Frame f;
  f.width = L.view_cols * tile_px;
  f.height = (L.view_rows + strip_rows(s.tier)) * tile_px;
  f.rgb.assign(static_cast<std::size_t>(f.width) * static_cast<std::size_t>(f.height) * 3, 0);
  Canvas cv(f);

  const std::vector<TileView> view = view_tiles(s);
  const int inset = std::max(1, tile_px / 4);
  for (int vr = 0; vr < L.view_rows; ++vr)
    for (int vc = 0; vc < L.view_cols; ++vc) {
      const TileView& t = view[static_cast<std::size_t>(vr * L.view_cols + vc)];
      const int x = vc * tile_px;
      const int y = vr * tile_px;
      if (!t.visible) continue;
      cv.fill(x, y, tile_px, tile_px, block_colour(t.block));
      switch (t.item) {
        case ItemId::None: break;
        case ItemId::Torch: cv.fill(x + tile_px / 2 - 1, y + inset, 2, tile_px - 2 * inset, {250, 200, 60}); break;
        case ItemId::LadderDown: cv.fill(x + inset, y + tile_px - inset - 1, tile_px - 2 * inset, 1, {90, 50, 20}); [[fallthrough]];
        case ItemId::LadderUp:
        case ItemId::LadderDownBlocked: {
          const Rgb c = t.item == ItemId::LadderDownBlocked ? Rgb{120, 30, 30} : Rgb{140, 90, 40};
          cv.fill(x + inset, y, 1, tile_px, c);
          cv.fill(x + tile_px - inset - 1, y, 1, tile_px, c);
          for (int ry = y + 1; ry < y + tile_px; ry += 3) cv.fill(x + inset, ry, tile_px - 2 * inset, 1, c);
          break;
        }
      }
      if (t.creature == 0) continue;
      Rgb c;
      bool projectile;
      if (s.tier == Tier::Classic) {
        static constexpr std::array<CreatureKind, 3> kClassic = {CreatureKind::Zombie, CreatureKind::Cow,
                                                                  CreatureKind::Skeleton};
        projectile = t.creature == 4;
        c = projectile ? kProjectileColours[3] : kCreatureColours[static_cast<std::size_t>(kClassic[static_cast<std::size_t>(t.creature - 1)])];
      } else {
        projectile = t.creature > kNumCreatureKinds;
        c = projectile ? kProjectileColours[static_cast<std::size_t>(t.creature - 1 - kNumCreatureKinds)]
                       : kCreatureColours[static_cast<std::size_t>(t.creature - 1)];
      }
      const int in = projectile ? tile_px / 3 : inset;
      cv.fill(x + in, y + in, tile_px - 2 * in, tile_px - 2 * in, c);
    }

  // Player at the centre with a facing marker.
  const int px = (L.view_cols / 2) * tile_px;
  const int py = (L.view_rows / 2) * tile_px;
  if (view[static_cast<std::size_t>((L.view_rows / 2) * L.view_cols + L.view_cols / 2)].visible || s.player.sleeping) {
    const Rgb body = s.player.sleeping ? Rgb{90, 90, 140} : Rgb{250, 250, 250};
    cv.fill(px + inset, py + inset, tile_px - 2 * inset, tile_px - 2 * inset, body);
    const Pos o = offset(s.player.facing);
    const int cx = px + tile_px / 2 + o.col * (tile_px / 2 - inset / 2 - 1);
    const int cy = py + tile_px / 2 + o.row * (tile_px / 2 - inset / 2 - 1);
    cv.fill(cx - 1, cy - 1, 2, 2, {20, 20, 20});
  }

  // Status strip: one tile per value, a colour bar above a two-digit number.
  const int top = L.view_rows * tile_px;
  cv.fill(0, top, f.width, strip_rows(s.tier) * tile_px, {24, 24, 24});
  const int scale = std::max(1, tile_px / 7);
  const std::vector<StripSlot> slots = strip_slots(s);
  const int capacity = strip_rows(s.tier) * L.view_cols;
  for (int i = 0; i < std::min<int>(capacity, static_cast<int>(slots.size())); ++i) {
    const int x = (i % L.view_cols) * tile_px;
    const int y = top + (i / L.view_cols) * tile_px;
    const StripSlot& slot = slots[static_cast<std::size_t>(i)];
    cv.fill(x, y, tile_px, scale, slot.colour);
    const int v = std::clamp(slot.value, 0, 99);
    const int digits_w = 7 * scale;
    const int dx = x + (tile_px - digits_w) / 2;
    const int dy = y + 2 * scale;
    cv.digit(dx, dy, v / 10, scale, slot.colour);
    cv.digit(dx + 4 * scale, dy, v % 10, scale, slot.colour);
  }
  return f;
}

}  // namespace delve
