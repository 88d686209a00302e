#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "delve/obs.hpp"
#include "support.hpp"

using namespace delve;
using namespace delve::test;

namespace {

/// States sampled along random trajectories of both tiers.
std::vector<GameState> sample_states(Tier t, std::uint64_t seed, int episodes, int stride) {
  std::vector<GameState> out;
  for (int e = 0; e < episodes; ++e) {
    GameState s = fresh(t, seed + static_cast<std::uint64_t>(e));
    const auto acts = random_actions(t, seed + static_cast<std::uint64_t>(e), 400);
    for (std::size_t i = 0; i < acts.size() && !s.done; ++i) {
      step_inplace(s, acts[i]);
      if (i % static_cast<std::size_t>(stride) == 0) out.push_back(s);
    }
  }
  return out;
}

int count_set(const float* g, std::size_t n) {
  int k = 0;
  for (std::size_t i = 0; i < n; ++i) k += g[i] != 0.0f ? 1 : 0;
  return k;
}

}  // namespace

TEST_CASE("symbolic lengths") {
  CHECK(symbolic_layout(Tier::Classic).total_len == kClassicObsLen);
  CHECK(symbolic_layout(Tier::Extended).total_len == kExtendedObsLen);
  CHECK(kClassicObsLen == 1345);
  CHECK(kExtendedObsLen == 8268);
  CHECK(encode_symbolic(fresh(Tier::Classic, 1)).size() == 1345);
  CHECK(encode_symbolic(fresh(Tier::Extended, 1)).size() == 8268);

  const SymbolicLayout& c = symbolic_layout(Tier::Classic);
  CHECK(c.per_tile == 21);
  CHECK(c.map_len == 63 * 21);
  CHECK(c.total_len - c.inventory_offset == kClassicInventoryFields);
  const SymbolicLayout& x = symbolic_layout(Tier::Extended);
  CHECK(x.total_len - x.inventory_offset == kExtendedInventorySection);
}

TEST_CASE("inventory fields tile the inventory section without gaps") {
  for (Tier t : {Tier::Classic, Tier::Extended}) {
    const SymbolicLayout& L = symbolic_layout(t);
    std::size_t off = L.inventory_offset;
    for (const LayoutField& f : L.inventory) {
      CHECK(f.offset == off);
      off += f.length;
    }
    CHECK(off == L.total_len);
    CHECK_THROWS_AS((void)L.field("no_such_field"), std::out_of_range);
  }
}

TEST_CASE("each tile group is one-hot when visible and empty when masked") {
  for (Tier t : {Tier::Classic, Tier::Extended}) {
    const SymbolicLayout& L = symbolic_layout(t);
    for (const GameState& s : sample_states(t, 40, 3, 25)) {
      const std::vector<float> o = encode_symbolic(s);
      const std::vector<TileView> view = view_tiles(s);
      for (int vr = 0; vr < L.view_rows; ++vr)
        for (int vc = 0; vc < L.view_cols; ++vc) {
          const float* tile = o.data() + L.tile_offset(vr, vc);
          const int want = view[static_cast<std::size_t>(vr * L.view_cols + vc)].visible ? 1 : 0;
          REQUIRE(count_set(tile, L.block_group) == want);
          if (L.item_group > 0) REQUIRE(count_set(tile + L.block_group, L.item_group) == want);
          REQUIRE(count_set(tile + L.block_group + L.item_group, L.creature_group) == want);
        }
      const LayoutField& dir = L.field("direction");
      CHECK(count_set(o.data() + dir.offset, 4) == 1);
      for (std::size_t i = 0; i < o.size(); ++i) REQUIRE(o[i] >= 0.0f);
    }
  }
}

TEST_CASE("classic tiles are never masked") {
  GameState s = arena(Tier::Classic);
  s.daylight = 0.0f;
  s.player.sleeping = true;
  for (const TileView& v : view_tiles(s)) CHECK(v.visible);
}

TEST_CASE("extended tiles below the light threshold read as darkness") {
  GameState s = arena(Tier::Extended);
  s.player.floor = 1;
  FloorMap& m = s.floors[1];
  std::fill(m.light.begin(), m.light.end(), 0.0f);
  m.light[m.index(at(8, 8))] = 1.0f;
  m.light[m.index(at(8, 9))] = 0.05f;
  m.light[m.index(at(8, 10))] = 0.049f;
  const SymbolicLayout& L = symbolic_layout(Tier::Extended);
  const std::vector<TileView> v = view_tiles(s);
  const auto tile = [&](int r, int c) { return v[static_cast<std::size_t>((r - 8 + L.view_rows / 2) * L.view_cols + (c - 8 + L.view_cols / 2))]; };
  CHECK(tile(8, 8).visible);
  CHECK(tile(8, 9).visible);
  CHECK(!tile(8, 10).visible);
  CHECK(tile(8, 10).block == BlockId::Darkness);
  CHECK(tile(8, 10).light == doctest::Approx(0.049f));
  CHECK(!tile(7, 8).visible);

  // Sleeping masks every tile.
  s.player.sleeping = true;
  for (const TileView& t : view_tiles(s)) CHECK(!t.visible);
  const std::vector<float> o = encode_symbolic(s);
  const float* centre = o.data() + L.tile_offset(L.view_rows / 2, L.view_cols / 2);
  CHECK(count_set(centre, L.per_tile - 1) == 0);
  CHECK(centre[L.per_tile - 1] == 1.0f);
}

TEST_CASE("the overworld light follows daylight") {
  GameState s = arena(Tier::Extended);
  s.daylight = 0.5f;
  for (const TileView& t : view_tiles(s))
    if (t.block != BlockId::OutOfBounds) CHECK(t.light == doctest::Approx(0.5f));
  s.daylight = 0.0f;
  for (const TileView& t : view_tiles(s)) CHECK(!t.visible);
}

TEST_CASE("decode inverts encode on sampled states") {
  for (Tier t : {Tier::Classic, Tier::Extended}) {
    for (const GameState& s : sample_states(t, 70, 4, 10)) {
      const DecodedObs d = decode_symbolic(t, encode_symbolic(s));
      REQUIRE(d.tiles == view_tiles(s));
      const Inventory& a = s.inventory;
      const Inventory& b = d.inventory;
      CHECK(b.sapling == a.sapling);
      CHECK(b.wood == a.wood);
      CHECK(b.stone == a.stone);
      CHECK(b.coal == a.coal);
      CHECK(b.iron == a.iron);
      CHECK(b.diamond == a.diamond);
      CHECK(d.stats[0] == s.player.health);
      CHECK(d.stats[1] == s.player.food);
      CHECK(d.stats[2] == s.player.drink);
      CHECK(d.stats[3] == s.player.energy);
      CHECK(d.pickaxe == std::min<int>(s.player.pickaxe, t == Tier::Classic ? 3 : 4));
      CHECK(d.sword == std::min<int>(s.player.sword, t == Tier::Classic ? 3 : 4));
      CHECK(d.facing == s.player.facing);
      CHECK(d.sleeping == s.player.sleeping);
      if (t == Tier::Extended) {
        CHECK(d.stats[4] == s.player.mana);
        CHECK(b.sapphire == a.sapphire);
        CHECK(b.ruby == a.ruby);
        CHECK(b.torch == a.torch);
        CHECK(b.arrow == a.arrow);
        CHECK(b.book == a.book);
        CHECK(b.potions == a.potions);
        CHECK(d.floor == s.player.floor);
      }
    }
  }
}

TEST_CASE("decode rejects malformed input") {
  std::vector<float> o = encode_symbolic(fresh(Tier::Classic, 2));
  CHECK_THROWS_AS(decode_symbolic(Tier::Classic, std::span(o).first(o.size() - 1)), std::invalid_argument);
  CHECK_THROWS_AS(decode_symbolic(Tier::Extended, o), std::invalid_argument);
  const SymbolicLayout& L = symbolic_layout(Tier::Classic);
  std::vector<float> twice = o;
  float* tile = twice.data() + L.tile_offset(0, 0);
  for (std::size_t i = 0; i < L.block_group; ++i) tile[i] = 1.0f;
  CHECK_THROWS_AS(decode_symbolic(Tier::Classic, twice), std::invalid_argument);
  std::vector<float> half = o;
  half[L.tile_offset(1, 1)] = 0.5f;
  CHECK_THROWS_AS(decode_symbolic(Tier::Classic, half), std::invalid_argument);
}

TEST_CASE("encode_symbolic_into checks the buffer length") {
  const GameState s = fresh(Tier::Classic, 3);
  std::vector<float> buf(kClassicObsLen + 1);
  CHECK_THROWS_AS(encode_symbolic_into(s, buf), std::invalid_argument);
  buf.resize(kClassicObsLen, 7.0f);
  encode_symbolic_into(s, buf);
  CHECK(buf == encode_symbolic(s));
}

TEST_CASE("inventory scalings") {
  GameState s = arena(Tier::Extended);
  s.inventory.wood = 9;
  s.inventory.book = 1;
  s.player.pickaxe = 2;
  s.player.sword_enchant = Enchant::Ice;
  s.player.dexterity = 3;
  s.player.floor = 0;
  const std::vector<float> o = encode_symbolic(s);
  const SymbolicLayout& L = symbolic_layout(Tier::Extended);
  CHECK(o[L.field("wood").offset] == doctest::Approx(0.3));
  CHECK(o[L.field("book").offset] == doctest::Approx(0.5));
  CHECK(o[L.field("pickaxe").offset] == doctest::Approx(0.5));
  CHECK(o[L.field("sword_enchantment").offset] == 2.0f);
  CHECK(o[L.field("dexterity").offset] == doctest::Approx(0.3));
  CHECK(o[L.field("health").offset] == doctest::Approx(max_health(s).value() / 10.0));
  CHECK(L.field("padding").scaling == Scaling::Padding);
  for (std::size_t i = 0; i < L.field("padding").length; ++i) CHECK(o[L.field("padding").offset + i] == 0.0f);
}

TEST_CASE("layout manifest and hash are stable") {
  for (Tier t : {Tier::Classic, Tier::Extended}) {
    const nlohmann::json m = layout_manifest(t);
    CHECK(m["version"] == std::string(kLayoutVersion));
    CHECK(m["total_len"] == symbolic_layout(t).total_len);
    CHECK(layout_hash(t) == layout_hash(t));
  }
  CHECK(layout_hash(Tier::Classic) != layout_hash(Tier::Extended));
  CHECK(layout_hash(Tier::Classic) == 0x9de66c211a2ca314ULL);
  CHECK(layout_hash(Tier::Extended) == 0xe6b04ade54ccc945ULL);
}

TEST_CASE("creature slots") {
  CHECK(creature_slot(Tier::Classic, CreatureKind::Zombie) == 1);
  CHECK(creature_slot(Tier::Classic, CreatureKind::Cow) == 2);
  CHECK(creature_slot(Tier::Classic, CreatureKind::Skeleton) == 3);
  CHECK(projectile_slot(Tier::Classic, ProjectileKind::EnemyArrow) == 4);
  CHECK_THROWS_AS(creature_slot(Tier::Classic, CreatureKind::Pigman), std::invalid_argument);
  std::set<int> slots;
  for (int k = 0; k < kNumCreatureKinds; ++k) slots.insert(creature_slot(Tier::Extended, static_cast<CreatureKind>(k)));
  for (int k = 0; k < kNumProjectileKinds; ++k) slots.insert(projectile_slot(Tier::Extended, static_cast<ProjectileKind>(k)));
  CHECK(slots.size() == static_cast<std::size_t>(kNumCreatureKinds + kNumProjectileKinds));
  CHECK(*slots.begin() == 1);
  CHECK(*slots.rbegin() < kExtendedCreatureGroup);
}

TEST_CASE("creatures appear in the view") {
  GameState s = arena(Tier::Classic);
  add_creature(s, CreatureKind::Cow, at(9, 8));
  const SymbolicLayout& L = symbolic_layout(Tier::Classic);
  const std::vector<TileView> v = view_tiles(s);
  CHECK(v[static_cast<std::size_t>((L.view_rows / 2 + 1) * L.view_cols + L.view_cols / 2)].creature == 2);
}

TEST_CASE("text rendering") {
  GameState s = arena(Tier::Classic);
  add_creature(s, CreatureKind::Zombie, at(8, 9));
  const std::vector<std::string> lines = render_text(s);
  const SymbolicLayout& L = symbolic_layout(Tier::Classic);
  REQUIRE(lines.size() > static_cast<std::size_t>(L.view_rows * L.view_cols));
  CHECK(lines[static_cast<std::size_t>(L.view_rows / 2 * L.view_cols + L.view_cols / 2)] == "none on none on grass");
  CHECK(lines[static_cast<std::size_t>(L.view_rows / 2 * L.view_cols + L.view_cols / 2 + 1)] == "zombie on none on grass");
  CHECK(std::find(lines.begin(), lines.end(), "HEALTH: 9") != lines.end());
  CHECK(std::find(lines.begin(), lines.end(), "DIRECTION: down") != lines.end());

  GameState x = arena(Tier::Extended);
  x.player.health = Tenths(85);
  x.player.sleeping = true;
  const std::vector<std::string> xl = render_text(x);
  CHECK(xl.front() == "darkness");
  CHECK(std::find(xl.begin(), xl.end(), "HEALTH: 8.5") != xl.end());
  CHECK(std::find(xl.begin(), xl.end(), "MANA: " + std::to_string(x.player.mana.raw() / 10)) != xl.end());
}

TEST_CASE("tile frames") {
  const Frame c = render_tiles(fresh(Tier::Classic, 4), 7);
  CHECK(c.width == 63);
  CHECK(c.height == 63);
  CHECK(c.rgb.size() == 63u * 63u * 3u);
  const Frame x = render_tiles(fresh(Tier::Extended, 4), 10);
  CHECK(x.width == 110);
  CHECK(x.height == 130);
  const Frame big = render_tiles(fresh(Tier::Classic, 4), 16);
  CHECK(big.width == 144);
  CHECK(render_tiles(fresh(Tier::Classic, 4), 7) == c);
  CHECK_THROWS_AS(render_tiles(fresh(Tier::Classic, 4), 8), std::invalid_argument);

  // A grass tile away from the player is drawn in the grass colour.
  const Frame g = render_tiles(arena(Tier::Classic), 7);
  const Rgb grass = block_colour(BlockId::Grass);
  CHECK(g.rgb[0] == grass.r);
  CHECK(g.rgb[1] == grass.g);
  CHECK(g.rgb[2] == grass.b);
}
