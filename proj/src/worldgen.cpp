#include "delve/worldgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "delve/catalog.hpp"
#include "delve/simd.hpp"

namespace delve {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr int kMaxAttempts = 16;

// ---------------------------------------------------------------------------
// Noise helpers

struct Lattice {
  std::vector<double> grad_row, grad_col;
  std::uint32_t res;
};

Lattice lattice_of(const AngleField& f) {
  Lattice l{{}, {}, f.res};
  l.grad_row.resize(f.angles.size());
  l.grad_col.resize(f.angles.size());
  for (std::size_t i = 0; i < f.angles.size(); ++i) {
    l.grad_row[i] = std::cos(f.angles[i]);
    l.grad_col[i] = std::sin(f.angles[i]);
  }
  return l;
}

AngleField random_angles(std::uint32_t res, Sampler& rng) {
  AngleField f{res, {}};
  f.angles.resize(static_cast<std::size_t>(res + 1) * (res + 1));
  for (double& a : f.angles) a = rng.unit() * kTwoPi;
  return f;
}

std::vector<AngleField> random_channel(Sampler& rng) {
  std::vector<AngleField> fields;
  for (const Octave& o : kOverworldOctaves) fields.push_back(random_angles(o.frequency, rng));
  return fields;
}

std::vector<double> uniforms(Dims d, Sampler& rng) {
  std::vector<double> u(static_cast<std::size_t>(d.rows) * d.cols);
  simd::tile_uniforms(rng.u64(), u);
  return u;
}

// ---------------------------------------------------------------------------
// Map helpers

FloorMap blank_floor(Dims d, BlockId fill, float light) {
  FloorMap m;
  m.rows = static_cast<std::int16_t>(d.rows);
  m.cols = static_cast<std::int16_t>(d.cols);
  const std::size_t n = static_cast<std::size_t>(d.rows) * d.cols;
  m.blocks.assign(n, fill);
  m.items.assign(n, ItemId::None);
  m.light.assign(n, light);
  return m;
}

Pos pos_of(const FloorMap& m, std::size_t i) {
  return {static_cast<std::int16_t>(i / m.cols), static_cast<std::int16_t>(i % m.cols)};
}

/// Labels 4-connected walkable regions; returns the label of every tile (-1 if
/// not walkable) and the size of each region.
std::vector<int> label_regions(const FloorMap& m, std::vector<int>& sizes) {
  std::vector<int> label(m.blocks.size(), -1);
  std::vector<std::size_t> stack;
  sizes.clear();
  for (std::size_t start = 0; start < m.blocks.size(); ++start) {
    if (label[start] != -1 || !is_walkable(m.blocks[start])) continue;
    const int id = static_cast<int>(sizes.size());
    int count = 0;
    stack.push_back(start);
    label[start] = id;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      ++count;
      const Pos p = pos_of(m, i);
      for (Direction d : {Direction::Left, Direction::Right, Direction::Up, Direction::Down}) {
        const Pos q = p + offset(d);
        if (!m.in_bounds(q)) continue;
        const std::size_t j = m.index(q);
        if (label[j] == -1 && is_walkable(m.blocks[j])) {
          label[j] = id;
          stack.push_back(j);
        }
      }
    }
    sizes.push_back(count);
  }
  return label;
}

std::vector<Pos> largest_region(const FloorMap& m) {
  std::vector<int> sizes;
  const std::vector<int> label = label_regions(m, sizes);
  if (sizes.empty()) return {};
  const int best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<Pos> out;
  out.reserve(static_cast<std::size_t>(sizes[static_cast<std::size_t>(best)]));
  for (std::size_t i = 0; i < label.size(); ++i)
    if (label[i] == best) out.push_back(pos_of(m, i));
  return out;
}

bool has_walkable_neighbour(const FloorMap& m, Pos p) {
  for (Direction d : {Direction::Left, Direction::Right, Direction::Up, Direction::Down})
    if (is_walkable(m.block(p + offset(d)))) return true;
  return false;
}

/// Picks a tile from `region` at least `min_dist` (Chebyshev) from `avoid`,
/// falling back to any tile of the region other than `avoid`.
std::optional<Pos> pick_far(const std::vector<Pos>& region, std::optional<Pos> avoid, int min_dist, Sampler& rng) {
  if (region.empty()) return std::nullopt;
  for (int tries = 0; tries < 64; ++tries) {
    const Pos p = region[rng.below(static_cast<std::uint32_t>(region.size()))];
    if (!avoid || chebyshev(p, *avoid) >= min_dist) return p;
  }
  for (const Pos& p : region)
    if (!avoid || !(p == *avoid)) return p;
  return std::nullopt;
}

void place_ladders(FloorMap& m, int floor, const std::vector<Pos>& region, std::optional<Pos> up_hint, Sampler& rng) {
  std::optional<Pos> up = up_hint;
  if (floor > 0 && !up) up = pick_far(region, std::nullopt, 0, rng);
  if (up) {
    m.ladder_up = up;
    m.items[m.index(*up)] = ItemId::LadderUp;
    m.spawn = *up;
  }
  if (floor < kBossFloor) {
    const std::optional<Pos> anchor = up ? up : std::optional<Pos>(m.spawn);
    if (auto down = pick_far(region, anchor, std::max<int>(8, m.rows / 4), rng)) {
      m.ladder_down = down;
      m.items[m.index(*down)] = ItemId::LadderDown;
    }
  }
}

bool same_region(const FloorMap& m, std::initializer_list<std::optional<Pos>> points) {
  std::vector<int> sizes;
  const std::vector<int> label = label_regions(m, sizes);
  int want = -2;
  for (const auto& p : points) {
    if (!p) continue;
    const int l = label[m.index(*p)];
    if (l < 0) return false;
    if (want == -2) want = l;
    else if (l != want) return false;
  }
  return true;
}

bool floor_is_valid(const FloorMap& m, Tier tier, int floor) {
  if (!m.in_bounds(m.spawn) || !is_walkable(m.block(m.spawn)) || !has_walkable_neighbour(m, m.spawn)) return false;
  if (tier == Tier::Classic) return true;
  if ((floor < kBossFloor) != m.ladder_down.has_value()) return false;
  if ((floor > 0) != m.ladder_up.has_value()) return false;
  if (m.ladder_down && !is_walkable(m.block(*m.ladder_down))) return false;
  if (m.ladder_up && !is_walkable(m.block(*m.ladder_up))) return false;
  return same_region(m, {m.spawn, m.ladder_down, m.ladder_up});
}

// ---------------------------------------------------------------------------
// Overworld-style floors (overworld, fire realm, ice realm)

using TerrainPalette = std::array<BlockId, simd::kNumTerrainClasses>;

constexpr TerrainPalette kOverworldPalette = {BlockId::Grass, BlockId::Sand,    BlockId::Water, BlockId::Stone,
                                              BlockId::Path,  BlockId::Lava,    BlockId::Diamond, BlockId::Iron,
                                              BlockId::Coal,  BlockId::Tree};
constexpr TerrainPalette kFirePalette = {BlockId::FireGrass, BlockId::Gravel, BlockId::Lava, BlockId::Stone,
                                         BlockId::Path,      BlockId::Lava,   BlockId::Ruby, BlockId::Iron,
                                         BlockId::Coal,      BlockId::FireTree};
constexpr TerrainPalette kIcePalette = {BlockId::IceGrass, BlockId::Gravel,   BlockId::Water, BlockId::Stone,
                                        BlockId::Path,     BlockId::Water,    BlockId::Sapphire, BlockId::Iron,
                                        BlockId::Coal,     BlockId::IceShrub};

std::vector<double> start_field(Dims d, bool clear_spawn) {
  std::vector<double> s(static_cast<std::size_t>(d.rows) * d.cols, 0.0);
  if (!clear_spawn) return s;
  const double cr = d.rows / 2;
  const double cc = d.cols / 2;
  constexpr double kRadius = 10.0;
  for (std::uint32_t r = 0; r < d.rows; ++r)
    for (std::uint32_t c = 0; c < d.cols; ++c) {
      const double dist = std::sqrt((r - cr) * (r - cr) + (c - cc) * (c - cc));
      s[r * d.cols + c] = std::max(0.0, 1.0 - dist / kRadius);
    }
  return s;
}

FloorMap terrain_floor(Dims d, std::span<const AngleField> fields, const simd::TerrainThresholds& th,
                       const TerrainPalette& palette, bool clear_spawn, float light, Sampler& rng) {
  const auto octaves = std::span<const Octave>(kOverworldOctaves);
  const std::size_t per = octaves.size();
  const std::vector<double> water = perlin(d, fields.subspan(0, per), octaves);
  const std::vector<double> mountain = perlin(d, fields.subspan(per, per), octaves);
  const std::vector<double> veg = perlin(d, fields.subspan(2 * per, per), octaves);
  const std::vector<double> u = uniforms(d, rng);
  const std::vector<double> start = start_field(d, clear_spawn);

  std::vector<simd::Terrain> classes(u.size());
  simd::classify_terrain({water, mountain, veg, u, start}, th, classes);

  FloorMap m = blank_floor(d, BlockId::Grass, light);
  for (std::size_t i = 0; i < classes.size(); ++i) m.blocks[i] = palette[static_cast<std::size_t>(classes[i])];
  m.spawn = {static_cast<std::int16_t>(d.rows / 2), static_cast<std::int16_t>(d.cols / 2)};
  return m;
}

simd::TerrainThresholds realm_thresholds(bool fire) {
  simd::TerrainThresholds th;
  th.start_clear = 2.0;  // never
  th.water = fire ? 0.26 : 0.28;
  th.sand = fire ? 0.20 : 0.22;
  th.lava_mountain = fire ? 0.22 : 0.30;
  th.lava_veg = fire ? 0.20 : 0.35;
  th.diamond_mountain = 0.18;
  th.diamond_u = 0.975;
  return th;
}

// ---------------------------------------------------------------------------
// Room-and-corridor floors (dungeon, sewers, vaults)

struct Rect {
  int r0, c0, h, w;
  [[nodiscard]] Pos centre() const {
    return {static_cast<std::int16_t>(r0 + h / 2), static_cast<std::int16_t>(c0 + w / 2)};
  }
  [[nodiscard]] bool overlaps(const Rect& o, int margin) const {
    return r0 - margin < o.r0 + o.h && o.r0 - margin < r0 + h && c0 - margin < o.c0 + o.w && o.c0 - margin < c0 + w;
  }
};

enum class RoomStyle { Dungeon, Sewers, Vaults };

/// Room tiles off the central cross, where a block will not cut a corridor.
std::vector<Pos> room_side_tiles(const FloorMap& m, const Rect& r) {
  std::vector<Pos> out;
  const Pos c = r.centre();
  for (int i = r.r0; i < r.r0 + r.h; ++i)
    for (int j = r.c0; j < r.c0 + r.w; ++j) {
      const Pos p{static_cast<std::int16_t>(i), static_cast<std::int16_t>(j)};
      if (p.row == c.row || p.col == c.col) continue;
      if (m.block(p) == BlockId::Path && m.item(p) == ItemId::None) out.push_back(p);
    }
  return out;
}

bool place_block_in_rooms(FloorMap& m, const std::vector<Rect>& rooms, BlockId b, Sampler& rng) {
  for (int tries = 0; tries < 32; ++tries) {
    const Rect& room = rooms[rng.below(static_cast<std::uint32_t>(rooms.size()))];
    const std::vector<Pos> tiles = room_side_tiles(m, room);
    if (tiles.empty()) continue;
    m.set_block(tiles[rng.below(static_cast<std::uint32_t>(tiles.size()))], b);
    return true;
  }
  return false;
}

std::optional<FloorMap> rooms_floor(Dims d, int floor, RoomStyle style, int chests, Sampler& rng) {
  FloorMap m = blank_floor(d, BlockId::Wall, 1.0f);
  std::vector<Rect> rooms;
  const int target = 3 + static_cast<int>(rng.below(6));
  for (int attempt = 0; attempt < 200 && static_cast<int>(rooms.size()) < target; ++attempt) {
    const int h = 5 + static_cast<int>(rng.below(5));
    const int w = 5 + static_cast<int>(rng.below(5));
    if (static_cast<int>(d.rows) - h - 2 <= 0 || static_cast<int>(d.cols) - w - 2 <= 0) break;
    const Rect r{1 + static_cast<int>(rng.below(d.rows - h - 1)), 1 + static_cast<int>(rng.below(d.cols - w - 1)), h, w};
    if (std::any_of(rooms.begin(), rooms.end(), [&](const Rect& o) { return r.overlaps(o, 1); })) continue;
    rooms.push_back(r);
  }
  if (rooms.size() < 3) return std::nullopt;

  for (const Rect& r : rooms)
    for (int i = r.r0; i < r.r0 + r.h; ++i)
      for (int j = r.c0; j < r.c0 + r.w; ++j)
        m.set_block({static_cast<std::int16_t>(i), static_cast<std::int16_t>(j)}, BlockId::Path);

  auto carve = [&](Pos a, Pos b, bool rows_first) {
    Pos p = a;
    auto step_towards = [](std::int16_t& v, std::int16_t target) { v = static_cast<std::int16_t>(v + (target > v ? 1 : -1)); };
    m.set_block(p, BlockId::Path);
    if (rows_first) {
      while (p.row != b.row) { step_towards(p.row, b.row); m.set_block(p, BlockId::Path); }
      while (p.col != b.col) { step_towards(p.col, b.col); m.set_block(p, BlockId::Path); }
    } else {
      while (p.col != b.col) { step_towards(p.col, b.col); m.set_block(p, BlockId::Path); }
      while (p.row != b.row) { step_towards(p.row, b.row); m.set_block(p, BlockId::Path); }
    }
  };
  for (std::size_t i = 1; i < rooms.size(); ++i) carve(rooms[i - 1].centre(), rooms[i].centre(), rng.chance(0.5));

  if (style == RoomStyle::Sewers) {
    for (const Rect& r : rooms) {
      if (!rng.chance(0.6)) continue;
      const Pos c = r.centre();
      for (int i = r.r0 + 1; i < r.r0 + r.h - 1; ++i)
        for (int j = r.c0 + 1; j < r.c0 + r.w - 1; ++j)
          if (i != c.row && j != c.col) m.set_block({static_cast<std::int16_t>(i), static_cast<std::int16_t>(j)}, BlockId::Water);
    }
  }

  for (BlockId& b : m.blocks)
    if (b == BlockId::Wall && rng.chance(0.12)) b = BlockId::MossyWall;

  // Ladders go on the central cross of the first and last room so they stay connected.
  const Pos up = rooms.front().centre();
  const Pos down = rooms.back().centre();
  if (floor > 0) {
    m.ladder_up = up;
    m.items[m.index(up)] = ItemId::LadderUp;
    m.spawn = up;
  }
  m.ladder_down = down;
  m.items[m.index(down)] = ItemId::LadderDown;

  if (style != RoomStyle::Vaults) place_block_in_rooms(m, rooms, BlockId::Fountain, rng);
  if (style == RoomStyle::Vaults) {
    if (!place_block_in_rooms(m, rooms, BlockId::EnchantTableFire, rng)) return std::nullopt;
    if (!place_block_in_rooms(m, rooms, BlockId::EnchantTableIce, rng)) return std::nullopt;
  }
  for (int i = 0; i < chests; ++i)
    if (!place_block_in_rooms(m, rooms, BlockId::Chest, rng)) return std::nullopt;
  return m;
}

// ---------------------------------------------------------------------------
// Cave floors (gnomish mines, troll mines)

std::optional<FloorMap> cave_floor(Dims d, int floor, Sampler& rng) {
  std::vector<AngleField> fields = random_channel(rng);
  const std::vector<double> noise = perlin(d, fields, kOverworldOctaves);
  const std::vector<double> u = uniforms(d, rng);
  const std::vector<double> u2 = uniforms(d, rng);
  const bool troll = floor == 5;

  FloorMap m = blank_floor(d, BlockId::Stone, 0.0f);
  for (std::size_t i = 0; i < noise.size(); ++i) {
    const Pos p = pos_of(m, i);
    const bool border = p.row == 0 || p.col == 0 || p.row == m.rows - 1 || p.col == m.cols - 1;
    const double n = noise[i];
    BlockId b;
    if (!border && n > -0.02) {
      if (troll && n > 0.35) b = BlockId::Water;
      else if (u2[i] > 0.97) b = BlockId::Stalagmite;
      else if (!troll && u2[i] < 0.12) b = BlockId::Gravel;
      else b = BlockId::Path;
    } else if (!border && troll && n < -0.45) {
      b = BlockId::Lava;
    } else {
      const double x = u[i];
      if (troll && x > 0.993) b = BlockId::Ruby;
      else if (x > 0.990) b = BlockId::Sapphire;
      else if (x > 0.982) b = BlockId::Diamond;
      else if (x > 0.955) b = BlockId::Iron;
      else if (x > 0.915) b = BlockId::Coal;
      else b = BlockId::Stone;
    }
    m.blocks[i] = b;
  }
  const std::vector<Pos> region = largest_region(m);
  if (region.size() < std::max<std::size_t>(40, m.blocks.size() / 30)) return std::nullopt;
  place_ladders(m, floor, region, std::nullopt, rng);
  return m;
}

// ---------------------------------------------------------------------------
// Graveyard: fixed arena

FloorMap graveyard_floor(Dims d) {
  FloorMap m = blank_floor(d, BlockId::Path, 0.0f);
  const int rows = m.rows, cols = m.cols;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const Pos p{static_cast<std::int16_t>(i), static_cast<std::int16_t>(j)};
      if (i == 0 || j == 0 || i == rows - 1 || j == cols - 1) m.set_block(p, BlockId::Wall);
      else if (i >= 6 && i <= rows - 6 && (i % 6 == 3) && (j % 6 == 3)) {
        static constexpr std::array<BlockId, 3> kGraves = {BlockId::Grave, BlockId::Grave2, BlockId::Grave3};
        m.set_block(p, kGraves[static_cast<std::size_t>((i / 6 + j / 6) % 3)]);
      }
    }
  // Two pools for aquatic waves.
  for (int pool = 0; pool < 2; ++pool) {
    const int r0 = rows / 2 - 1;
    const int c0 = pool == 0 ? cols / 4 - 1 : (3 * cols) / 4 - 1;
    for (int i = r0; i < r0 + 3; ++i)
      for (int j = c0; j < c0 + 3; ++j) m.set_block({static_cast<std::int16_t>(i), static_cast<std::int16_t>(j)}, BlockId::Water);
  }
  const Pos boss{3, static_cast<std::int16_t>(cols / 2)};
  m.set_block(boss, BlockId::Necromancer);
  const Pos up{static_cast<std::int16_t>(rows - 3), static_cast<std::int16_t>(cols / 2)};
  m.set_block(up, BlockId::Path);
  m.ladder_up = up;
  m.items[m.index(up)] = ItemId::LadderUp;
  m.spawn = up;
  return m;
}

// ---------------------------------------------------------------------------
// Fallback template: walled open room with fixed ladders and chests.

BlockId floor_ground(int floor) {
  switch (floor) {
    case 0: return BlockId::Grass;
    case 6: return BlockId::FireGrass;
    case 7: return BlockId::IceGrass;
    default: return BlockId::Path;
  }
}

float floor_light(int floor) {
  switch (floor) {
    case 2:
    case 5:
    case 7:
    case 8:
      return 0.0f;
    default:
      return 1.0f;
  }
}

FloorMap template_floor(Dims d, Tier tier, int floor, int chests) {
  FloorMap m = blank_floor(d, floor_ground(floor), tier == Tier::Classic ? 0.0f : floor_light(floor));
  const BlockId wall = floor == 0 || floor >= 5 ? BlockId::Stone : BlockId::Wall;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (i == 0 || j == 0 || i == m.rows - 1 || j == m.cols - 1)
        m.set_block({static_cast<std::int16_t>(i), static_cast<std::int16_t>(j)}, wall);
  if (floor == 0) {
    m.spawn = {static_cast<std::int16_t>(m.rows / 2), static_cast<std::int16_t>(m.cols / 2)};
    // Keep the basic resources reachable.
    m.set_block({static_cast<std::int16_t>(m.rows / 2 - 2), static_cast<std::int16_t>(m.cols / 2)}, BlockId::Tree);
    m.set_block({static_cast<std::int16_t>(m.rows / 2 + 2), static_cast<std::int16_t>(m.cols / 2)}, BlockId::Water);
    m.set_block({static_cast<std::int16_t>(m.rows / 2), static_cast<std::int16_t>(m.cols / 2 + 3)}, BlockId::Stone);
  } else {
    const Pos up{2, 2};
    m.ladder_up = up;
    m.items[m.index(up)] = ItemId::LadderUp;
    m.spawn = up;
  }
  if (tier == Tier::Extended && floor < kBossFloor) {
    const Pos down{static_cast<std::int16_t>(m.rows - 3), static_cast<std::int16_t>(m.cols - 3)};
    m.ladder_down = down;
    m.items[m.index(down)] = ItemId::LadderDown;
  }
  for (int i = 0; i < chests; ++i)
    m.set_block({static_cast<std::int16_t>(m.rows / 2), static_cast<std::int16_t>(4 + 3 * i)}, BlockId::Chest);
  if (floor == 4) {
    m.set_block({4, static_cast<std::int16_t>(m.cols - 5)}, BlockId::EnchantTableFire);
    m.set_block({6, static_cast<std::int16_t>(m.cols - 5)}, BlockId::EnchantTableIce);
  } else if (floor == 6) {
    m.set_block({4, static_cast<std::int16_t>(m.cols - 5)}, BlockId::EnchantTableFire);
  } else if (floor == 7) {
    m.set_block({4, static_cast<std::int16_t>(m.cols - 5)}, BlockId::EnchantTableIce);
  } else if (floor == kBossFloor) {
    m.set_block({3, static_cast<std::int16_t>(m.cols / 2)}, BlockId::Necromancer);
  }
  return m;
}

// ---------------------------------------------------------------------------

std::optional<FloorMap> generate_floor_attempt(const LevelParams& params, const WorldConfig& cfg, int floor,
                                               Sampler& rng) {
  const Tier tier = cfg.tier;
  switch (floor) {
    case 0: {
      FloorMap m = terrain_floor(cfg.overworld, params.overworld_angles, simd::TerrainThresholds{}, kOverworldPalette,
                                 true, tier == Tier::Classic ? 0.0f : 1.0f, rng);
      if (tier == Tier::Classic) {
        m.light.clear();
        return m;
      }
      std::vector<int> sizes;
      const std::vector<int> label = label_regions(m, sizes);
      const int home = label[m.index(m.spawn)];
      std::vector<Pos> region;
      for (std::size_t i = 0; i < label.size(); ++i)
        if (label[i] == home && home >= 0) region.push_back(pos_of(m, i));
      region.erase(std::remove(region.begin(), region.end(), m.spawn), region.end());
      place_ladders(m, 0, region, std::nullopt, rng);
      return m;
    }
    case 1: return rooms_floor(cfg.underground, 1, RoomStyle::Dungeon, cfg.chests_dungeon, rng);
    case 3: return rooms_floor(cfg.underground, 3, RoomStyle::Sewers, cfg.chests_sewers, rng);
    case 4: return rooms_floor(cfg.underground, 4, RoomStyle::Vaults, cfg.chests_vaults, rng);
    case 2:
    case 5: return cave_floor(cfg.underground, floor, rng);
    case 6:
    case 7: {
      const bool fire = floor == 6;
      std::vector<AngleField> fields;
      for (int ch = 0; ch < kOverworldChannels; ++ch)
        for (AngleField& f : random_channel(rng)) fields.push_back(std::move(f));
      FloorMap m = terrain_floor(cfg.underground, fields, realm_thresholds(fire), fire ? kFirePalette : kIcePalette,
                                 false, floor_light(floor), rng);
      std::vector<Pos> region = largest_region(m);
      if (region.size() < std::max<std::size_t>(40, m.blocks.size() / 20)) return std::nullopt;
      // The enchantment table sits on a region tile; ladders are picked after.
      const Pos table = region[rng.below(static_cast<std::uint32_t>(region.size()))];
      m.set_block(table, fire ? BlockId::EnchantTableFire : BlockId::EnchantTableIce);
      region = largest_region(m);
      place_ladders(m, floor, region, std::nullopt, rng);
      return m;
    }
    case kBossFloor: return graveyard_floor(cfg.underground);
    default: throw std::logic_error("floor index out of range");
  }
}

int chest_count(const WorldConfig& cfg, int floor) {
  switch (floor) {
    case 1: return cfg.chests_dungeon;
    case 3: return cfg.chests_sewers;
    case 4: return cfg.chests_vaults;
    default: return 0;
  }
}

FloorMap generate_floor(const LevelParams& params, const WorldConfig& cfg, int floor) {
  const RngStream base = RngStream::from_seed(params.per_floor_seeds[static_cast<std::size_t>(floor)]);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Sampler rng(base.split(streams::kRetryBase + static_cast<std::uint64_t>(attempt)));
    std::optional<FloorMap> m = generate_floor_attempt(params, cfg, floor, rng);
    if (m && floor_is_valid(*m, cfg.tier, floor)) return std::move(*m);
  }
  const Dims d = floor == 0 ? cfg.overworld : cfg.underground;
  return template_floor(d, cfg.tier, floor, chest_count(cfg, floor));
}

Loot draw_loot(Sampler& rng) {
  Loot loot;
  const int draws = 1 + static_cast<int>(rng.below(2));
  for (int i = 0; i < draws; ++i) {
    // Weighted table: potion 4, arrows 3, torches 3.
    const std::uint32_t roll = rng.below(10);
    if (roll < 4) loot.potions[rng.below(kNumPotions)] += 1;
    else if (roll < 7) loot.arrows = static_cast<std::uint8_t>(loot.arrows + 2 + rng.below(5));
    else loot.torches = static_cast<std::uint8_t>(loot.torches + 2 + rng.below(4));
  }
  return loot;
}

void check_dims(Dims d, const char* what) {
  for (const Octave& o : kOverworldOctaves)
    if (d.rows == 0 || d.cols == 0 || d.rows % o.frequency != 0 || d.cols % o.frequency != 0)
      throw std::invalid_argument(std::string(what) + " dimensions must be positive multiples of every octave frequency");
  if (d.rows > 1024 || d.cols > 1024) throw std::invalid_argument(std::string(what) + " dimensions too large");
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<double> perlin(Dims dims, std::span<const AngleField> angles, std::span<const Octave> octaves) {
  if (octaves.empty() || angles.size() != octaves.size())
    throw std::invalid_argument("perlin: need one angle field per octave");
  double total = 0.0;
  for (std::size_t i = 0; i < octaves.size(); ++i) {
    const Octave& o = octaves[i];
    if (o.frequency == 0 || dims.rows == 0 || dims.cols == 0 || dims.rows % o.frequency != 0 ||
        dims.cols % o.frequency != 0)
      throw std::invalid_argument("perlin: dimensions must be divisible by every octave frequency");
    if (angles[i].res != o.frequency ||
        angles[i].angles.size() != static_cast<std::size_t>(o.frequency + 1) * (o.frequency + 1))
      throw std::invalid_argument("perlin: angle field does not match its octave");
    total += o.amplitude;
  }
  if (!(total > 0.0)) throw std::invalid_argument("perlin: total amplitude must be positive");

  std::vector<double> out(static_cast<std::size_t>(dims.rows) * dims.cols, 0.0);
  for (std::size_t i = 0; i < octaves.size(); ++i) {
    const Lattice l = lattice_of(angles[i]);
    simd::perlin_accumulate({l.grad_row, l.grad_col, l.res}, dims.rows, dims.cols, octaves[i].amplitude, out);
  }
  for (double& v : out) v = std::clamp(v / total, -1.0, 1.0);
  return out;
}

double normalize_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

LevelParams make_level_params(const RngStream& stream) {
  Sampler rng(stream.split(streams::kLevelParams));
  LevelParams p;
  p.seed = rng.u64();
  for (int ch = 0; ch < kOverworldChannels; ++ch)
    for (AngleField& f : random_channel(rng)) p.overworld_angles.push_back(std::move(f));
  for (std::uint64_t& s : p.per_floor_seeds) s = rng.u64();
  return p;
}

World generate_world(const LevelParams& params, const WorldConfig& cfg) {
  if (params.overworld_angles.size() != kOverworldChannels * kOverworldOctaves.size())
    throw std::invalid_argument("generate_world: LevelParams has the wrong number of angle fields");
  check_dims(cfg.overworld, "overworld");
  if (cfg.tier == Tier::Extended) check_dims(cfg.underground, "underground");

  World w;
  w.tier = cfg.tier;
  w.level_id = params.seed;
  const int n_floors = cfg.tier == Tier::Classic ? 1 : kNumFloors;
  w.floors.reserve(static_cast<std::size_t>(n_floors));
  for (int f = 0; f < n_floors; ++f) w.floors.push_back(generate_floor(params, cfg, f));

  Sampler rng(RngStream::from_seed(params.seed).split(streams::kWorldShared));
  std::array<PotionEffect, kNumPotions> perm = {PotionEffect::HealthUp,   PotionEffect::ManaUp,
                                                PotionEffect::EnergyUp,   PotionEffect::HealthDown,
                                                PotionEffect::ManaDown,   PotionEffect::FoodDrinkUp};
  for (int i = kNumPotions - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint32_t>(i + 1))]);
  w.potion_permutation = perm;

  if (cfg.tier == Tier::Extended) {
    for (int f = 1; f < kNumFloors; ++f) {
      const FloorMap& m = w.floors[static_cast<std::size_t>(f)];
      const std::size_t first = w.chests.size();
      for (std::size_t i = 0; i < m.blocks.size(); ++i)
        if (m.blocks[i] == BlockId::Chest) w.chests.push_back({static_cast<std::uint8_t>(f), pos_of(m, i), draw_loot(rng)});
      const std::size_t count = w.chests.size() - first;
      if (count == 0) continue;
      if (f == 1) {
        w.chests[first + rng.below(static_cast<std::uint32_t>(count))].loot.bow = true;
        w.chests[first + rng.below(static_cast<std::uint32_t>(count))].loot.books += 1;
      } else if (f == 3) {
        w.chests[first + rng.below(static_cast<std::uint32_t>(count))].loot.books += 1;
      }
    }
  }
  return w;
}

std::span<const BlockId> floor_palette(Tier tier, int floor) {
  using B = BlockId;
  static const std::vector<B> kClassic = {B::Grass, B::Sand, B::Water, B::Stone, B::Path, B::Lava,
                                          B::Diamond, B::Iron, B::Coal, B::Tree};
  static const std::array<std::vector<B>, kNumFloors> kExtended = {{
      {B::Grass, B::Sand, B::Water, B::Stone, B::Path, B::Lava, B::Diamond, B::Iron, B::Coal, B::Tree},
      {B::Wall, B::MossyWall, B::Path, B::Chest, B::Fountain},
      {B::Stone, B::Path, B::Gravel, B::Stalagmite, B::Coal, B::Iron, B::Diamond, B::Sapphire},
      {B::Wall, B::MossyWall, B::Path, B::Water, B::Chest, B::Fountain},
      {B::Wall, B::MossyWall, B::Path, B::Chest, B::EnchantTableFire, B::EnchantTableIce},
      {B::Stone, B::Path, B::Water, B::Lava, B::Stalagmite, B::Coal, B::Iron, B::Diamond, B::Sapphire, B::Ruby},
      {B::FireGrass, B::Gravel, B::Lava, B::Stone, B::Path, B::Ruby, B::Iron, B::Coal, B::FireTree,
       B::EnchantTableFire, B::Chest},
      {B::IceGrass, B::Gravel, B::Water, B::Stone, B::Path, B::Sapphire, B::Iron, B::Coal, B::IceShrub,
       B::EnchantTableIce, B::Chest},
      {B::Wall, B::Path, B::Water, B::Grave, B::Grave2, B::Grave3, B::Necromancer, B::Chest},
  }};
  if (tier == Tier::Classic) return kClassic;
  return kExtended.at(static_cast<std::size_t>(floor));
}

// ---------------------------------------------------------------------------
// Mutation operators

LevelParams mutate_noise(const LevelParams& params, const RngStream& s, double range) {
  if (!(range >= 0.0)) throw std::invalid_argument("mutate_noise: range must be non-negative");
  LevelParams out = params;
  Sampler rng(s);
  for (AngleField& f : out.overworld_angles)
    for (double& a : f.angles) a = normalize_angle(a + rng.uniform(-range, range));
  return out;
}

namespace {

struct Window {
  int r0, c0, r1, c1;  // [r0, r1) x [c0, c1)
};

Window central_window(const FloorMap& m) {
  const int h = std::min<int>(kCentralWindow, m.rows);
  const int w = std::min<int>(kCentralWindow, m.cols);
  const int r0 = (m.rows - h) / 2;
  const int c0 = (m.cols - w) / 2;
  return {r0, c0, r0 + h, c0 + w};
}

bool swappable(const FloorMap& m, Pos p) { return !(p == m.spawn) && m.item(p) == ItemId::None; }

World apply_swap(const World& world, Pos a, Pos b, SwapTrace& trace) {
  World out = world;
  FloorMap& m = out.floors.front();
  const BlockId ba = m.block(a);
  m.set_block(a, m.block(b));
  m.set_block(b, ba);
  trace = {true, a, b};
  return out;
}

}  // namespace

World mutate_swap_traced(const World& world, const RngStream& s, SwapTrace& trace) {
  trace = {};
  if (world.floors.empty()) throw std::invalid_argument("mutate_swap: world has no overworld");
  const FloorMap& m = world.floors.front();
  const Window win = central_window(m);
  std::vector<Pos> first, second;
  for (int i = win.r0; i < win.r1; ++i)
    for (int j = win.c0; j < win.c1; ++j)
      if (const Pos p{static_cast<std::int16_t>(i), static_cast<std::int16_t>(j)}; swappable(m, p)) first.push_back(p);
  if (first.empty()) return world;
  Sampler rng(s);
  const Pos a = first[rng.below(static_cast<std::uint32_t>(first.size()))];
  const std::uint32_t n = static_cast<std::uint32_t>(m.blocks.size());
  for (int tries = 0; tries < 1024; ++tries) {
    const Pos b = pos_of(m, rng.below(n));
    if (!(b == a) && swappable(m, b)) return apply_swap(world, a, b, trace);
  }
  return world;
}

World mutate_swap(const World& world, const RngStream& s) {
  SwapTrace t;
  return mutate_swap_traced(world, s, t);
}

int rswap_class(BlockId b) {
  switch (b) {
    case BlockId::Stone:
    case BlockId::Coal:
    case BlockId::Iron:
    case BlockId::Diamond:
    case BlockId::Sapphire:
    case BlockId::Ruby:
      return 1;
    case BlockId::Grass:
    case BlockId::Tree:
      return 2;
    default:
      return 0;
  }
}

World mutate_rswap_traced(const World& world, const RngStream& s, SwapTrace& trace) {
  trace = {};
  if (world.floors.empty()) throw std::invalid_argument("mutate_rswap: world has no overworld");
  const FloorMap& m = world.floors.front();
  const Window win = central_window(m);
  std::vector<Pos> first;
  for (int i = win.r0; i < win.r1; ++i)
    for (int j = win.c0; j < win.c1; ++j)
      if (const Pos p{static_cast<std::int16_t>(i), static_cast<std::int16_t>(j)};
          swappable(m, p) && rswap_class(m.block(p)) != 0)
        first.push_back(p);
  if (first.empty()) return world;
  Sampler rng(s);
  const Pos a = first[rng.below(static_cast<std::uint32_t>(first.size()))];
  const BlockId ba = m.block(a);
  const int cls = rswap_class(ba);
  std::vector<Pos> second;
  for (std::size_t i = 0; i < m.blocks.size(); ++i) {
    const Pos p = pos_of(m, i);
    if (m.blocks[i] != ba && rswap_class(m.blocks[i]) == cls && swappable(m, p)) second.push_back(p);
  }
  if (second.empty()) return world;
  return apply_swap(world, a, second[rng.below(static_cast<std::uint32_t>(second.size()))], trace);
}

World mutate_rswap(const World& world, const RngStream& s) {
  SwapTrace t;
  return mutate_rswap_traced(world, s, t);
}

}  // namespace delve
