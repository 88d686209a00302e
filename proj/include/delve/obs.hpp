#pragma once
// Observation codecs: flat symbolic vector, text lines and RGB tile frames.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "delve/state.hpp"

namespace delve {

// ---------------------------------------------------------------------------
// Symbolic layout

inline constexpr int kClassicViewRows = 7;
inline constexpr int kClassicViewCols = 9;
inline constexpr int kExtendedViewRows = 9;
inline constexpr int kExtendedViewCols = 11;

inline constexpr int kClassicBlockGroup = 16;     // block ids 1..16
inline constexpr int kClassicCreatureGroup = 5;   // none, zombie, cow, skeleton, arrow
inline constexpr int kExtendedBlockGroup = kNumBlocks;
inline constexpr int kExtendedItemGroup = kNumItems;
inline constexpr int kExtendedCreatureGroup = 36;  // none, 19 creatures, 6 projectiles, 10 reserved

inline constexpr int kClassicInventoryFields = 22;
inline constexpr int kExtendedInventoryFields = 50;
inline constexpr int kExtendedInventorySection = 447;  // fields + zero padding

inline constexpr std::size_t kClassicObsLen = 1345;
inline constexpr std::size_t kExtendedObsLen = 8268;

enum class Scaling : std::uint8_t {
  OneHot,     // one bit per value
  Unit,       // x as-is
  SqrtTenth,  // sqrt(n)/10
  Half,       // n/2
  Quarter,    // n/4
  Tenth,      // x/10
  Indicator,  // 0 or 1
  Enchant,    // 1 fire, 2 ice
  Padding,    // always 0
};

struct LayoutField {
  std::string name;
  std::size_t offset;
  std::size_t length;
  Scaling scaling;
};

struct SymbolicLayout {
  Tier tier;
  int view_rows;
  int view_cols;
  std::size_t block_group;
  std::size_t item_group;
  std::size_t creature_group;
  bool has_light;
  std::size_t per_tile;
  std::size_t map_len;
  std::size_t inventory_offset;
  std::size_t total_len;
  std::vector<LayoutField> inventory;  // in table order, padding last

  [[nodiscard]] std::size_t tile_offset(int view_row, int view_col) const {
    return (static_cast<std::size_t>(view_row) * static_cast<std::size_t>(view_cols) +
            static_cast<std::size_t>(view_col)) *
           per_tile;
  }
  [[nodiscard]] const LayoutField& field(std::string_view name) const;
};

const SymbolicLayout& symbolic_layout(Tier t);

inline constexpr std::string_view kLayoutVersion = "delve-symbolic/1";

/// Machine-readable manifest: version, per-tile groups and every inventory field.
nlohmann::json layout_manifest(Tier t);
/// FNV-1a 64 of the manifest's compact dump.
std::uint64_t layout_hash(Tier t);

/// Creature one-hot index on a tile: 0 none, then creature kinds, then projectiles.
int creature_slot(Tier t, CreatureKind k);
int projectile_slot(Tier t, ProjectileKind k);

// ---------------------------------------------------------------------------
// Encoding

/// Contents of one tile of the player's view.
struct TileView {
  BlockId block = BlockId::OutOfBounds;
  ItemId item = ItemId::None;
  int creature = 0;  // creature_slot / projectile_slot value
  float light = 1.0f;
  bool visible = true;

  friend bool operator==(const TileView&, const TileView&) = default;
};

/// The view grid centred on the player, row-major. The player is implied by the
/// view centre. Masked tiles are {Darkness, None, 0, light, false}.
std::vector<TileView> view_tiles(const GameState& s);

std::vector<float> encode_symbolic(const GameState& s);
/// Writes exactly symbolic_layout(s.tier).total_len values into `out`.
void encode_symbolic_into(const GameState& s, std::span<float> out);

struct DecodedObs {
  std::vector<TileView> tiles;
  Inventory inventory;          // counts recovered from the sqrt scaling
  std::array<Tenths, 5> stats{};  // health, food, drink, energy, mana
  int pickaxe = 0;
  int sword = 0;
  Direction facing = Direction::Down;
  bool sleeping = false;
  int floor = 0;
};

/// Inverse of encode_symbolic on the legal domain. Throws std::invalid_argument
/// on a wrong length or a group with more than one set bit.
DecodedObs decode_symbolic(Tier t, std::span<const float> obs);

// ---------------------------------------------------------------------------
// Text

/// One "<creature> on <item> on <block>" line per view tile ("darkness" when
/// masked), then "<NAME>: <value>" per inventory and stat field.
std::vector<std::string> render_text(const GameState& s);

// ---------------------------------------------------------------------------
// Tiles

struct Frame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// Status strip height in tiles below the map.
int strip_rows(Tier t);

/// Map view at `tile_px` pixels per tile with a status strip. tile_px must be
/// 7, 10 or 16; anything else throws std::invalid_argument.
Frame render_tiles(const GameState& s, int tile_px);

struct Rgb {
  std::uint8_t r, g, b;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};
Rgb block_colour(BlockId b);

}  // namespace delve
