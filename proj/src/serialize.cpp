#include "delve/serialize.hpp"

#include <bit>
#include <cstring>
#include <type_traits>

#include <boost/beast/core/detail/base64.hpp>

namespace delve {

namespace {

// ---------------------------------------------------------------------------
// Field lists. Each record type lists its fields once; the four archives
// below (binary in/out, JSON in/out) all walk these lists.

template <class Ar> void visit(Ar& ar, Pos& v);
template <class Ar> void visit(Ar& ar, Tenths& v);
template <class Ar> void visit(Ar& ar, RngStream& v);
template <class Ar> void visit(Ar& ar, AngleField& v);
template <class Ar> void visit(Ar& ar, LevelParams& v);
template <class Ar> void visit(Ar& ar, FloorMap& v);
template <class Ar> void visit(Ar& ar, Loot& v);
template <class Ar> void visit(Ar& ar, ChestLoot& v);
template <class Ar> void visit(Ar& ar, World& v);
template <class Ar> void visit(Ar& ar, Inventory& v);
template <class Ar> void visit(Ar& ar, Player& v);
template <class Ar> void visit(Ar& ar, Creature& v);
template <class Ar> void visit(Ar& ar, CreatureArray& v);
template <class Ar> void visit(Ar& ar, DamageProfile& v);
template <class Ar> void visit(Ar& ar, Projectile& v);
template <class Ar> void visit(Ar& ar, ProjectileArray& v);
template <class Ar> void visit(Ar& ar, FloorCreatures& v);
template <class Ar> void visit(Ar& ar, Plant& v);
template <class Ar> void visit(Ar& ar, BossState& v);
template <class Ar> void visit(Ar& ar, GameState& v);

template <class T> struct is_vector : std::false_type {};
template <class T> struct is_vector<std::vector<T>> : std::true_type {};
template <class T> struct is_array : std::false_type {};
template <class T, std::size_t N> struct is_array<std::array<T, N>> : std::true_type {};
template <class T> struct is_optional : std::false_type {};
template <class T> struct is_optional<std::optional<T>> : std::true_type {};
template <class T> struct is_bitset : std::false_type {};
template <std::size_t N> struct is_bitset<std::bitset<N>> : std::true_type {};

template <class Ar, class T>
concept Visitable = requires(Ar& ar, T& t) { visit(ar, t); };

template <class T>
concept Scalar = std::is_arithmetic_v<T> || std::is_enum_v<T>;

// ---------------------------------------------------------------------------
// Binary

struct BinOut {
  std::vector<std::uint8_t>& buf;

  template <class T>
  void raw(T v) {
    if constexpr (std::is_enum_v<T>) {
      raw(static_cast<std::underlying_type_t<T>>(v));
    } else if constexpr (std::is_same_v<T, bool>) {
      buf.push_back(v ? 1 : 0);
    } else if constexpr (std::is_floating_point_v<T>) {
      using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
      raw(std::bit_cast<U>(v));
    } else {
      using U = std::make_unsigned_t<T>;
      const U u = static_cast<U>(v);
      for (std::size_t i = 0; i < sizeof(T); ++i) buf.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
    }
  }

  template <class T>
  void operator()(const char*, T& v) { put(v); }

  template <class T>
  void put(T& v) {
    if constexpr (Scalar<T>) {
      raw(v);
    } else if constexpr (is_vector<T>::value) {
      raw(static_cast<std::uint32_t>(v.size()));
      for (auto& e : v) put(e);
    } else if constexpr (is_array<T>::value) {
      for (auto& e : v) put(e);
    } else if constexpr (is_optional<T>::value) {
      raw(v.has_value());
      if (v) put(*v);
    } else if constexpr (is_bitset<T>::value) {
      for (std::size_t i = 0; i < v.size(); i += 8) {
        std::uint8_t byte = 0;
        for (std::size_t b = 0; b < 8 && i + b < v.size(); ++b) byte |= static_cast<std::uint8_t>(v[i + b]) << b;
        raw(byte);
      }
    } else {
      static_assert(Visitable<BinOut, T>);
      visit(*this, v);
    }
  }
};

struct BinIn {
  std::span<const std::uint8_t> data;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (data.size() - pos < n) throw FormatError("binary payload truncated");
  }

  template <class T>
  T raw() {
    if constexpr (std::is_enum_v<T>) {
      return static_cast<T>(raw<std::underlying_type_t<T>>());
    } else if constexpr (std::is_same_v<T, bool>) {
      need(1);
      const std::uint8_t b = data[pos++];
      if (b > 1) throw FormatError("binary payload has a malformed bool");
      return b == 1;
    } else if constexpr (std::is_floating_point_v<T>) {
      using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
      return std::bit_cast<T>(raw<U>());
    } else {
      using U = std::make_unsigned_t<T>;
      need(sizeof(T));
      U u = 0;
      for (std::size_t i = 0; i < sizeof(T); ++i) u |= static_cast<U>(static_cast<U>(data[pos + i]) << (8 * i));
      pos += sizeof(T);
      return static_cast<T>(u);
    }
  }

  template <class T>
  void operator()(const char*, T& v) { get(v); }

  template <class T>
  void get(T& v) {
    if constexpr (Scalar<T>) {
      v = raw<T>();
    } else if constexpr (is_vector<T>::value) {
      const auto n = raw<std::uint32_t>();
      if (n > data.size() - pos) throw FormatError("binary payload sequence length exceeds the payload");
      v.clear();
      v.resize(n);
      for (auto& e : v) get(e);
    } else if constexpr (is_array<T>::value) {
      for (auto& e : v) get(e);
    } else if constexpr (is_optional<T>::value) {
      if (raw<bool>()) {
        v.emplace();
        get(*v);
      } else {
        v.reset();
      }
    } else if constexpr (is_bitset<T>::value) {
      v.reset();
      for (std::size_t i = 0; i < v.size(); i += 8) {
        const auto byte = raw<std::uint8_t>();
        for (std::size_t b = 0; b < 8 && i + b < v.size(); ++b) v[i + b] = (byte >> b) & 1u;
      }
    } else {
      static_assert(Visitable<BinIn, T>);
      visit(*this, v);
    }
  }
};

// ---------------------------------------------------------------------------
// JSON

struct JsonOut {
  nlohmann::json j = nlohmann::json::object();

  template <class T>
  void operator()(const char* name, T& v) { j[name] = encode(v); }

  template <class T>
  static nlohmann::json encode(T& v) {
    if constexpr (std::is_enum_v<T>) {
      return static_cast<std::int64_t>(v);
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      return std::to_string(v);  // keeps 64-bit seeds exact for any JSON reader
    } else if constexpr (std::is_arithmetic_v<T>) {
      return v;
    } else if constexpr (is_vector<T>::value || is_array<T>::value) {
      nlohmann::json a = nlohmann::json::array();
      for (auto& e : v) a.push_back(encode(e));
      return a;
    } else if constexpr (is_optional<T>::value) {
      return v ? encode(*v) : nlohmann::json(nullptr);
    } else if constexpr (is_bitset<T>::value) {
      return v.to_string();
    } else {
      JsonOut sub;
      visit(sub, v);
      return std::move(sub.j);
    }
  }
};

struct JsonIn {
  const nlohmann::json& j;

  template <class T>
  void operator()(const char* name, T& v) {
    if (!j.contains(name)) throw FormatError(std::string("json payload is missing field ") + name);
    decode(j.at(name), v);
  }

  template <class T>
  static void decode(const nlohmann::json& x, T& v) {
    try {
      if constexpr (std::is_enum_v<T>) {
        v = static_cast<T>(x.get<std::underlying_type_t<T>>());
      } else if constexpr (std::is_same_v<T, std::uint64_t>) {
        v = x.is_string() ? std::stoull(x.get<std::string>()) : x.get<std::uint64_t>();
      } else if constexpr (std::is_arithmetic_v<T>) {
        v = x.get<T>();
      } else if constexpr (is_vector<T>::value) {
        if (!x.is_array()) throw FormatError("json payload expected an array");
        v.clear();
        v.resize(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) decode(x[i], v[i]);
      } else if constexpr (is_array<T>::value) {
        if (!x.is_array() || x.size() != v.size()) throw FormatError("json payload array has the wrong length");
        for (std::size_t i = 0; i < v.size(); ++i) decode(x[i], v[i]);
      } else if constexpr (is_optional<T>::value) {
        if (x.is_null()) {
          v.reset();
        } else {
          v.emplace();
          decode(x, *v);
        }
      } else if constexpr (is_bitset<T>::value) {
        v = T(x.get<std::string>());
      } else {
        if (!x.is_object()) throw FormatError("json payload expected an object");
        JsonIn sub{x};
        visit(sub, v);
      }
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("json payload: ") + e.what());
    } catch (const std::logic_error& e) {
      throw FormatError(std::string("json payload: ") + e.what());
    }
  }
};

// ---------------------------------------------------------------------------

template <class Ar> void visit(Ar& ar, Pos& v) {
  ar("row", v.row);
  ar("col", v.col);
}

template <class Ar> void visit(Ar& ar, Tenths& v) {
  std::int32_t raw = v.raw();
  ar("tenths", raw);
  v = Tenths(raw);
}

template <class Ar> void visit(Ar& ar, RngStream& v) {
  auto key = v.key();
  auto base = v.base();
  auto position = v.position();
  ar("key", key);
  ar("base", base);
  ar("position", position);
  v = RngStream(key, base, position);
}

template <class Ar> void visit(Ar& ar, AngleField& v) {
  ar("res", v.res);
  ar("angles", v.angles);
}

template <class Ar> void visit(Ar& ar, LevelParams& v) {
  ar("seed", v.seed);
  ar("overworld_angles", v.overworld_angles);
  ar("per_floor_seeds", v.per_floor_seeds);
}

template <class Ar> void visit(Ar& ar, FloorMap& v) {
  ar("rows", v.rows);
  ar("cols", v.cols);
  ar("blocks", v.blocks);
  ar("items", v.items);
  ar("light", v.light);
  ar("spawn", v.spawn);
  ar("ladder_down", v.ladder_down);
  ar("ladder_up", v.ladder_up);
}

template <class Ar> void visit(Ar& ar, Loot& v) {
  ar("arrows", v.arrows);
  ar("torches", v.torches);
  ar("books", v.books);
  ar("potions", v.potions);
  ar("bow", v.bow);
}

template <class Ar> void visit(Ar& ar, ChestLoot& v) {
  ar("floor", v.floor);
  ar("pos", v.pos);
  ar("loot", v.loot);
}

template <class Ar> void visit(Ar& ar, World& v) {
  ar("tier", v.tier);
  ar("level_id", v.level_id);
  ar("floors", v.floors);
  ar("potion_permutation", v.potion_permutation);
  ar("chests", v.chests);
}

template <class Ar> void visit(Ar& ar, Inventory& v) {
  ar("wood", v.wood);
  ar("stone", v.stone);
  ar("coal", v.coal);
  ar("iron", v.iron);
  ar("diamond", v.diamond);
  ar("sapphire", v.sapphire);
  ar("ruby", v.ruby);
  ar("sapling", v.sapling);
  ar("torch", v.torch);
  ar("arrow", v.arrow);
  ar("book", v.book);
  ar("potions", v.potions);
}

template <class Ar> void visit(Ar& ar, Player& v) {
  ar("floor", v.floor);
  ar("pos", v.pos);
  ar("facing", v.facing);
  ar("health", v.health);
  ar("food", v.food);
  ar("drink", v.drink);
  ar("energy", v.energy);
  ar("mana", v.mana);
  ar("xp", v.xp);
  ar("dexterity", v.dexterity);
  ar("strength", v.strength);
  ar("intelligence", v.intelligence);
  ar("sword", v.sword);
  ar("pickaxe", v.pickaxe);
  ar("bow", v.bow);
  ar("armour", v.armour);
  ar("sword_enchant", v.sword_enchant);
  ar("bow_enchant", v.bow_enchant);
  ar("armour_enchants", v.armour_enchants);
  ar("learned_fireball", v.learned_fireball);
  ar("learned_iceball", v.learned_iceball);
  ar("sleeping", v.sleeping);
  ar("resting", v.resting);
  ar("hunger", v.hunger);
  ar("thirst", v.thirst);
  ar("fatigue", v.fatigue);
  ar("recover", v.recover);
  ar("mana_clock", v.mana_clock);
}

template <class Ar> void visit(Ar& ar, Creature& v) {
  ar("kind", v.kind);
  ar("pos", v.pos);
  ar("health", v.health);
  ar("cooldown", v.cooldown);
  ar("alive", v.alive);
}

template <class Ar> void visit(Ar& ar, CreatureArray& v) {
  ar("capacity", v.capacity);
  ar("lanes", v.lanes);
}

template <class Ar> void visit(Ar& ar, DamageProfile& v) { ar("tenths", v.tenths); }

template <class Ar> void visit(Ar& ar, Projectile& v) {
  ar("kind", v.kind);
  ar("pos", v.pos);
  ar("dir", v.dir);
  ar("damage", v.damage);
  ar("alive", v.alive);
}

template <class Ar> void visit(Ar& ar, ProjectileArray& v) {
  ar("capacity", v.capacity);
  ar("lanes", v.lanes);
}

template <class Ar> void visit(Ar& ar, FloorCreatures& v) {
  ar("melee", v.melee);
  ar("ranged", v.ranged);
  ar("passive", v.passive);
  ar("player_projectiles", v.player_projectiles);
  ar("enemy_projectiles", v.enemy_projectiles);
}

template <class Ar> void visit(Ar& ar, Plant& v) {
  ar("floor", v.floor);
  ar("pos", v.pos);
  ar("age", v.age);
  ar("alive", v.alive);
}

template <class Ar> void visit(Ar& ar, BossState& v) {
  ar("wave", v.wave);
  ar("health", v.health);
  ar("vulnerable", v.vulnerable);
}

template <class Ar> void visit(Ar& ar, GameState& v) {
  ar("tier", v.tier);
  ar("max_episode_length", v.max_episode_length);
  ar("level_id", v.level_id);
  ar("floors", v.floors);
  ar("potion_permutation", v.potion_permutation);
  ar("chests", v.chests);
  ar("player", v.player);
  ar("inventory", v.inventory);
  ar("creatures", v.creatures);
  ar("plants", v.plants);
  ar("achievements", v.achievements);
  ar("time", v.time);
  ar("day_phase", v.day_phase);
  ar("daylight", v.daylight);
  ar("floors_visited", v.floors_visited);
  ar("floor_cleared", v.floor_cleared);
  ar("kills", v.kills);
  ar("boss", v.boss);
  ar("done", v.done);
  ar("rng", v.rng);
}

// ---------------------------------------------------------------------------

constexpr std::array<std::uint8_t, 4> kMagic = {'D', 'E', 'L', 'V'};

std::string_view kind_name(PayloadKind k) {
  switch (k) {
    case PayloadKind::LevelParams: return "level_params";
    case PayloadKind::World: return "world";
    case PayloadKind::GameState: return "game_state";
  }
  return "";
}

template <class T>
std::vector<std::uint8_t> write_binary(const T& value, PayloadKind kind) {
  std::vector<std::uint8_t> buf(kMagic.begin(), kMagic.end());
  BinOut out{buf};
  out.raw(kFormatVersion);
  out.raw(kind);
  // The archive walks fields through non-const references but never writes.
  out.put(const_cast<T&>(value));
  return buf;
}

template <class T>
T read_binary(std::span<const std::uint8_t> bytes, PayloadKind kind) {
  if (peek_kind(bytes) != kind) throw FormatError("binary payload holds a different kind of object");
  BinIn in{bytes, kMagic.size() + 3};
  T value{};
  in.get(value);
  if (in.pos != bytes.size()) throw FormatError("binary payload has trailing bytes");
  return value;
}

template <class T>
nlohmann::json write_json(const T& value, PayloadKind kind) {
  return {{"format", "delve"},
          {"version", kFormatVersion},
          {"kind", kind_name(kind)},
          {"data", JsonOut::encode(const_cast<T&>(value))}};
}

template <class T>
T read_json(const nlohmann::json& j, PayloadKind kind) {
  if (!j.is_object() || j.value("format", "") != "delve") throw FormatError("json payload is not a delve document");
  if (j.value("version", 0) != kFormatVersion) throw FormatError("json payload has an unsupported version");
  if (j.value("kind", "") != kind_name(kind)) throw FormatError("json payload holds a different kind of object");
  if (!j.contains("data")) throw FormatError("json payload has no data");
  T value{};
  JsonIn::decode(j.at("data"), value);
  return value;
}

void check_state(const GameState& s) {
  const std::size_t floors = s.tier == Tier::Classic ? 1 : kNumFloors;
  if (s.floors.size() != floors) throw FormatError("game state has the wrong number of floors");
  if (s.player.floor >= floors) throw FormatError("game state player floor out of range");
  for (const FloorMap& m : s.floors) {
    const auto n = static_cast<std::size_t>(m.rows) * static_cast<std::size_t>(m.cols);
    if (m.rows <= 0 || m.cols <= 0 || m.blocks.size() != n || m.items.size() != n ||
        (!m.light.empty() && m.light.size() != n))
      throw FormatError("game state floor grid sizes are inconsistent");
  }
}

}  // namespace

PayloadKind peek_kind(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kMagic.size() + 3 || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin()))
    throw FormatError("binary payload has no delve header");
  BinIn in{bytes, kMagic.size()};
  if (in.raw<std::uint16_t>() != kFormatVersion) throw FormatError("binary payload has an unsupported version");
  const auto kind = in.raw<std::uint8_t>();
  if (kind < 1 || kind > 3) throw FormatError("binary payload has an unknown kind");
  return static_cast<PayloadKind>(kind);
}

std::vector<std::uint8_t> to_binary(const LevelParams& v) { return write_binary(v, PayloadKind::LevelParams); }
std::vector<std::uint8_t> to_binary(const World& v) { return write_binary(v, PayloadKind::World); }
std::vector<std::uint8_t> to_binary(const GameState& v) { return write_binary(v, PayloadKind::GameState); }

LevelParams level_params_from_binary(std::span<const std::uint8_t> bytes) {
  return read_binary<LevelParams>(bytes, PayloadKind::LevelParams);
}
World world_from_binary(std::span<const std::uint8_t> bytes) { return read_binary<World>(bytes, PayloadKind::World); }
GameState game_state_from_binary(std::span<const std::uint8_t> bytes) {
  GameState s = read_binary<GameState>(bytes, PayloadKind::GameState);
  check_state(s);
  return s;
}

nlohmann::json to_json(const LevelParams& v) { return write_json(v, PayloadKind::LevelParams); }
nlohmann::json to_json(const World& v) { return write_json(v, PayloadKind::World); }
nlohmann::json to_json(const GameState& v) { return write_json(v, PayloadKind::GameState); }

LevelParams level_params_from_json(const nlohmann::json& j) { return read_json<LevelParams>(j, PayloadKind::LevelParams); }
World world_from_json(const nlohmann::json& j) { return read_json<World>(j, PayloadKind::World); }
GameState game_state_from_json(const nlohmann::json& j) {
  GameState s = read_json<GameState>(j, PayloadKind::GameState);
  check_state(s);
  return s;
}

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  namespace b64 = boost::beast::detail::base64;
  std::string out(b64::encoded_size(bytes.size()), '\0');
  out.resize(b64::encode(out.data(), bytes.data(), bytes.size()));
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  namespace b64 = boost::beast::detail::base64;
  if (text.size() % 4 != 0) throw FormatError("base64 text length is not a multiple of 4");
  std::vector<std::uint8_t> out(b64::decoded_size(text.size()));
  const auto [written, read] = b64::decode(out.data(), text.data(), text.size());
  // Beast stops at the first '='; only up to two trailing pad characters may follow.
  std::size_t pad = 0;
  while (pad < 2 && pad < text.size() && text[text.size() - 1 - pad] == '=') ++pad;
  if (read != text.size() - pad) throw FormatError("base64 text has invalid characters");
  out.resize(written);
  return out;
}

}  // namespace delve
