#pragma once
// Versioned binary and JSON formats for LevelParams, World and GameState.
//
// Binary layout: "DELV" magic, u16 format version, u8 payload kind, then the
// payload fields in declaration order, little-endian, with u32 length prefixes
// for variable-length sequences. The JSON form wraps the same fields as
// {"format":"delve","version":N,"kind":"...","data":{...}}.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "delve/state.hpp"
#include "delve/worldgen.hpp"

namespace delve {

inline constexpr std::uint16_t kFormatVersion = 1;

enum class PayloadKind : std::uint8_t { LevelParams = 1, World = 2, GameState = 3 };

class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> to_binary(const LevelParams& v);
std::vector<std::uint8_t> to_binary(const World& v);
std::vector<std::uint8_t> to_binary(const GameState& v);

LevelParams level_params_from_binary(std::span<const std::uint8_t> bytes);
World world_from_binary(std::span<const std::uint8_t> bytes);
GameState game_state_from_binary(std::span<const std::uint8_t> bytes);

nlohmann::json to_json(const LevelParams& v);
nlohmann::json to_json(const World& v);
nlohmann::json to_json(const GameState& v);

LevelParams level_params_from_json(const nlohmann::json& j);
World world_from_json(const nlohmann::json& j);
GameState game_state_from_json(const nlohmann::json& j);

/// Payload kind of a binary blob, after checking magic and version.
PayloadKind peek_kind(std::span<const std::uint8_t> bytes);

std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Throws FormatError on malformed input.
std::vector<std::uint8_t> base64_decode(std::string_view text);

}  // namespace delve
