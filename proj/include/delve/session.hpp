#pragma once
// One interactive episode driven by JSON messages. Transport-agnostic: the
// WebSocket server feeds each connection's text frames through handle_text.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "delve/engine.hpp"

namespace delve {

inline constexpr int kProtocolVersion = 1;
inline constexpr int kSessionTilePx = 16;

struct SessionConfig {
  Tier tier = Tier::Classic;
  std::uint64_t seed = 0;  // used by a reset without a seed, then incremented
  std::uint32_t max_episode_length = kDefaultMaxEpisodeLength;
};

class Session {
public:
  explicit Session(SessionConfig cfg = {});

  /// Replies to one message. Never throws for client mistakes; those produce
  /// {"t":"error","msg":...} and leave the session unchanged.
  nlohmann::json handle(const nlohmann::json& msg);
  /// Parses `text` as JSON first; a parse failure is an error reply.
  std::string handle_text(std::string_view text);

  [[nodiscard]] const GameState* state() const { return state_ ? &*state_ : nullptr; }
  [[nodiscard]] double reward_total() const { return reward_total_; }

  /// The state message for the current episode.
  [[nodiscard]] nlohmann::json state_message() const;

private:
  nlohmann::json on_hello() const;
  nlohmann::json on_reset(const nlohmann::json& msg);
  nlohmann::json on_step(const nlohmann::json& msg);
  nlohmann::json on_save() const;
  nlohmann::json on_load(const nlohmann::json& msg);

  SessionConfig cfg_;
  std::uint64_t next_seed_;
  std::optional<GameState> state_;
  double reward_total_ = 0.0;
};

nlohmann::json error_message(std::string_view msg);

}  // namespace delve
