#include "delve/session.hpp"

#include <stdexcept>

#include "delve/batch.hpp"
#include "delve/catalog.hpp"
#include "delve/obs.hpp"
#include "delve/serialize.hpp"

namespace delve {

using nlohmann::json;

namespace {

class ClientError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string_view tier_name(Tier t) { return t == Tier::Classic ? "classic" : "extended"; }

json achievement_names(const AchievementSet& set) {
  json out = json::array();
  for (std::size_t b = 0; b < set.size(); ++b)
    if (set.test(b)) out.push_back(achievement_name(static_cast<Achievement>(b)));
  return out;
}

json inventory_json(const GameState& s) {
  const Inventory& i = s.inventory;
  const Player& p = s.player;
  json inv = {
      {"health", p.health.value()}, {"food", p.food.value()},   {"drink", p.drink.value()},
      {"energy", p.energy.value()}, {"wood", i.wood},           {"stone", i.stone},
      {"coal", i.coal},             {"iron", i.iron},           {"diamond", i.diamond},
      {"sapling", i.sapling},       {"pickaxe", p.pickaxe},     {"sword", p.sword},
      {"floor", p.floor},           {"time", s.time},           {"sleeping", p.sleeping},
  };
  if (s.tier == Tier::Extended) {
    inv["mana"] = p.mana.value();
    inv["sapphire"] = i.sapphire;
    inv["ruby"] = i.ruby;
    inv["torch"] = i.torch;
    inv["arrow"] = i.arrow;
    inv["book"] = i.book;
    inv["potions"] = i.potions;
    inv["bow"] = p.bow;
    inv["armour"] = p.armour;
    inv["xp"] = p.xp;
    inv["dexterity"] = p.dexterity;
    inv["strength"] = p.strength;
    inv["intelligence"] = p.intelligence;
    inv["resting"] = p.resting;
    inv["learned_fireball"] = p.learned_fireball;
    inv["learned_iceball"] = p.learned_iceball;
  }
  return inv;
}

std::uint64_t require_u64(const json& msg, const char* key) {
  const auto it = msg.find(key);
  if (it == msg.end()) throw ClientError(std::string("missing field \"") + key + "\"");
  if (it->is_number_unsigned()) return it->get<std::uint64_t>();
  if (it->is_number_integer() && it->get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(it->get<std::int64_t>());
  throw ClientError(std::string("field \"") + key + "\" must be a non-negative integer");
}

}  // namespace

json error_message(std::string_view msg) { return json{{"t", "error"}, {"msg", msg}}; }

Session::Session(SessionConfig cfg) : cfg_(cfg), next_seed_(cfg.seed) {}

json Session::handle(const json& msg) {
  try {
    if (!msg.is_object()) throw ClientError("message must be a JSON object");
    const auto t = msg.find("t");
    if (t == msg.end() || !t->is_string()) throw ClientError("message needs a string field \"t\"");
    const std::string& kind = t->get_ref<const std::string&>();
    if (kind == "hello") return on_hello();
    if (kind == "reset") return on_reset(msg);
    if (kind == "step") return on_step(msg);
    if (kind == "save") return on_save();
    if (kind == "load") return on_load(msg);
    throw ClientError("unknown message type \"" + kind + "\"");
  } catch (const ClientError& e) {
    return error_message(e.what());
  } catch (const FormatError& e) {
    return error_message(std::string("bad blob: ") + e.what());
  }
}

std::string Session::handle_text(std::string_view text) {
  json msg = json::parse(text, nullptr, false);
  if (msg.is_discarded()) return error_message("malformed JSON").dump();
  return handle(msg).dump();
}

json Session::on_hello() const {
  json actions = json::array();
  for (int a = 0; a < num_actions(cfg_.tier); ++a) {
    const auto act = static_cast<Action>(a);
    actions.push_back({{"id", a}, {"name", action_name(act)}, {"key", action_key(act)}});
  }
  json achievements = json::array();
  for (int a = 0; a < num_achievements(cfg_.tier); ++a) achievements.push_back(achievement_name(static_cast<Achievement>(a)));
  return {{"t", "hello"},
          {"protocol", kProtocolVersion},
          {"tier", tier_name(cfg_.tier)},
          {"tile_px", kSessionTilePx},
          {"actions", std::move(actions)},
          {"achievements", std::move(achievements)}};
}

json Session::on_reset(const json& msg) {
  std::uint64_t seed = next_seed_;
  if (msg.contains("seed")) seed = require_u64(msg, "seed");
  else ++next_seed_;
  Episode e = new_episode(RngStream::from_seed(seed), cfg_.tier, EngineConfig{cfg_.max_episode_length});
  state_ = std::move(e.state);
  reward_total_ = 0.0;
  return state_message();
}

json Session::on_step(const json& msg) {
  if (!state_) throw ClientError("no episode; send reset first");
  const std::uint64_t a = require_u64(msg, "action");
  if (a >= static_cast<std::uint64_t>(num_actions(state_->tier)))
    throw ClientError("action " + std::to_string(a) + " is not valid in the " + std::string(tier_name(state_->tier)) +
                      " tier");
  if (state_->done) throw ClientError("episode is over; send reset");
  const StepResult r = step_inplace(*state_, static_cast<Action>(a));
  reward_total_ += r.reward;
  json out = state_message();
  out["reward"] = r.reward;
  out["unlocked"] = achievement_names(r.unlocked);
  return out;
}

json Session::on_save() const {
  if (!state_) throw ClientError("no episode to save");
  return {{"t", "saved"}, {"blob", base64_encode(to_binary(*state_))}, {"reward_total", reward_total_}};
}

json Session::on_load(const json& msg) {
  const auto it = msg.find("blob");
  if (it == msg.end() || !it->is_string()) throw ClientError("load needs a string field \"blob\"");
  const std::vector<std::uint8_t> bytes = base64_decode(it->get_ref<const std::string&>());
  GameState s = game_state_from_binary(bytes);
  double total = 0.0;
  if (const auto rt = msg.find("reward_total"); rt != msg.end()) {
    if (!rt->is_number()) throw ClientError("field \"reward_total\" must be a number");
    total = rt->get<double>();
  }
  state_ = std::move(s);
  reward_total_ = total;
  return state_message();
}

json Session::state_message() const {
  const GameState& s = *state_;
  const Frame f = render_tiles(s, kSessionTilePx);
  return {{"t", "state"},
          {"obs_text", render_text(s)},
          {"tiles", {{"w", f.width}, {"h", f.height}, {"rgb_base64", base64_encode(f.rgb)}}},
          {"inv", inventory_json(s)},
          {"achievements", achievement_names(s.achievements)},
          {"reward_total", reward_total_},
          {"done", s.done}};
}

}  // namespace delve
