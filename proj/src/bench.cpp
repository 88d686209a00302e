#include "delve/bench.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace delve {

std::string_view policy_name(PolicyKind p) { return p == PolicyKind::Random ? "random" : "scripted"; }

std::optional<PolicyKind> policy_from_name(std::string_view name) {
  if (name == "random") return PolicyKind::Random;
  if (name == "scripted") return PolicyKind::Scripted;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Scripted policy

namespace {

constexpr std::array<Direction, 4> kDirs = {Direction::Left, Direction::Right, Direction::Up, Direction::Down};

Action move_action(Direction d) { return static_cast<Action>(1 + to_int(d)); }

bool placeable(const GameState& s, Pos t) {
  const FloorMap& m = s.floor();
  return m.in_bounds(t) && is_walkable(m.block(t)) && m.item(t) == ItemId::None && creature_at(s, t) == nullptr;
}

bool table_nearby(const GameState& s) {
  for (int dr = -1; dr <= 1; ++dr)
    for (int dc = -1; dc <= 1; ++dc)
      if (s.floor().block(s.player.pos + Pos{static_cast<std::int16_t>(dr), static_cast<std::int16_t>(dc)}) ==
          BlockId::CraftingTable)
        return true;
  return false;
}

/// Breadth-first search over free walkable tiles for a tile next to a target.
/// Returns the action that makes progress: a move along the path, a turn to
/// face the target, or DO when already facing it.
template <class IsTarget>
std::optional<Action> approach(const GameState& s, IsTarget&& is_target) {
  const FloorMap& m = s.floor();
  const Pos start = s.player.pos;
  for (Direction d : kDirs) {
    if (is_target(start + offset(d))) return s.player.facing == d ? Action::Do : move_action(d);
  }
  const auto idx = [&](Pos p) { return m.index(p); };
  std::vector<std::int8_t> first(static_cast<std::size_t>(m.rows) * static_cast<std::size_t>(m.cols), -1);
  std::deque<Pos> queue;
  first[idx(start)] = 4;
  queue.push_back(start);
  while (!queue.empty()) {
    const Pos p = queue.front();
    queue.pop_front();
    for (Direction d : kDirs) {
      const Pos q = p + offset(d);
      if (!m.in_bounds(q) || first[idx(q)] != -1) continue;
      if (!is_walkable(m.block(q)) || creature_at(s, q) != nullptr) continue;
      const std::int8_t via = p == start ? static_cast<std::int8_t>(to_int(d)) : first[idx(p)];
      first[idx(q)] = via;
      for (Direction e : kDirs)
        if (is_target(q + offset(e))) return move_action(static_cast<Direction>(via));
      queue.push_back(q);
    }
  }
  return std::nullopt;
}

std::optional<Action> approach_block(const GameState& s, BlockId b) {
  const FloorMap& m = s.floor();
  return approach(s, [&](Pos p) { return m.block(p) == b; });
}

std::optional<Action> approach_cow(const GameState& s) {
  return approach(s, [&](Pos p) {
    const Creature* c = creature_at(s, p);
    return c != nullptr && creature_info(c->kind).type == CreatureType::Passive;
  });
}

Action wander(Sampler& rng) { return move_action(kDirs[rng.below(4)]); }

Action place_table(const GameState& s, Sampler& rng) {
  if (placeable(s, s.player.pos + offset(s.player.facing))) return Action::PlaceTable;
  for (Direction d : kDirs) {
    const Pos one = s.player.pos + offset(d);
    const Pos two = one + offset(d);
    if (placeable(s, one) && placeable(s, two)) return move_action(d);
  }
  return wander(rng);
}

}  // namespace

Action scripted_action(const GameState& s, Sampler& rng) {
  const Player& p = s.player;
  const Inventory& inv = s.inventory;
  const auto or_wander = [&](std::optional<Action> a) { return a ? *a : wander(rng); };

  if (p.drink <= Tenths::whole(3)) {
    if (auto a = approach_block(s, BlockId::Water)) return *a;
  }
  if (p.food <= Tenths::whole(3)) {
    if (auto a = approach_cow(s)) return *a;
  }
  if (p.energy <= Tenths::whole(2)) return Action::Sleep;

  if (p.pickaxe == 0) {
    if (table_nearby(s)) return inv.wood >= 1 ? Action::MakeWoodPickaxe : or_wander(approach_block(s, BlockId::Tree));
    if (inv.wood >= 2) return place_table(s, rng);
    return or_wander(approach_block(s, BlockId::Tree));
  }
  if (p.sword == 0 && table_nearby(s) && inv.wood >= 1) return Action::MakeWoodSword;
  if (inv.stone < 2) {
    if (auto a = approach_block(s, BlockId::Stone)) return *a;
  }
  if (inv.wood < 5) return or_wander(approach_block(s, BlockId::Tree));
  return wander(rng);
}

// ---------------------------------------------------------------------------
// Policies

namespace {

class RandomPolicy final : public Policy {
public:
  explicit RandomPolicy(const RngStream& s) : rng_(s) {}
  void act(const BatchState& bs, std::span<std::uint8_t> actions) override {
    const auto n = static_cast<std::uint32_t>(num_actions(bs.cfg.tier));
    for (std::uint8_t& a : actions) a = static_cast<std::uint8_t>(rng_.below(n));
  }

private:
  Sampler rng_;
};

class ScriptedPolicy final : public Policy {
public:
  explicit ScriptedPolicy(const RngStream& s) : rng_(s) {}
  void act(const BatchState& bs, std::span<std::uint8_t> actions) override {
    for (std::size_t i = 0; i < actions.size(); ++i)
      actions[i] = static_cast<std::uint8_t>(scripted_action(bs.envs[i], rng_));
  }

private:
  Sampler rng_;
};

}  // namespace

std::unique_ptr<Policy> make_policy(PolicyKind kind, const RngStream& stream) {
  if (kind == PolicyKind::Random) return std::make_unique<RandomPolicy>(stream);
  return std::make_unique<ScriptedPolicy>(stream);
}

// ---------------------------------------------------------------------------
// Sweep

std::vector<SweepRow> run_speed_sweep(const SweepConfig& cfg) {
  if (cfg.env_counts.empty()) throw std::invalid_argument("run_speed_sweep: env_counts must not be empty");
  std::vector<SweepRow> rows;
  WorkerPool workers(cfg.threads);
  for (std::uint32_t n : cfg.env_counts) {
    if (n == 0) throw std::invalid_argument("run_speed_sweep: env counts must be positive");
    BatchConfig bc;
    bc.n_envs = n;
    bc.reset_ratio = cfg.reset_ratio;
    bc.tier = cfg.tier;
    bc.max_episode_length = cfg.max_episode_length;
    bc.worker_threads = cfg.threads;
    bc.obs = cfg.obs;
    BatchState bs = batch_reset(bc, cfg.seed);
    auto policy = make_policy(cfg.policy, bs.root.split(streams::kBatchPolicy));
    std::vector<std::uint8_t> actions(n);
    std::vector<EnvOutcome> outcomes(n);

    const std::uint64_t warm = (cfg.warmup_steps + n - 1) / n;
    const std::uint64_t timed = std::max<std::uint64_t>(1, cfg.steps_per_count / n);
    for (std::uint64_t t = 0; t < warm; ++t) {
      policy->act(bs, actions);
      batch_step(bs, actions, outcomes, workers);
    }
    const auto t0 = std::chrono::steady_clock::now();
    for (std::uint64_t t = 0; t < timed; ++t) {
      policy->act(bs, actions);
      batch_step(bs, actions, outcomes, workers);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    SweepRow row;
    row.n_envs = n;
    row.threads = workers.size();
    row.steps = timed * n;
    row.seconds = secs;
    row.sps = secs > 0 ? static_cast<double>(row.steps) / secs : 0.0;
    rows.push_back(row);
  }
  auto best = std::max_element(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.sps < b.sps; });
  best->best = true;
  return rows;
}

// ---------------------------------------------------------------------------
// Rollout report

double RolloutReport::rate(std::string_view name) const {
  for (const AchievementRate& a : achievements)
    if (a.name == name) return a.rate;
  throw std::out_of_range("report has no achievement named " + std::string(name));
}

RolloutReport run_rollout_report(const RolloutConfig& cfg) {
  if (cfg.n_envs == 0 || cfg.total_steps < cfg.n_envs)
    throw std::invalid_argument("run_rollout_report: total_steps must be at least n_envs");
  BatchConfig bc;
  bc.n_envs = cfg.n_envs;
  bc.tier = cfg.tier;
  bc.max_episode_length = cfg.max_episode_length;
  bc.worker_threads = cfg.threads;
  BatchState bs = batch_reset(bc, cfg.seed);
  auto policy = make_policy(cfg.policy, bs.root.split(streams::kBatchPolicy));
  WorkerPool workers(cfg.threads);
  std::vector<std::uint8_t> actions(cfg.n_envs);
  std::vector<EnvOutcome> outcomes(cfg.n_envs);
  const std::uint64_t batch_steps = (cfg.total_steps + cfg.n_envs - 1) / cfg.n_envs;
  for (std::uint64_t t = 0; t < batch_steps; ++t) {
    policy->act(bs, actions);
    batch_step(bs, actions, outcomes, workers);
  }

  RolloutReport r;
  r.cfg = cfg;
  r.steps = bs.metrics.steps;
  r.completed_episodes = bs.metrics.episodes;
  r.max_return = max_achievement_return(cfg.tier);

  std::array<std::uint64_t, kNumExtendedAchievements> counts = bs.metrics.achievement_episodes;
  double return_sum = bs.metrics.return_sum;
  for (std::size_t i = 0; i < bs.envs.size(); ++i) {
    if (bs.stats[i].length == 0) continue;
    ++r.truncated_episodes;
    return_sum += bs.stats[i].episode_return;
    for (std::size_t b = 0; b < counts.size(); ++b) counts[b] += bs.envs[i].achievements.test(b) ? 1 : 0;
  }
  const std::uint64_t episodes = r.completed_episodes + r.truncated_episodes;
  r.mean_return = episodes > 0 ? return_sum / static_cast<double>(episodes) : 0.0;
  r.return_percent = 100.0 * r.mean_return / r.max_return;
  for (int a = 0; a < num_achievements(cfg.tier); ++a) {
    AchievementRate ar;
    ar.name = std::string(achievement_name(static_cast<Achievement>(a)));
    ar.episodes = counts[static_cast<std::size_t>(a)];
    ar.rate = episodes > 0 ? static_cast<double>(ar.episodes) / static_cast<double>(episodes) : 0.0;
    r.achievements.push_back(std::move(ar));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Output

namespace {

std::string_view tier_name(Tier t) { return t == Tier::Classic ? "classic" : "extended"; }

std::string_view obs_name(ObsMode o) {
  switch (o) {
    case ObsMode::None: return "none";
    case ObsMode::Symbolic: return "symbolic";
    case ObsMode::Tiles: return "tiles";
  }
  return "";
}

}  // namespace

nlohmann::json sweep_to_json(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  nlohmann::json j;
  j["kind"] = "speed_sweep";
  j["tier"] = tier_name(cfg.tier);
  j["policy"] = policy_name(cfg.policy);
  j["obs"] = obs_name(cfg.obs);
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["reset_ratio"] = cfg.reset_ratio;
  j["rows"] = nlohmann::json::array();
  for (const SweepRow& r : rows)
    j["rows"].push_back({{"workers", r.n_envs},
                         {"threads", r.threads},
                         {"steps", r.steps},
                         {"seconds", r.seconds},
                         {"sps", r.sps},
                         {"best", r.best}});
  return j;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream o;
  o << "workers,threads,steps,seconds,sps,best\n";
  for (const SweepRow& r : rows)
    o << r.n_envs << ',' << r.threads << ',' << r.steps << ',' << r.seconds << ',' << r.sps << ','
      << (r.best ? 1 : 0) << '\n';
  return o.str();
}

nlohmann::json report_to_json(const RolloutReport& r) {
  nlohmann::json j;
  j["kind"] = "rollout_report";
  j["tier"] = tier_name(r.cfg.tier);
  j["policy"] = policy_name(r.cfg.policy);
  j["seed"] = r.cfg.seed;
  j["n_envs"] = r.cfg.n_envs;
  j["steps"] = r.steps;
  j["completed_episodes"] = r.completed_episodes;
  j["truncated_episodes"] = r.truncated_episodes;
  j["mean_return"] = r.mean_return;
  j["max_return"] = r.max_return;
  j["return_percent"] = r.return_percent;
  j["achievements"] = nlohmann::json::array();
  for (const AchievementRate& a : r.achievements)
    j["achievements"].push_back({{"name", a.name}, {"episodes", a.episodes}, {"rate", a.rate}});
  return j;
}

std::string report_to_csv(const RolloutReport& r) {
  std::ostringstream o;
  o << "achievement,episodes,rate\n";
  for (const AchievementRate& a : r.achievements) o << a.name << ',' << a.episodes << ',' << a.rate << '\n';
  o << "RETURN_PERCENT," << (r.completed_episodes + r.truncated_episodes) << ',' << r.return_percent << '\n';
  return o.str();
}

}  // namespace delve
