#pragma once
// Throughput sweeps and rollout reports over the batch runner.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "delve/batch.hpp"

namespace delve {

enum class PolicyKind : std::uint8_t { Random, Scripted };

std::string_view policy_name(PolicyKind p);
std::optional<PolicyKind> policy_from_name(std::string_view name);

class Policy {
public:
  virtual ~Policy() = default;
  /// One action per env, appended in env order.
  virtual void act(const BatchState& bs, std::span<std::uint8_t> actions) = 0;
};

/// Random draws come from `stream`, so a policy's choices are a pure function
/// of the stream and the states it sees.
std::unique_ptr<Policy> make_policy(PolicyKind kind, const RngStream& stream);

/// Early tech-tree script for the overworld: gather wood, place a table, craft
/// a wood pickaxe, mine stone; then drink, eat and sleep as needed while
/// collecting more wood and stone. Reads the full state.
Action scripted_action(const GameState& s, Sampler& rng);

// ---------------------------------------------------------------------------

struct SweepConfig {
  Tier tier = Tier::Classic;
  std::vector<std::uint32_t> env_counts = {1};
  std::uint64_t steps_per_count = 10000;  // env steps timed per row
  std::uint64_t warmup_steps = 100;       // env steps excluded from timing
  PolicyKind policy = PolicyKind::Random;
  ObsMode obs = ObsMode::None;
  std::uint64_t seed = 0;
  std::uint32_t threads = 1;
  std::uint32_t reset_ratio = 16;
  std::uint32_t max_episode_length = kDefaultMaxEpisodeLength;
};

struct SweepRow {
  std::uint32_t n_envs = 0;
  std::uint32_t threads = 0;
  std::uint64_t steps = 0;
  double seconds = 0.0;
  double sps = 0.0;
  bool best = false;
};

std::vector<SweepRow> run_speed_sweep(const SweepConfig& cfg);

struct RolloutConfig {
  Tier tier = Tier::Classic;
  std::uint32_t n_envs = 16;
  std::uint64_t total_steps = 100000;
  PolicyKind policy = PolicyKind::Random;
  std::uint64_t seed = 0;
  std::uint32_t threads = 1;
  std::uint32_t max_episode_length = kDefaultMaxEpisodeLength;
};

struct AchievementRate {
  std::string name;
  std::uint64_t episodes = 0;
  double rate = 0.0;
};

struct RolloutReport {
  RolloutConfig cfg;
  std::uint64_t steps = 0;
  std::uint64_t completed_episodes = 0;
  std::uint64_t truncated_episodes = 0;  // still running when the budget ran out
  double mean_return = 0.0;
  int max_return = 0;
  double return_percent = 0.0;
  std::vector<AchievementRate> achievements;

  [[nodiscard]] double rate(std::string_view name) const;
};

/// Steps ceil(total_steps / n_envs) batch steps. Episodes still running at the
/// end count towards the rates with whatever they unlocked so far.
/// Throws std::invalid_argument when total_steps < n_envs.
RolloutReport run_rollout_report(const RolloutConfig& cfg);

nlohmann::json sweep_to_json(const SweepConfig& cfg, const std::vector<SweepRow>& rows);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
nlohmann::json report_to_json(const RolloutReport& r);
std::string report_to_csv(const RolloutReport& r);

}  // namespace delve
