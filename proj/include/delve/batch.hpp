#pragma once
// N environments stepped together with auto-reset from an optimistic pool of
// M = ceil(N / reset_ratio) fresh worlds generated every batch step.

#include <atomic>
#include <condition_variable>
#include <exception>
#include <cstdint>
#include <functional>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "delve/engine.hpp"
#include "delve/obs.hpp"

namespace delve {

/// A fresh episode from one environment stream: LevelParams from the stream,
/// the world generated from them and episode dynamics on stream.split(kEpisode).
struct Episode {
  LevelParams params;
  GameState state;
};
Episode new_episode(const RngStream& stream, Tier tier, const EngineConfig& config = {});

enum class ObsMode : std::uint8_t { None, Symbolic, Tiles };

struct BatchConfig {
  std::uint32_t n_envs = 1;
  std::uint32_t reset_ratio = 16;
  Tier tier = Tier::Classic;
  std::uint32_t max_episode_length = kDefaultMaxEpisodeLength;
  std::uint32_t worker_threads = 1;
  ObsMode obs = ObsMode::None;
  int tile_px = 7;

  [[nodiscard]] std::uint32_t pool_size() const { return (n_envs + reset_ratio - 1) / reset_ratio; }
};

/// Fixed set of threads sharing jobs through an atomic index counter. The
/// calling thread participates, so a pool of size 1 spawns no threads.
class WorkerPool {
public:
  explicit WorkerPool(std::uint32_t threads);
  ~WorkerPool();
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  [[nodiscard]] std::uint32_t size() const { return static_cast<std::uint32_t>(workers_.size()) + 1; }

  /// Calls fn(i) for every i in [0, n), each index exactly once.
  void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

private:
  void worker_loop();
  void drain();

  std::vector<std::jthread> workers_;
  std::mutex mu_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  const std::function<void(std::size_t)>* job_ = nullptr;
  std::size_t job_n_ = 0;
  std::atomic<std::size_t> next_{0};
  std::exception_ptr error_;
  std::uint64_t generation_ = 0;
  std::uint32_t pending_ = 0;
  bool stop_ = false;
};

struct PoolEntry {
  LevelParams params;
  GameState state;
};

struct EpisodeStats {
  double episode_return = 0.0;
  std::uint32_t length = 0;
};

struct BatchMetrics {
  std::uint64_t steps = 0;
  std::uint64_t episodes = 0;
  double return_sum = 0.0;
  std::array<std::uint64_t, kNumExtendedAchievements> achievement_episodes{};  // completed episodes that unlocked each
  std::uint64_t resets_duplicated = 0;
};

struct BatchState {
  BatchConfig cfg;
  RngStream root;
  std::uint64_t step_index = 0;
  std::vector<GameState> envs;
  std::vector<std::uint64_t> env_level;  // LevelParams::seed of each env's current world
  std::vector<PoolEntry> pool;
  std::vector<bool> pool_used;
  std::vector<EpisodeStats> stats;
  BatchMetrics metrics;
  std::vector<float> obs;            // N * symbolic length when cfg.obs == Symbolic
  std::vector<Frame> frames;         // N frames when cfg.obs == Tiles
};

/// Terminal-aware record of one env's transition in a batch step.
struct EnvOutcome {
  double reward = 0.0;
  bool done = false;
  AchievementSet unlocked;
  Tenths health_delta;
  double episode_return = 0.0;   // running return, final when done
  std::uint32_t episode_length = 0;
  std::int32_t pool_index = -1;  // pool entry the env was reset from, when done
};

/// N envs seeded from RngStream::from_seed(seed).split(kBatchEnvBase + i).
/// Throws std::invalid_argument for n_envs == 0 or reset_ratio == 0.
BatchState batch_reset(const BatchConfig& cfg, std::uint64_t seed);

/// Steps every env, then replaces done envs with pool entries: the k-th done
/// env (by index) takes entry k mod M. Throws std::invalid_argument when
/// actions.size() != n_envs or an action is outside the tier.
void batch_step(BatchState& bs, std::span<const std::uint8_t> actions, std::span<EnvOutcome> outcomes,
                WorkerPool& workers);

/// Pool entry j of batch step t.
RngStream pool_stream(const RngStream& root, std::uint64_t step_index, std::uint32_t j);

/// P(X > m) for X ~ Binomial(n, p), summed in log space.
/// Throws std::invalid_argument unless 0 <= p <= 1 and m <= n.
double duplication_probability(std::uint32_t n, double p, std::uint32_t m);

}  // namespace delve
