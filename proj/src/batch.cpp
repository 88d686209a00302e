#include "delve/batch.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace delve {

Episode new_episode(const RngStream& stream, Tier tier, const EngineConfig& config) {
  Episode e;
  e.params = make_level_params(stream);
  const World world = generate_world(e.params, tier);
  e.state = reset(world, tier, stream.split(streams::kEpisode), config);
  return e;
}

// ---------------------------------------------------------------------------
// WorkerPool

WorkerPool::WorkerPool(std::uint32_t threads) {
  for (std::uint32_t i = 1; i < threads; ++i) workers_.emplace_back([this] { worker_loop(); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lk(mu_);
    stop_ = true;
  }
  start_cv_.notify_all();
}

void WorkerPool::drain() {
  const auto& fn = *job_;
  for (std::size_t i = next_.fetch_add(1, std::memory_order_relaxed); i < job_n_;
       i = next_.fetch_add(1, std::memory_order_relaxed)) {
    try {
      fn(i);
    } catch (...) {
      std::lock_guard lk(mu_);
      if (!error_) error_ = std::current_exception();
    }
  }
}

void WorkerPool::worker_loop() {
  std::uint64_t seen = 0;
  for (;;) {
    {
      std::unique_lock lk(mu_);
      start_cv_.wait(lk, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
    }
    drain();
    std::lock_guard lk(mu_);
    if (--pending_ == 0) done_cv_.notify_one();
  }
}

void WorkerPool::parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (workers_.empty() || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  {
    std::lock_guard lk(mu_);
    job_ = &fn;
    job_n_ = n;
    next_.store(0, std::memory_order_relaxed);
    error_ = nullptr;
    pending_ = static_cast<std::uint32_t>(workers_.size());
    ++generation_;
  }
  start_cv_.notify_all();
  drain();
  std::unique_lock lk(mu_);
  done_cv_.wait(lk, [&] { return pending_ == 0; });
  job_ = nullptr;
  if (error_) std::rethrow_exception(std::exchange(error_, nullptr));
}

// ---------------------------------------------------------------------------
// Batch

namespace {

EngineConfig engine_config(const BatchConfig& cfg) { return EngineConfig{cfg.max_episode_length}; }

void encode_env(BatchState& bs, std::size_t i) {
  switch (bs.cfg.obs) {
    case ObsMode::None: break;
    case ObsMode::Symbolic: {
      const std::size_t len = symbolic_layout(bs.cfg.tier).total_len;
      encode_symbolic_into(bs.envs[i], std::span(bs.obs).subspan(i * len, len));
      break;
    }
    case ObsMode::Tiles: bs.frames[i] = render_tiles(bs.envs[i], bs.cfg.tile_px); break;
  }
}

}  // namespace

RngStream pool_stream(const RngStream& root, std::uint64_t step_index, std::uint32_t j) {
  return root.split(streams::kBatchPool).split(step_index).split(j);
}

BatchState batch_reset(const BatchConfig& cfg, std::uint64_t seed) {
  if (cfg.n_envs == 0) throw std::invalid_argument("batch_reset: n_envs must be at least 1");
  if (cfg.reset_ratio == 0) throw std::invalid_argument("batch_reset: reset_ratio must be at least 1");
  if (cfg.max_episode_length == 0) throw std::invalid_argument("batch_reset: max_episode_length must be positive");
  BatchState bs;
  bs.cfg = cfg;
  bs.root = RngStream::from_seed(seed);
  const std::size_t n = cfg.n_envs;
  bs.envs.resize(n);
  bs.env_level.resize(n);
  bs.stats.resize(n);
  bs.pool.resize(cfg.pool_size());
  bs.pool_used.assign(cfg.pool_size(), false);
  if (cfg.obs == ObsMode::Symbolic) bs.obs.assign(n * symbolic_layout(cfg.tier).total_len, 0.0f);
  if (cfg.obs == ObsMode::Tiles) bs.frames.resize(n);

  WorkerPool workers(cfg.worker_threads);
  workers.parallel_for(n, [&](std::size_t i) {
    Episode e = new_episode(bs.root.split(streams::kBatchEnvBase + i), cfg.tier, engine_config(cfg));
    bs.env_level[i] = e.params.seed;
    bs.envs[i] = std::move(e.state);
    encode_env(bs, i);
  });
  return bs;
}

void batch_step(BatchState& bs, std::span<const std::uint8_t> actions, std::span<EnvOutcome> outcomes,
                WorkerPool& workers) {
  const std::size_t n = bs.envs.size();
  if (actions.size() != n || outcomes.size() != n)
    throw std::invalid_argument("batch_step: actions and outcomes must have one entry per env");
  const int n_actions = num_actions(bs.cfg.tier);
  for (std::size_t i = 0; i < n; ++i)
    if (actions[i] >= n_actions)
      throw std::invalid_argument("batch_step: action " + std::to_string(actions[i]) + " for env " +
                                  std::to_string(i) + " is outside the tier's action set");

  // Pool generation and env stepping share one dynamic job list.
  const std::size_t m = bs.pool.size();
  const std::uint64_t t = bs.step_index;
  std::fill(bs.pool_used.begin(), bs.pool_used.end(), false);
  workers.parallel_for(m + n, [&](std::size_t job) {
    if (job < m) {
      Episode e = new_episode(pool_stream(bs.root, t, static_cast<std::uint32_t>(job)), bs.cfg.tier,
                              engine_config(bs.cfg));
      bs.pool[job] = PoolEntry{std::move(e.params), std::move(e.state)};
      return;
    }
    const std::size_t i = job - m;
    const StepResult r = step_inplace(bs.envs[i], static_cast<Action>(actions[i]));
    EnvOutcome& o = outcomes[i];
    o.reward = r.reward;
    o.done = r.done;
    o.unlocked = r.unlocked;
    o.health_delta = r.health_delta;
    o.pool_index = -1;
  });

  std::size_t dones = 0;
  for (std::size_t i = 0; i < n; ++i) dones += outcomes[i].done ? 1 : 0;

  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    EnvOutcome& o = outcomes[i];
    EpisodeStats& st = bs.stats[i];
    st.episode_return += o.reward;
    ++st.length;
    o.episode_return = st.episode_return;
    o.episode_length = st.length;
    ++bs.metrics.steps;
    if (!o.done) continue;

    BatchMetrics& mt = bs.metrics;
    ++mt.episodes;
    mt.return_sum += st.episode_return;
    const AchievementSet& a = bs.envs[i].achievements;
    for (std::size_t b = 0; b < a.size(); ++b) mt.achievement_episodes[b] += a.test(b) ? 1 : 0;
    st = EpisodeStats{};

    const std::size_t j = k % m;
    if (k >= m) ++mt.resets_duplicated;
    const bool last_use = k + m >= dones;
    if (last_use) bs.envs[i] = std::move(bs.pool[j].state);
    else bs.envs[i] = bs.pool[j].state;
    bs.env_level[i] = bs.pool[j].params.seed;
    bs.pool_used[j] = true;
    o.pool_index = static_cast<std::int32_t>(j);
    ++k;
  }
  ++bs.step_index;

  if (bs.cfg.obs != ObsMode::None) workers.parallel_for(n, [&](std::size_t i) { encode_env(bs, i); });
}

double duplication_probability(std::uint32_t n, double p, std::uint32_t m) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("duplication_probability: p must lie in [0, 1]");
  if (m > n) throw std::invalid_argument("duplication_probability: m must not exceed n");
  if (m == n || p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double ln_fact_n = std::lgamma(static_cast<double>(n) + 1.0);
  double max_term = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  terms.reserve(n - m);
  for (std::uint32_t k = m + 1; k <= n; ++k) {
    const double kk = k;
    const double term = ln_fact_n - std::lgamma(kk + 1.0) - std::lgamma(static_cast<double>(n - k) + 1.0) + kk * lp +
                        static_cast<double>(n - k) * lq;
    terms.push_back(term);
    max_term = std::max(max_term, term);
  }
  double sum = 0.0;
  for (double term : terms) sum += std::exp(term - max_term);
  return std::min(1.0, std::exp(max_term + std::log(sum)));
}

}  // namespace delve
