// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>

#include "delve/bench.hpp"
#include "delve/catalog.hpp"
#include "delve/obs.hpp"
#include "delve/worldgen.hpp"
#include "support.hpp"

using namespace delve;
using namespace delve::test;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail << "first failure: " << what << "; ";
    pass = false;
  }
};

using Criterion = std::function<void(Verdict&)>;

// 1 -------------------------------------------------------------------------

void constants(Verdict& v) {
  v.expect(max_achievement_return(Tier::Extended) == 226, "extended tier sum");
  v.expect(max_achievement_return(Tier::Classic) == 22, "classic tier sum");
  v.expect(num_actions(Tier::Extended) == 43, "extended actions");
  v.expect(num_actions(Tier::Classic) == 17, "classic actions");
  v.expect(num_achievements(Tier::Extended) == 67, "extended achievements");
  v.expect(num_achievements(Tier::Classic) == 22, "classic achievements");
  v.expect(symbolic_layout(Tier::Extended).total_len == 8268, "extended symbolic length");
  v.expect(symbolic_layout(Tier::Classic).total_len == 1345, "classic symbolic length");
  v.expect(encode_symbolic(fresh(Tier::Extended, 0)).size() == 8268, "extended encoded length");
  v.expect(encode_symbolic(fresh(Tier::Classic, 0)).size() == 1345, "classic encoded length");
  v.detail << "sum 226/22, actions 43/17, achievements 67/22, obs 8268/1345";
}

// 2 -------------------------------------------------------------------------

Tier tier_of(std::uint64_t seed) { return seed % 2 == 0 ? Tier::Classic : Tier::Extended; }

void determinism(Verdict& v) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Tier t = tier_of(seed);
    const auto acts = random_actions(t, seed, 1000);
    GameState a = fresh(t, seed);
    std::vector<double> ra, rb;
    for (Action x : acts) {
      if (a.done) break;
      ra.push_back(step_inplace(a, x).reward);
    }
    // Second replay through the pure step function.
    GameState b = fresh(t, seed);
    for (Action x : acts) {
      if (b.done) break;
      StepOutcome o = step(b, x);
      rb.push_back(o.reward);
      b = std::move(o.state);
    }
    v.expect(a == b && ra == rb, "single-env replay of seed " + std::to_string(seed));
  }

  for (Tier t : {Tier::Classic, Tier::Extended}) {
    BatchConfig cfg;
    cfg.tier = t;
    cfg.n_envs = 100;
    cfg.max_episode_length = 300;
    std::vector<std::vector<GameState>> finals;
    std::vector<std::vector<double>> traces;
    for (std::uint32_t threads : {1u, 4u, 8u}) {
      cfg.worker_threads = threads;
      BatchState bs = batch_reset(cfg, 77);
      WorkerPool workers(threads);
      auto policy = make_policy(PolicyKind::Random, RngStream::from_seed(77).split(streams::kBatchPolicy));
      std::vector<std::uint8_t> acts(cfg.n_envs);
      std::vector<EnvOutcome> out(cfg.n_envs);
      std::vector<double> trace;
      for (int s = 0; s < 1000; ++s) {
        policy->act(bs, acts);
        batch_step(bs, acts, out, workers);
        for (const EnvOutcome& o : out) trace.push_back(o.reward);
      }
      finals.push_back(bs.envs);
      traces.push_back(std::move(trace));
    }
    v.expect(finals[0] == finals[1] && finals[0] == finals[2], "batch states across 1/4/8 threads");
    v.expect(traces[0] == traces[1] && traces[0] == traces[2], "batch rewards across 1/4/8 threads");
  }
  v.detail << "100 seeds x 1000 actions; batch of 100 x 1000 steps at 1/4/8 threads";
}

// 3 -------------------------------------------------------------------------

void reward_identity(Verdict& v) {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Tier t = tier_of(seed);
    GameState s = fresh(t, 1000 + seed);
    const Tenths h0 = s.player.health;
    double total = 0.0;
    std::int64_t recovered = 0;
    std::int64_t damage = 0;
    Sampler rng(RngStream::from_seed(seed).split(0xACE));
    while (!s.done) {
      const Tenths before = s.player.health;
      total += step_inplace(s, static_cast<Action>(rng.below(static_cast<std::uint32_t>(num_actions(t))))).reward;
      const std::int32_t d = (s.player.health - before).raw();
      (d > 0 ? recovered : damage) += std::abs(d);
    }
    v.expect(recovered - damage == (s.player.health - h0).raw(), "health deltas add up");
    // 0.1 per health point; health is stored in tenths.
    const double expected = achievement_value(t, s.achievements) + static_cast<double>(recovered - damage) / 100.0;
    worst = std::max(worst, std::abs(total - expected));
  }
  v.expect(worst <= 1e-6, "reward identity within 1e-6");
  v.detail << "100 full episodes, max |error| " << worst;
}

// 4 -------------------------------------------------------------------------

void scramble_dead_lanes(GameState& s, Sampler& rng) {
  const auto any_pos = [&] {
    return Pos{static_cast<std::int16_t>(rng.below(64)), static_cast<std::int16_t>(rng.below(64))};
  };
  for (FloorCreatures& fc : s.creatures) {
    for (CreatureArray* arr : {&fc.melee, &fc.ranged, &fc.passive})
      for (Creature& c : arr->lanes)
        if (!c.alive)
          c = Creature{static_cast<CreatureKind>(rng.below(kNumCreatureKinds)), any_pos(),
                       Tenths(static_cast<std::int32_t>(rng.below(200))), static_cast<std::uint8_t>(rng.below(5)),
                       false};
    for (ProjectileArray* arr : {&fc.player_projectiles, &fc.enemy_projectiles})
      for (Projectile& p : arr->lanes)
        if (!p.alive) {
          p.kind = static_cast<ProjectileKind>(rng.below(kNumProjectileKinds));
          p.pos = any_pos();
          p.dir = static_cast<Direction>(rng.below(4));
          p.damage.tenths = {static_cast<std::int32_t>(rng.below(100)), 0, static_cast<std::int32_t>(rng.below(100))};
        }
  }
  for (Plant& p : s.plants)
    if (!p.alive) p = Plant{static_cast<std::uint8_t>(rng.below(2)), any_pos(), static_cast<std::uint16_t>(rng.below(400)), false};
}

void masked_lanes(Verdict& v) {
  Sampler rng(RngStream::from_seed(4242));
  int dead_lanes = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Tier t = tier_of(static_cast<std::uint64_t>(trial));
    GameState s = fresh(t, static_cast<std::uint64_t>(trial % 50));
    const auto acts = random_actions(t, static_cast<std::uint64_t>(trial), rng.below(200));
    for (Action a : acts) {
      if (s.done) break;
      step_inplace(s, a);
    }
    if (s.done) s = fresh(t, static_cast<std::uint64_t>(trial + 5000));
    GameState p = s;
    scramble_dead_lanes(p, rng);
    for (const FloorCreatures& fc : p.creatures)
      for (const Creature& c : fc.melee.lanes) dead_lanes += c.alive ? 0 : 1;
    const Action a = static_cast<Action>(rng.below(static_cast<std::uint32_t>(num_actions(t))));
    const StepOutcome ra = step(s, a);
    const StepOutcome rb = step(p, a);
    const bool same = ra.reward == rb.reward && ra.done == rb.done && ra.newly_unlocked == rb.newly_unlocked &&
                      ra.info.health_delta == rb.info.health_delta && ra.state == rb.state &&
                      encode_symbolic(ra.state) == encode_symbolic(rb.state);
    v.expect(same, "perturbation " + std::to_string(trial));
  }
  v.expect(dead_lanes > 1000, "perturbations touched dead lanes");
  v.detail << "1000 perturbations, " << dead_lanes << " dead melee lanes scrambled";
}

// 5 -------------------------------------------------------------------------

void optimistic_reset(Verdict& v) {
  BatchConfig cfg;
  cfg.n_envs = 1024;
  const std::uint32_t m = cfg.pool_size();
  v.expect(m == 64, "pool size 64 for 1024 envs");
  BatchState bs = batch_reset(cfg, 5);
  WorkerPool workers(1);
  std::vector<EnvOutcome> out(cfg.n_envs);
  const std::vector<std::uint8_t> noop(cfg.n_envs, 0);

  const auto force = [&](std::uint32_t count, std::uint32_t stride) {
    std::vector<std::size_t> idx;
    for (std::uint32_t k = 0; k < count; ++k) idx.push_back(static_cast<std::size_t>(k) * stride % cfg.n_envs);
    for (std::size_t i : idx) bs.envs[i].max_episode_length = bs.envs[i].time + 1;
    return idx;
  };

  for (std::uint32_t k : {1u, 17u, m}) {
    const auto idx = force(k, 13);
    const RngStream root = bs.root;
    const std::uint64_t t = bs.step_index;
    const std::uint64_t dup_before = bs.metrics.resets_duplicated;
    batch_step(bs, noop, out, workers);
    std::vector<std::int32_t> used;
    for (std::size_t i = 0; i < cfg.n_envs; ++i)
      if (out[i].done) used.push_back(out[i].pool_index);
    std::vector<std::int32_t> sorted = used;
    std::sort(sorted.begin(), sorted.end());
    v.expect(used.size() == k, "exactly the forced envs finished");
    v.expect(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "distinct entries for k <= M");
    v.expect(bs.metrics.resets_duplicated == dup_before, "no duplication for k <= M");
    const std::size_t first = *std::min_element(idx.begin(), idx.end());
    v.expect(bs.envs[first] == new_episode(pool_stream(root, t, 0), cfg.tier).state, "first done env takes entry 0");
  }

  for (std::uint32_t k : {m + 1, 2 * m + 7, 5 * m}) {
    force(k, 1);
    const std::uint64_t dup_before = bs.metrics.resets_duplicated;
    batch_step(bs, noop, out, workers);
    std::uint32_t seen = 0;
    bool round_robin = true;
    for (std::size_t i = 0; i < cfg.n_envs; ++i) {
      if (!out[i].done) continue;
      round_robin &= out[i].pool_index == static_cast<std::int32_t>(seen % m);
      if (seen >= m) round_robin &= bs.envs[i] == bs.envs[i - m];
      ++seen;
    }
    v.expect(seen == k, "forced count beyond M");
    v.expect(round_robin, "round-robin duplication for k > M");
    v.expect(bs.metrics.resets_duplicated - dup_before == k - m, "duplicate count k - M");
  }

  const double p = duplication_probability(1024, 1.0 / 200.0, 64);
  v.expect(p < 1e-10, "duplication probability bound");
  v.detail << "k in {1,17,64} distinct, k in {65,135,320} round-robin; P(dup) = " << p;
}

// 6 -------------------------------------------------------------------------

void classic_capacities(Verdict& v) {
  int max_z = 0, max_c = 0, max_s = 0, max_a = 0, max_p = 0;
  std::uint64_t episode = 0;
  GameState s = fresh(Tier::Classic, 600);
  Sampler rng(RngStream::from_seed(600).split(0xACE));
  for (int i = 0; i < 100000; ++i) {
    if (s.done) s = fresh(Tier::Classic, 601 + episode++);
    step_inplace(s, static_cast<Action>(rng.below(kNumClassicActions)));
    const FloorCreatures& fc = s.creatures[0];
    max_z = std::max(max_z, fc.melee.live_count());
    max_c = std::max(max_c, fc.passive.live_count());
    max_s = std::max(max_s, fc.ranged.live_count());
    max_a = std::max(max_a, fc.enemy_projectiles.live_count());
    int plants = 0;
    for (const Plant& p : s.plants) plants += p.alive ? 1 : 0;
    int plant_blocks = 0;
    for (BlockId b : s.floor().blocks) plant_blocks += b == BlockId::Plant || b == BlockId::RipePlant ? 1 : 0;
    v.expect(plants == plant_blocks, "plant lanes match plant blocks at step " + std::to_string(i));
    max_p = std::max(max_p, plants);
  }
  v.expect(max_z <= 3 && max_c <= 3 && max_s <= 2 && max_a <= 3, "creature capacities");
  v.expect(max_p <= 10, "plant capacity");
  v.detail << "10^5 steps, " << episode + 1 << " episodes; peak zombie/cow/skeleton/arrow/plant " << max_z << '/'
           << max_c << '/' << max_s << '/' << max_a << '/' << max_p;
}

// 7 -------------------------------------------------------------------------

void scripted_reachability(Verdict& v) {
  const std::array<Achievement, 4> goals = {Achievement::CollectWood, Achievement::PlaceTable,
                                            Achievement::MakeWoodPickaxe, Achievement::CollectStone};
  int ok = 0;
  std::string missed;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GameState s = fresh(Tier::Classic, seed);
    Sampler rng(RngStream::from_seed(seed).split(streams::kBatchPolicy));
    const auto done = [&] {
      return std::all_of(goals.begin(), goals.end(), [&](Achievement a) { return s.achievements.test(to_int(a)); });
    };
    for (int t = 0; t < 2000 && !s.done && !done(); ++t) step_inplace(s, scripted_action(s, rng));
    if (done()) ++ok;
    else missed += " " + std::to_string(seed);
  }
  v.expect(ok >= 99, "scripted policy reached the goals on at least 99 seeds");
  v.detail << ok << "/100 seeds";
  if (!missed.empty()) v.detail << " (missed:" << missed << ")";
}

// 8 -------------------------------------------------------------------------

std::array<int, kNumBlocks> histogram(const FloorMap& m) {
  std::array<int, kNumBlocks> h{};
  for (BlockId b : m.blocks) ++h[static_cast<std::size_t>(b)];
  return h;
}

void mutations(Verdict& v) {
  World w = generate_world(make_level_params(8), Tier::Classic);
  const auto h = histogram(w.floors[0]);
  const FloorMap& m0 = w.floors[0];
  const int r0 = (m0.rows - kCentralWindow) / 2;
  const int c0 = (m0.cols - kCentralWindow) / 2;
  const auto in_window = [&](Pos p) {
    return p.row >= r0 && p.row < r0 + kCentralWindow && p.col >= c0 && p.col < c0 + kCentralWindow;
  };

  World a = w;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    SwapTrace t;
    a = mutate_swap_traced(a, RngStream::from_seed(i).split(streams::kMutation), t);
    v.expect(histogram(a.floors[0]) == h, "swap histogram");
    v.expect(t.swapped && in_window(t.first), "swap central window");
  }

  World b = w;
  int swapped = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    SwapTrace t;
    const World next = mutate_rswap_traced(b, RngStream::from_seed(i).split(streams::kMutation), t);
    v.expect(histogram(next.floors[0]) == h, "rswap histogram");
    if (t.swapped) {
      ++swapped;
      const int ca = rswap_class(b.floors[0].block(t.first));
      v.expect(ca != 0 && ca == rswap_class(b.floors[0].block(t.second)), "rswap class restriction");
    }
    b = next;
  }
  v.expect(swapped > 900, "rswap found pairs");

  const LevelParams p = make_level_params(8);
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double range = 0.05 + 0.001 * static_cast<double>(i);
    const LevelParams q = mutate_noise(p, RngStream::from_seed(i), range);
    for (std::size_t f = 0; f < p.overworld_angles.size(); ++f)
      for (std::size_t k = 0; k < p.overworld_angles[f].angles.size(); ++k) {
        const double d = std::fabs(q.overworld_angles[f].angles[k] - p.overworld_angles[f].angles[k]);
        const double circ = std::min(d, 2 * std::numbers::pi - d);
        worst = std::max(worst, circ / range);
        v.expect(circ <= range + 1e-12, "noise bound");
      }
  }
  v.detail << "1000 each; rswap swapped " << swapped << ", noise max distance/range " << worst;
}

// 9 -------------------------------------------------------------------------

void throughput(Verdict& v) {
  const std::uint32_t hw = std::max(1u, std::thread::hardware_concurrency());
  SweepConfig cfg;
  cfg.tier = Tier::Classic;
  cfg.policy = PolicyKind::Random;
  cfg.obs = ObsMode::None;
  cfg.threads = hw;
  cfg.seed = 9;

  cfg.env_counts = {1};
  cfg.steps_per_count = 200000;
  const SweepRow one = run_speed_sweep(cfg).front();
  cfg.env_counts = {1024};
  cfg.steps_per_count = 1024 * 300;
  cfg.warmup_steps = 1024 * 2;
  const SweepRow many = run_speed_sweep(cfg).front();

  const double ratio = many.sps / one.sps;
  v.expect(ratio >= 100.0, "N=1024 aggregate SPS at least 100x N=1");
  v.detail << "threads " << hw << ", N=1 " << static_cast<long>(one.sps) << " SPS, N=1024 "
           << static_cast<long>(many.sps) << " SPS, ratio " << ratio << " (needs >= 100)";
  if (hw < 8)
    v.detail << "; absolute floor of 200k SPS applies to 8-core desktops, this host has " << hw << " hardware thread(s)";
  else
    v.expect(many.sps >= 200000.0, "absolute floor of 200k SPS");
}

// 10 ------------------------------------------------------------------------

void obs_codec(Verdict& v) {
  int states = 0;
  int masked = 0;
  for (std::uint64_t seed = 0; states < 1000; ++seed) {
    const Tier t = tier_of(seed);
    const SymbolicLayout& L = symbolic_layout(t);
    GameState s = fresh(t, 3000 + seed);
    const auto acts = random_actions(t, 3000 + seed, 500);
    for (std::size_t i = 0; i < acts.size() && !s.done && states < 1000; ++i) {
      step_inplace(s, acts[i]);
      if (i % 25 != 0) continue;
      ++states;
      const std::vector<float> o = encode_symbolic(s);
      const std::vector<TileView> view = view_tiles(s);
      bool exclusive = true;
      for (std::size_t k = 0; k < view.size(); ++k) {
        const float* tile = o.data() + k * L.per_tile;
        const auto bits = [&](std::size_t off, std::size_t len) {
          return static_cast<int>(std::count_if(tile + off, tile + off + len, [](float x) { return x != 0.0f; }));
        };
        const int want = view[k].visible ? 1 : 0;
        masked += want == 0 ? 1 : 0;
        exclusive &= bits(0, L.block_group) == want;
        if (L.item_group > 0) exclusive &= bits(L.block_group, L.item_group) == want;
        exclusive &= bits(L.block_group + L.item_group, L.creature_group) == want;
        if (L.has_light) {
          const bool dark = view[k].light < 0.05f || s.player.sleeping;
          exclusive &= dark == !view[k].visible;
          exclusive &= tile[L.per_tile - 1] == view[k].light;
        }
      }
      v.expect(exclusive, "one-hot exclusivity and light mask");
      const DecodedObs d = decode_symbolic(t, o);
      const bool round_trip = d.tiles == view && d.stats[0] == s.player.health && d.stats[1] == s.player.food &&
                              d.stats[2] == s.player.drink && d.stats[3] == s.player.energy &&
                              d.inventory.wood == s.inventory.wood && d.inventory.stone == s.inventory.stone &&
                              d.inventory.sapling == s.inventory.sapling && d.facing == s.player.facing &&
                              d.sleeping == s.player.sleeping &&
                              (t == Tier::Classic || (d.stats[4] == s.player.mana && d.floor == s.player.floor));
      v.expect(round_trip, "decode round-trip");
    }
  }

  // Threshold edge on a controlled floor.
  GameState s = arena(Tier::Extended);
  s.player.floor = 1;
  FloorMap& m = s.floors[1];
  std::fill(m.light.begin(), m.light.end(), 0.0f);
  m.light[m.index(at(8, 9))] = 0.05f;
  m.light[m.index(at(8, 10))] = std::nextafter(0.05f, 0.0f);
  const SymbolicLayout& L = symbolic_layout(Tier::Extended);
  const std::vector<TileView> view = view_tiles(s);
  const std::size_t centre = static_cast<std::size_t>(L.view_rows / 2 * L.view_cols + L.view_cols / 2);
  v.expect(view[centre + 1].visible, "light exactly 0.05 is visible");
  v.expect(!view[centre + 2].visible && view[centre + 2].block == BlockId::Darkness, "light below 0.05 is masked");
  v.detail << states << " states, " << masked << " masked tiles";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Criterion>> criteria = {
      {"constants", constants},
      {"determinism", determinism},
      {"reward identity", reward_identity},
      {"masked lanes", masked_lanes},
      {"optimistic reset", optimistic_reset},
      {"classic capacities", classic_capacities},
      {"scripted reachability", scripted_reachability},
      {"mutation operators", mutations},
      {"throughput", throughput},
      {"observation codec", obs_codec},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += v.pass ? 0 : 1;
    std::printf("%s  %2zu %-22s %7.2fs  %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
