#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "delve/bench.hpp"
#include "support.hpp"

using namespace delve;
using namespace delve::test;

namespace {

bool early_tech(const AchievementSet& a) {
  return a.test(to_int(Achievement::CollectWood)) && a.test(to_int(Achievement::PlaceTable)) &&
         a.test(to_int(Achievement::MakeWoodPickaxe)) && a.test(to_int(Achievement::CollectStone));
}

}  // namespace

TEST_CASE("policy names") {
  CHECK(policy_name(PolicyKind::Random) == "random");
  CHECK(policy_name(PolicyKind::Scripted) == "scripted");
  CHECK(policy_from_name("scripted") == PolicyKind::Scripted);
  CHECK(!policy_from_name("ppo"));
}

TEST_CASE("random policy draws legal actions deterministically") {
  BatchConfig cfg;
  cfg.n_envs = 8;
  cfg.tier = Tier::Extended;
  const BatchState bs = batch_reset(cfg, 1);
  std::vector<std::uint8_t> a(8), b(8);
  make_policy(PolicyKind::Random, RngStream::from_seed(3))->act(bs, a);
  make_policy(PolicyKind::Random, RngStream::from_seed(3))->act(bs, b);
  CHECK(a == b);
  for (std::uint8_t x : a) CHECK(x < num_actions(Tier::Extended));
}

TEST_CASE("the scripted policy completes the early tech tree") {
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GameState s = fresh(Tier::Classic, seed);
    Sampler rng(RngStream::from_seed(seed).split(0x5C));
    for (int t = 0; t < 2000 && !s.done && !early_tech(s.achievements); ++t) step_inplace(s, scripted_action(s, rng));
    ok += early_tech(s.achievements) ? 1 : 0;
  }
  CHECK(ok >= 19);
}

TEST_CASE("speed sweep rows") {
  SweepConfig cfg;
  cfg.env_counts = {1, 4};
  cfg.steps_per_count = 400;
  cfg.warmup_steps = 20;
  const std::vector<SweepRow> rows = run_speed_sweep(cfg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n_envs == 1);
  CHECK(rows[1].n_envs == 4);
  int best = 0;
  for (const SweepRow& r : rows) {
    CHECK(r.steps >= 400);
    CHECK(r.seconds > 0.0);
    CHECK(r.sps > 0.0);
    best += r.best ? 1 : 0;
  }
  CHECK(best == 1);
  const SweepRow& top = rows[0].sps >= rows[1].sps ? rows[0] : rows[1];
  CHECK(top.best);

  const std::string csv = sweep_to_csv(rows);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "workers,threads,steps,seconds,sps,best");
  int n = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++n;
  CHECK(n == 2);

  const nlohmann::json j = sweep_to_json(cfg, rows);
  CHECK(j["rows"].size() == 2);
  CHECK(j["rows"][0]["workers"] == 1);
}

TEST_CASE("rollout reports are pure functions of the config") {
  RolloutConfig cfg;
  cfg.n_envs = 4;
  cfg.total_steps = 2000;
  cfg.max_episode_length = 200;
  cfg.seed = 7;
  const RolloutReport a = run_rollout_report(cfg);
  const RolloutReport b = run_rollout_report(cfg);
  CHECK(report_to_json(a) == report_to_json(b));
  CHECK(a.steps == 2000);
  CHECK(a.completed_episodes >= 8);
  CHECK(a.achievements.size() == kNumClassicAchievements);
  CHECK(a.max_return == 22);
  for (const AchievementRate& r : a.achievements) {
    CHECK(r.rate >= 0.0);
    CHECK(r.rate <= 1.0);
  }
  CHECK(a.return_percent == doctest::Approx(100.0 * a.mean_return / 22.0));

  cfg.tier = Tier::Extended;
  cfg.total_steps = 400;
  CHECK(run_rollout_report(cfg).max_return == 226);

  cfg.total_steps = 3;
  CHECK_THROWS_AS(run_rollout_report(cfg), std::invalid_argument);
}

TEST_CASE("scripted rollouts collect wood") {
  RolloutConfig cfg;
  cfg.policy = PolicyKind::Scripted;
  cfg.n_envs = 16;
  cfg.total_steps = 16 * 500;
  cfg.max_episode_length = 500;
  const RolloutReport r = run_rollout_report(cfg);
  CHECK(r.rate("COLLECT_WOOD") >= 0.99);
  CHECK(report_to_csv(r).rfind("achievement,", 0) == 0);
}
