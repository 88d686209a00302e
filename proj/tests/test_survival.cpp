#include <doctest.h>

#include <stdexcept>

#include "support.hpp"

using namespace delve;
using namespace delve::test;

namespace {

void idle(GameState& s, int n) {
  for (int i = 0; i < n; ++i) step_inplace(s, Action::Noop);
}

/// Idles with food, drink and energy topped up so nothing depletes.
void idle_fed(GameState& s, int n) {
  for (int i = 0; i < n; ++i) {
    s.player.food = max_food(s);
    s.player.drink = max_drink(s);
    s.player.energy = max_energy(s);
    step_inplace(s, Action::Noop);
  }
}

}  // namespace

TEST_CASE("food, drink and energy drain at 25, 20 and 30 steps per point") {
  GameState s = arena(Tier::Classic);
  idle(s, 19);
  CHECK(s.player.drink == Tenths::whole(9));
  idle(s, 1);
  CHECK(s.player.drink == Tenths::whole(8));
  idle(s, 4);
  CHECK(s.player.food == Tenths::whole(9));
  idle(s, 1);
  CHECK(s.player.food == Tenths::whole(8));
  idle(s, 4);
  CHECK(s.player.energy == Tenths::whole(9));
  idle(s, 1);
  CHECK(s.player.energy == Tenths::whole(8));
  idle(s, 30);
  CHECK(s.player.food == Tenths::whole(7));
  CHECK(s.player.drink == Tenths::whole(6));
  CHECK(s.player.energy == Tenths::whole(7));
}

TEST_CASE("dexterity slows extended-tier drain") {
  GameState s = arena(Tier::Extended);
  s.player.dexterity = 2;
  s.player.food = max_food(s);
  idle(s, 49);
  CHECK(s.player.food == max_food(s));
  idle(s, 1);
  CHECK(s.player.food == max_food(s) - Tenths::whole(1));
}

TEST_CASE("health regenerates one point per 25 steps when nothing is depleted") {
  GameState s = arena(Tier::Classic);
  s.player.health = Tenths::whole(5);
  idle(s, 24);
  CHECK(s.player.health == Tenths::whole(5));
  const StepResult r = step_inplace(s, Action::Noop);
  CHECK(s.player.health == Tenths::whole(6));
  CHECK(r.reward == doctest::Approx(0.1));
  CHECK(r.health_delta == Tenths::whole(1));
}

TEST_CASE("a depleted stat costs one health per 15 steps") {
  GameState s = arena(Tier::Classic);
  s.player.food = Tenths::whole(0);
  idle(s, 14);
  CHECK(s.player.health == Tenths::whole(9));
  idle(s, 1);
  CHECK(s.player.health == Tenths::whole(8));
}

TEST_CASE("two depleted stats double the damage rate") {
  GameState s = arena(Tier::Classic);
  s.player.food = Tenths::whole(0);
  s.player.drink = Tenths::whole(0);
  idle(s, 8);
  CHECK(s.player.health == Tenths::whole(8));
}

TEST_CASE("starvation ends the episode") {
  GameState s = arena(Tier::Classic);
  s.player.food = Tenths::whole(0);
  s.player.drink = Tenths::whole(0);
  s.player.energy = Tenths::whole(0);
  int steps = 0;
  while (!s.done && steps < 1000) {
    step_inplace(s, Action::Noop);
    ++steps;
  }
  CHECK(s.done);
  CHECK(s.player.health.raw() == 0);
  CHECK(steps < 100);
}

TEST_CASE("sleep restores energy and ends with a wake-up") {
  GameState s = arena(Tier::Classic);
  s.player.energy = Tenths::whole(8);
  step_inplace(s, Action::Sleep);
  CHECK(s.player.sleeping);
  idle(s, 8);
  CHECK(s.player.sleeping);
  const StepResult r = step_inplace(s, Action::Noop);
  CHECK(s.player.energy == Tenths::whole(9));
  CHECK(!s.player.sleeping);
  CHECK(r.unlocked.test(to_int(Achievement::WakeUp)));
  CHECK(r.reward == doctest::Approx(1.0));
}

TEST_CASE("sleeping halves hunger") {
  GameState s = arena(Tier::Classic);
  s.player.energy = Tenths::whole(1);
  step_inplace(s, Action::Sleep);
  idle(s, 48);
  CHECK(s.player.food == Tenths::whole(9));
  idle(s, 1);
  CHECK(s.player.food == Tenths::whole(8));
}

TEST_CASE("damage wakes a sleeper") {
  GameState s = arena(Tier::Classic);
  s.player.energy = Tenths::whole(1);
  step_inplace(s, Action::Sleep);
  REQUIRE(s.player.sleeping);
  add_creature(s, CreatureKind::Zombie, at(9, 8));
  step_inplace(s, Action::Noop);
  CHECK(!s.player.sleeping);
}

TEST_CASE("mana regenerates one point per 20 steps") {
  GameState s = arena(Tier::Extended);
  s.player.mana = Tenths::whole(5);
  idle(s, 19);
  CHECK(s.player.mana == Tenths::whole(5));
  idle(s, 1);
  CHECK(s.player.mana == Tenths::whole(6));
}

TEST_CASE("resting heals faster and stops at full health") {
  GameState s = arena(Tier::Extended);
  s.player.health = Tenths::whole(8);
  step_inplace(s, Action::Rest);
  CHECK(s.player.resting);
  idle(s, 12);
  CHECK(s.player.health == Tenths::whole(9));
  idle(s, 13);
  CHECK(s.player.health == max_health(s));
  CHECK(!s.player.resting);
}

TEST_CASE("saplings grow into ripe plants that can be eaten") {
  GameState s = arena(Tier::Classic);
  s.inventory.sapling = 1;
  step_inplace(s, Action::PlacePlant);
  const Pos p = ahead(s);
  CHECK(s.floor().block(p) == BlockId::Plant);
  CHECK(s.achievements.test(to_int(Achievement::PlacePlant)));
  step_inplace(s, Action::Do);  // unripe: nothing
  CHECK(s.floor().block(p) == BlockId::Plant);
  idle_fed(s, 297);
  CHECK(s.floor().block(p) == BlockId::Plant);
  idle_fed(s, 1);
  CHECK(s.floor().block(p) == BlockId::RipePlant);
  s.player.food = Tenths::whole(2);
  step_inplace(s, Action::Do);
  CHECK(s.player.food == Tenths::whole(6));
  CHECK(s.achievements.test(to_int(Achievement::EatPlant)));
  CHECK(s.floor().block(p) == BlockId::Plant);
}

TEST_CASE("plants need grass and a free slot") {
  GameState s = arena(Tier::Classic);
  s.inventory.sapling = 20;
  set_ahead(s, BlockId::Sand);
  step_inplace(s, Action::PlacePlant);
  CHECK(s.inventory.sapling == 20);
  int placed = 0;
  for (int r = 1; r < 16; ++r) {
    s.player.pos = at(r, 1);
    s.player.facing = Direction::Right;
    step_inplace(s, Action::PlacePlant);
    placed = 20 - s.inventory.sapling;
  }
  CHECK(placed == kPlantCapacity);
  int live = 0;
  for (const Plant& p : s.plants) live += p.alive ? 1 : 0;
  CHECK(live <= kPlantCapacity);
}

TEST_CASE("collecting grass yields saplings about one time in ten") {
  GameState s = arena(Tier::Classic);
  int got = 0;
  for (int i = 0; i < 2000; ++i) {
    s.player.food = Tenths::whole(9);
    s.player.drink = Tenths::whole(9);
    s.player.energy = Tenths::whole(9);
    const int before = s.inventory.sapling;
    step_inplace(s, Action::Do);
    got += s.inventory.sapling - before;
    s.inventory.sapling = 0;
  }
  CHECK(got > 140);
  CHECK(got < 260);
}

TEST_CASE("the reward sums achievements and a tenth of the health change") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (Tier t : {Tier::Classic, Tier::Extended}) {
      GameState s = fresh(t, seed);
      const Tenths h0 = s.player.health;
      double total = 0.0;
      for (Action a : random_actions(t, seed, 2000)) {
        if (s.done) break;
        total += step_inplace(s, a).reward;
      }
      const double expected = achievement_value(t, s.achievements) + (s.player.health - h0).raw() / 100.0;
      CHECK(total == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("classic creature counts never exceed their capacities") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    GameState s = fresh(Tier::Classic, seed);
    for (Action a : random_actions(Tier::Classic, seed, 3000)) {
      if (s.done) s = fresh(Tier::Classic, seed + 100);
      step_inplace(s, a);
      const FloorCreatures& fc = s.creatures[0];
      REQUIRE(fc.melee.live_count() <= 3);
      REQUIRE(fc.passive.live_count() <= 3);
      REQUIRE(fc.ranged.live_count() <= 2);
      REQUIRE(fc.enemy_projectiles.live_count() <= 3);
      REQUIRE(fc.player_projectiles.live_count() == 0);
    }
  }
}
