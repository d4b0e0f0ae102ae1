#include "doctest.h"
#include "siasp/classical.hpp"
#include "siasp/rng.hpp"
#include "support/oracles.hpp"

using namespace siasp;

TEST_CASE("objective_value") {
  Instance inst;
  inst.requests = {{0, 2, Kind::Mono}, {1, 3, Kind::Stereo}};
  CHECK(objective_value(inst, Schedule{}) == 0);
  CHECK(objective_value(inst, Schedule{{{0, 1}, {1, 4}}}) == 5);
  CHECK(objective_value(inst, Schedule{{{1, 4}}}) == 3);
  CHECK_THROWS_AS(objective_value(inst, Schedule{{{9, 1}}}), InstanceError);
}

TEST_CASE("check_feasible") {
  Instance inst;
  inst.requests = {{0, 1, Kind::Mono}, {1, 1, Kind::Mono}, {2, 1, Kind::Mono}, {3, 1, Kind::Stereo}};
  inst.pairs = {{{0, 2}, {1, 2}}};
  inst.ternaries = {{{CameraRef{0, 1}, CameraRef{1, 1}, CameraRef{2, 1}}}};

  SUBCASE("mono as stereo") {
    const auto r = check_feasible(inst, Schedule{{{0, 4}}});
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == ViolationKind::MonoAsStereo);
    CHECK_FALSE(r.feasible);
  }
  SUBCASE("stereo as mono") {
    const auto r = check_feasible(inst, Schedule{{{3, 3}}});
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == ViolationKind::StereoAsMono);
  }
  SUBCASE("two of three ternary members is fine") {
    CHECK(check_feasible(inst, Schedule{{{0, 1}, {1, 1}}}).feasible);
  }
  SUBCASE("all three ternary members") {
    const auto r = check_feasible(inst, Schedule{{{0, 1}, {1, 1}, {2, 1}}});
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == ViolationKind::Ternary);
  }
  SUBCASE("pair") {
    const auto r = check_feasible(inst, Schedule{{{0, 2}, {1, 2}}});
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == ViolationKind::Pair);
  }
  SUBCASE("once") {
    const auto r = check_feasible(inst, Schedule{{{0, 1}, {0, 3}}});
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == ViolationKind::Once);
  }
}

TEST_CASE("max_objective") {
  Instance inst;
  CHECK(max_objective(inst) == 0);
  inst.requests = {{0, 1, Kind::Mono}, {1, 2, Kind::Mono}, {2, 3, Kind::Stereo}};
  CHECK(max_objective(inst) == 6);
  inst.requests = {{4, 10, Kind::Mono}};
  CHECK(max_objective(inst) == 10);
}

TEST_CASE("solve_exact examples") {
  SUBCASE("single mono request takes camera 1") {
    Instance inst;
    inst.requests = {{0, 7, Kind::Mono}};
    const auto r = solve_exact(inst);
    CHECK(r.value == 7);
    CHECK(r.proven_optimal);
    CHECK(r.schedule == Schedule{{{0, 1}}});
  }
  SUBCASE("all nine mono combinations forbidden") {
    Instance inst;
    inst.requests = {{0, 3, Kind::Mono}, {1, 4, Kind::Mono}};
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b) inst.pairs.push_back({{0, a}, {1, b}});
    const auto oracle = testing::enumerate_optimum(inst);
    REQUIRE(oracle.value == 4);
    const auto r = solve_exact(inst);
    CHECK(r.value == 4);
    CHECK(r.schedule == Schedule{{{1, 1}}});
  }
  SUBCASE("ternary over three mono requests on camera 1") {
    Instance inst;
    inst.requests = {{0, 1, Kind::Mono}, {1, 1, Kind::Mono}, {2, 1, Kind::Mono}};
    inst.ternaries = {{{CameraRef{0, 1}, CameraRef{1, 1}, CameraRef{2, 1}}}};
    // The third request can still switch to camera 2 or 3.
    REQUIRE(testing::enumerate_optimum(inst).value == 3);
    CHECK(solve_exact(inst).value == 3);
  }
  SUBCASE("too large") {
    Instance inst = generate_instance(GeneratorParams{}, 1);
    CHECK_THROWS_AS(solve_exact(inst, ExactLimits{10, std::chrono::milliseconds(1000)}),
                    InstanceError);
  }
}

TEST_CASE("ternary binds when members are the only cameras") {
  // Stereo requests have one mode each, so the ternary over three of them
  // cannot be sidestepped by switching cameras.
  Instance inst;
  inst.requests = {{0, 1, Kind::Stereo}, {1, 1, Kind::Stereo}, {2, 1, Kind::Stereo}};
  inst.ternaries = {{{CameraRef{0, 4}, CameraRef{1, 4}, CameraRef{2, 4}}}};
  REQUIRE(testing::enumerate_optimum(inst).value == 2);
  const auto r = solve_exact(inst);
  CHECK(r.value == 2);
  CHECK(check_feasible(inst, r.schedule).feasible);
}

TEST_CASE("solve_exact agrees with enumeration") {
  Rng rng(5);
  for (int k = 0; k < 150; ++k) {
    GeneratorParams p;
    p.n_requests = 2 + uniform_below(rng, 8);
    p.conflict_window = 2.0 + 4.0 * uniform01(rng);
    p.ternary_density = 0.2 * uniform01(rng);
    Instance inst = generate_instance(p, rng());
    const auto oracle = testing::enumerate_optimum(inst);
    const auto r = solve_exact(inst);
    REQUIRE(r.proven_optimal);
    CHECK(r.value == oracle.value);
    CHECK(r.value <= max_objective(inst));
    CHECK(check_feasible(inst, r.schedule).feasible);
    CHECK(objective_value(inst, r.schedule) == r.value);
  }
}

TEST_CASE("solve_exact with dead constraint members") {
  Rng rng(17);
  for (int k = 0; k < 200; ++k) {
    testing::SmallInstanceSpec spec;
    spec.allow_dead_members = true;
    const auto inst = testing::random_small_instance(rng, spec);
    CHECK(solve_exact(inst).value == testing::enumerate_optimum(inst).value);
  }
}

TEST_CASE("adding a constraint never increases the optimum") {
  Rng rng(23);
  for (int k = 0; k < 100; ++k) {
    GeneratorParams p;
    p.n_requests = 3 + uniform_below(rng, 10);
    Instance inst = generate_instance(p, rng());
    const Weight before = solve_exact(inst).value;
    const auto& a = inst.requests[uniform_below(rng, inst.requests.size())];
    const auto& b = inst.requests[uniform_below(rng, inst.requests.size())];
    PairConstraint extra{{a.id, a.kind == Kind::Stereo ? 4 : 1},
                         {b.id, b.kind == Kind::Stereo ? 4 : 2}};
    if (extra.a == extra.b) continue;
    inst.pairs.push_back(extra);
    canonicalize(inst);
    CHECK(solve_exact(inst).value <= before);
  }
}

TEST_CASE("exhausted budget reports unproven") {
  GeneratorParams p;
  p.n_requests = 60;
  const auto inst = generate_instance(p, 3);
  const auto r = solve_exact(inst, ExactLimits{64, std::chrono::milliseconds(0)});
  CHECK_FALSE(r.proven_optimal);
  CHECK(check_feasible(inst, r.schedule).feasible);
}
