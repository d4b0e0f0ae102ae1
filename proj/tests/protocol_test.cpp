#include "doctest.h"
#include "siasp/protocol.hpp"

using namespace siasp;

namespace {

Instance two_mono() {
  Instance inst;
  inst.requests = {{0, 3, Kind::Mono}, {1, 2, Kind::Mono}};
  return inst;
}

}  // namespace

TEST_CASE("normalize") {
  CHECK(normalize(5, 10) == doctest::Approx(0.5));
  CHECK(normalize(0, 0) == 1.0);
}

TEST_CASE("evaluate_run with the optimal sample") {
  const auto inst = two_mono();
  const auto model = encode(inst, Encoding::ThreeCam);
  const auto best = brute_force_min(model);
  SampleSet set;
  set.samples = {{best.bits, best.energy, 1}};
  const auto r = evaluate_run(inst, *model.var_map, set, 5);
  CHECK(r.feasible);
  CHECK_FALSE(r.filtered_infeasible);
  CHECK(r.objective == 5);
  CHECK(r.normalized == 1.0);
  CHECK(r.best_energy == -5);
}

TEST_CASE("evaluate_run with the all-zero sample") {
  const auto inst = two_mono();
  const auto model = encode(inst, Encoding::ThreeCam);
  SampleSet set;
  set.samples = {{Bits(model.n, 0), 0, 3}};
  const auto r = evaluate_run(inst, *model.var_map, set, 5);
  CHECK(r.feasible);
  CHECK(r.objective == 0);
  CHECK(r.normalized == 0.0);
}

TEST_CASE("evaluate_run falls back past an infeasible best sample") {
  const auto inst = two_mono();
  const auto model = encode(inst, Encoding::ThreeCam);
  // Hand-built: the first sample takes request 0 twice.
  Bits bad(model.n, 0), good(model.n, 0);
  bad[0] = bad[1] = 1;
  good[0] = 1;
  SampleSet set;
  set.samples = {{bad, -100, 1}, {good, -3, 1}};
  const auto r = evaluate_run(inst, *model.var_map, set, 5);
  CHECK(r.filtered_infeasible);
  CHECK(r.feasible);
  CHECK(r.objective == 3);
  CHECK(r.best_energy == -100);
  CHECK_FALSE(r.violations.feasible);
  REQUIRE(r.best_schedule);
  CHECK(*r.best_schedule == Schedule{{{0, 1}}});

  SampleSet only_bad;
  only_bad.samples = {{bad, -100, 1}};
  const auto none = evaluate_run(inst, *model.var_map, only_bad, 5);
  CHECK_FALSE(none.feasible);
  CHECK_FALSE(none.best_schedule);
  CHECK(none.objective == 0);
}

TEST_CASE("repeat_protocol") {
  const auto inst = generate_instance([] {
    GeneratorParams p;
    p.n_requests = 4;
    return p;
  }(), 5);
  const Weight opt = solve_exact(inst).value;

  const auto brute = repeat_protocol(inst, Encoding::ThreeCam, BruteForceSolver{}, 4, opt);
  CHECK(brute.n_feasible == 4);
  CHECK(brute.reports.size() == 4);
  REQUIRE(brute.mean);
  CHECK(*brute.mean == doctest::Approx(1.0));
  CHECK(*brute.stddev == 0.0);

  AnnealParams p;
  p.reads = 10;
  p.sweeps = 100;
  const auto once = repeat_protocol(inst, Encoding::FourCam, p, 1, opt);
  REQUIRE(once.stddev);
  CHECK(*once.stddev == 0.0);
}

TEST_CASE("mean_and_stddev") {
  const auto [m, s] = mean_and_stddev({1.0, 3.0});
  CHECK(m == doctest::Approx(2.0));
  CHECK(s == doctest::Approx(1.0));
}
