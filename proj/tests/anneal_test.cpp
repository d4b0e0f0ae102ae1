#include <fstream>
#include <sstream>

#include "doctest.h"
#include "siasp/anneal.hpp"
#include "siasp/classical.hpp"
#include "siasp/rng.hpp"
#include "support/oracles.hpp"

using namespace siasp;

namespace {

AnnealParams small_params(std::uint64_t seed) {
  AnnealParams p;
  p.reads = 20;
  p.sweeps = 200;
  p.seed = seed;
  return p;
}

void check_same(const SampleSet& a, const SampleSet& b) {
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].bits == b.samples[i].bits);
    CHECK(a.samples[i].energy == b.samples[i].energy);
    CHECK(a.samples[i].occurrences == b.samples[i].occurrences);
  }
}

}  // namespace

TEST_CASE("single variable") {
  QuboModel m;
  m.n = 1;
  m.add_linear(0, -5);
  const auto s = simulated_anneal(m, small_params(1));
  CHECK(s.best().energy == -5);
  CHECK(s.best().bits == Bits{1});
  CHECK(s.total_reads() == 20);
}

TEST_CASE("independent variables") {
  QuboModel m;
  m.n = 10;
  for (std::size_t i = 0; i < 10; ++i) m.add_linear(i, -1);
  CHECK(simulated_anneal(m, small_params(2)).best().energy == -10);
}

TEST_CASE("default betas") {
  QuboModel m;
  m.n = 3;
  m.add_linear(0, -2);
  m.add_linear(1, 2);
  m.add_quadratic(0, 2, 2);
  // Row magnitudes 4, 2, 2: median 2.
  const auto b = default_betas(m);
  CHECK(b.initial == doctest::Approx(std::log(2.0) / 2.0));
  CHECK(b.final == doctest::Approx(std::log(1000.0)));
  AnnealParams p;
  p.beta_initial = 0.25;
  CHECK(resolve_betas(m, p).initial == 0.25);
  CHECK(resolve_betas(m, p).final == doctest::Approx(std::log(1000.0)));
}

TEST_CASE("parallel and serial annealing agree") {
  Rng rng(41);
  for (int k = 0; k < 10; ++k) {
    const auto m = testing::random_model(rng, 5 + uniform_below(rng, 30), 0.3);
    const auto p = small_params(rng());
    check_same(simulated_anneal(m, p), simulated_anneal_serial(m, p));
  }
}

TEST_CASE("seeded annealing is reproducible") {
  Rng rng(43);
  const auto m = testing::random_model(rng, 40, 0.2);
  check_same(simulated_anneal(m, small_params(9)), simulated_anneal(m, small_params(9)));
}

TEST_CASE("sample sets are sorted, distinct and carry true energies") {
  Rng rng(47);
  for (int k = 0; k < 10; ++k) {
    const auto m = testing::random_model(rng, 12, 0.4);
    const auto s = simulated_anneal(m, small_params(k));
    std::size_t total = 0;
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
      CHECK(energy(m, s.samples[i].bits) == s.samples[i].energy);
      total += s.samples[i].occurrences;
      if (i > 0) {
        const auto& a = s.samples[i - 1];
        const auto& b = s.samples[i];
        CHECK(std::tie(a.energy, a.bits) < std::tie(b.energy, b.bits));
      }
    }
    CHECK(total == 20);
    CHECK(s.best_index == 0);
  }
}

TEST_CASE("brute force agrees with the plain enumeration") {
  Rng rng(53);
  for (int k = 0; k < 60; ++k) {
    const auto m = testing::random_model(rng, uniform_below(rng, 15), 0.5);
    const auto fast = brute_force_min(m);
    const auto ref = brute_force_min_reference(m);
    CHECK(fast.energy == ref.energy);
    CHECK(fast.bits == ref.bits);
    CHECK(energy(m, fast.bits) == fast.energy);
  }
}

TEST_CASE("brute force tie-break and limits") {
  QuboModel m;
  m.n = 3;
  m.add_linear(0, -1);
  m.add_linear(1, -1);
  m.add_quadratic(0, 1, 1);
  // Any state with x0 or x1 set reaches -1; x2 is free.
  const auto r = brute_force_min(m);
  CHECK(r.energy == -1);
  CHECK(r.bits == Bits{0, 1, 0});
  const auto all = brute_force_minimizers(m);
  CHECK(all.bits ==
        std::vector<Bits>{{0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}});
  CHECK_FALSE(all.truncated);
  CHECK(brute_force_minimizers(m, kBruteForceLimit, 2).truncated);

  QuboModel big;
  big.n = 25;
  CHECK_THROWS_AS(brute_force_min(big), std::length_error);

  QuboModel empty;
  empty.offset = 4;
  CHECK(brute_force_min(empty).energy == 4);
}

TEST_CASE("annealing the 15-request 4cam model reaches the optimum in 5 reads") {
  std::ifstream in(std::string(SIASP_DATA_DIR) + "/reduced/r15.json");
  REQUIRE(in);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto inst = parse_instance(buf.str());
  const auto model = encode(inst, Encoding::FourCam);
  // Too many variables for brute force; the exact classical solver stands in.
  REQUIRE(model.n > kBruteForceLimit);
  const auto exact = solve_exact(inst);
  REQUIRE(exact.proven_optimal);
  AnnealParams p;
  p.reads = 5;
  p.seed = 7;
  CHECK(simulated_anneal(model, p).best().energy == -exact.value);
}

TEST_CASE("default annealing finds the brute-force minimum on small models") {
  Rng rng(59);
  for (int k = 0; k < 30; ++k) {
    testing::SmallInstanceSpec spec;
    spec.max_fourcam_vars = 24;
    const auto inst = testing::random_small_instance(rng, spec);
    for (auto enc : {Encoding::FourCam, Encoding::ThreeCam}) {
      const auto model = encode(inst, enc);
      const auto target = brute_force_min(model).energy;
      bool hit = false;
      for (std::uint64_t rep = 0; rep < 5 && !hit; ++rep) {
        AnnealParams p;
        p.seed = rep;
        hit = simulated_anneal(model, p).best().energy == target;
      }
      CHECK(hit);
    }
  }
}
