#include "doctest.h"
#include "siasp/instance.hpp"
#include "siasp/rng.hpp"
#include "support/oracles.hpp"

using namespace siasp;

namespace {

Instance three_request_instance() {
  Instance inst;
  inst.name = "tri";
  inst.requests = {{0, 2, Kind::Mono}, {1, 3, Kind::Stereo}, {5, 1, Kind::Mono}};
  inst.pairs = {{{0, 1}, {1, 4}}};
  inst.ternaries = {{{CameraRef{0, 1}, CameraRef{0, 2}, CameraRef{1, 4}}}};
  return inst;
}

}  // namespace

TEST_CASE("parse minimal document") {
  const auto inst = parse_instance(
      R"({"name": "one", "requests": [{"id": 0, "weight": 5, "kind": "mono"}], "pairs": [], "ternaries": []})");
  CHECK(inst.requests.size() == 1);
  CHECK(inst.requests[0].weight == 5);
  CHECK(inst.requests[0].kind == Kind::Mono);
  CHECK(instance_stats(inst).n_constraints == 0);
}

TEST_CASE("parse rejects dangling reference") {
  CHECK_THROWS_AS(parse_instance(R"({"name": "x", "requests": [{"id": 0, "weight": 1, "kind": "mono"}],
      "pairs": [[[0, 1], [99, 1]]], "ternaries": []})"),
                  InstanceError);
}

TEST_CASE("parse reports syntax errors with a position") {
  try {
    parse_instance("{\n  \"name\": \"x\",\n  \"requests\": [,]\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 0);
  }
}

TEST_CASE("parse semantic errors") {
  const char* head = R"({"name": "x", "requests": [)";
  SUBCASE("duplicate id") {
    CHECK_THROWS_AS(parse_instance(std::string(head) +
                                   R"({"id": 1, "weight": 1, "kind": "mono"}, {"id": 1, "weight": 2, "kind": "mono"}], "pairs": [], "ternaries": []})"),
                    InstanceError);
  }
  SUBCASE("weight below one") {
    CHECK_THROWS_AS(parse_instance(std::string(head) +
                                   R"({"id": 1, "weight": 0, "kind": "mono"}], "pairs": [], "ternaries": []})"),
                    InstanceError);
  }
  SUBCASE("camera out of range") {
    CHECK_THROWS_AS(parse_instance(std::string(head) +
                                   R"({"id": 1, "weight": 1, "kind": "mono"}, {"id": 2, "weight": 1, "kind": "mono"}], "pairs": [[[1, 5], [2, 1]]], "ternaries": []})"),
                    InstanceError);
  }
}

TEST_CASE("strict mode rejects unknown keys") {
  CHECK_THROWS_AS(parse_instance(R"({"name": "x", "requests": [], "pairs": [], "ternaries": [], "extra": 1})"),
                  ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"name": "x", "requests": [{"id": 0, "weight": 1, "kind": "mono", "x": 0}], "pairs": [], "ternaries": []})"),
                  ParseError);
}

TEST_CASE("duplicate constraints are dropped and counted") {
  const auto r = load_instance(R"({"name": "d", "requests": [{"id": 0, "weight": 1, "kind": "mono"}, {"id": 1, "weight": 1, "kind": "mono"}],
      "pairs": [[[0, 1], [1, 1]], [[1, 1], [0, 1]]], "ternaries": []})");
  CHECK(r.duplicates_removed == 1);
  CHECK(r.instance.pairs.size() == 1);
}

TEST_CASE("serialize empty instance") {
  Instance empty;
  empty.name = "empty";
  const auto text = serialize_instance(empty);
  CHECK(text == "{\n  \"name\": \"empty\",\n  \"requests\": [],\n  \"pairs\": [],\n  \"ternaries\": []\n}\n");
  CHECK(parse_instance(text) == empty);
}

TEST_CASE("round trip of a three-request instance") {
  const auto inst = three_request_instance();
  const auto text = serialize_instance(inst);
  CHECK(parse_instance(text) == inst);
  CHECK(serialize_instance(inst) == text);
}

TEST_CASE("round trip property on random canonical instances") {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    testing::SmallInstanceSpec spec;
    spec.allow_dead_members = true;
    const auto inst = testing::random_small_instance(rng, spec);
    REQUIRE(parse_instance(serialize_instance(inst)) == inst);
  }
  Instance big = generate_instance(GeneratorParams{}, 3);
  CHECK(parse_instance(serialize_instance(big)) == big);
}

TEST_CASE("validate") {
  SUBCASE("valid instance") {
    Instance inst;
    inst.requests = {{0, 1, Kind::Mono}, {1, 2, Kind::Stereo}};
    CHECK(validate(inst).empty());
  }
  SUBCASE("ternary with repeated member") {
    Instance inst;
    inst.requests = {{0, 1, Kind::Mono}, {1, 2, Kind::Mono}};
    inst.ternaries = {{{CameraRef{0, 1}, CameraRef{0, 1}, CameraRef{1, 2}}}};
    const auto v = validate(inst);
    REQUIRE(v.size() == 1);
    CHECK(v[0].severity == Severity::Error);
    CHECK(v[0].message.find("ternary #0") != std::string::npos);
  }
  SUBCASE("camera 4 on a mono request is an advisory") {
    Instance inst;
    inst.requests = {{0, 1, Kind::Mono}, {1, 2, Kind::Mono}};
    inst.pairs = {{{0, 4}, {1, 1}}};
    const auto v = validate(inst);
    REQUIRE(v.size() == 1);
    CHECK(v[0].severity == Severity::Advisory);
    CHECK(v[0].message.find("invalid CameraRef") != std::string::npos);
    CHECK_FALSE(has_errors(v));
  }
  SUBCASE("dangling reference") {
    Instance inst;
    inst.requests = {{0, 1, Kind::Mono}};
    inst.pairs = {{{0, 1}, {7, 1}}};
    CHECK(has_errors(validate(inst)));
  }
}

TEST_CASE("instance_stats") {
  CHECK(instance_stats(Instance{}) == InstanceStats{0, 0, 0, 0});
  Instance inst;
  inst.requests = {{0, 1, Kind::Mono}, {1, 1, Kind::Mono}, {2, 1, Kind::Mono},
                   {3, 1, Kind::Stereo}, {4, 1, Kind::Stereo}};
  inst.pairs = {{{0, 1}, {1, 1}}, {{2, 2}, {3, 4}}};
  inst.ternaries = {{{CameraRef{0, 1}, CameraRef{1, 2}, CameraRef{4, 4}}}};
  CHECK(instance_stats(inst) == InstanceStats{5, 2, 3, 1});
}

TEST_CASE("reduce_instance") {
  const Instance base = generate_instance(GeneratorParams{}, 2024);

  SUBCASE("identity reduction") {
    CHECK(reduce_instance(base, base.requests.size(), 9) == base);
  }
  SUBCASE("single request keeps no multi-request constraint") {
    Instance five;
    five.requests = {{0, 1, Kind::Mono}, {1, 1, Kind::Mono}, {2, 1, Kind::Mono},
                     {3, 1, Kind::Mono}, {4, 1, Kind::Stereo}};
    five.pairs = {{{0, 1}, {1, 1}}, {{1, 2}, {2, 2}}, {{3, 3}, {4, 4}}};
    five.ternaries = {{{CameraRef{0, 1}, CameraRef{1, 1}, CameraRef{2, 1}}}};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto r = reduce_instance(five, 1, seed);
      CHECK(r.requests.size() == 1);
      CHECK(r.pairs.empty());
      CHECK(r.ternaries.empty());
    }
  }
  SUBCASE("deterministic") {
    CHECK(reduce_instance(base, 20, 5) == reduce_instance(base, 20, 5));
    CHECK_FALSE(reduce_instance(base, 20, 5) == reduce_instance(base, 20, 6));
  }
  SUBCASE("soundness") {
    for (std::size_t k : {1u, 7u, 15u, 33u, 59u}) {
      const auto r = reduce_instance(base, k, 100 + k);
      CHECK(instance_stats(r).n_requests == k);
      CHECK_FALSE(has_errors(validate(r)));
      for (const auto& req : r.requests) {
        const auto* orig = base.find(req.id);
        REQUIRE(orig);
        CHECK(*orig == req);
      }
      for (const auto& p : r.pairs)
        CHECK(std::find(base.pairs.begin(), base.pairs.end(), p) != base.pairs.end());
      for (const auto& t : r.ternaries)
        CHECK(std::find(base.ternaries.begin(), base.ternaries.end(), t) != base.ternaries.end());
      // Every base constraint within the survivors is kept.
      std::size_t expected = 0;
      for (const auto& p : base.pairs) expected += r.find(p.a.request_id) && r.find(p.b.request_id);
      CHECK(r.pairs.size() == expected);
    }
  }
  SUBCASE("out of range") {
    CHECK_THROWS_AS(reduce_instance(base, 0, 1), InstanceError);
    CHECK_THROWS_AS(reduce_instance(base, base.requests.size() + 1, 1), InstanceError);
  }
}

TEST_CASE("generator output is valid and deterministic") {
  GeneratorParams p;
  p.n_requests = 80;
  const auto a = generate_instance(p, 1);
  CHECK(validate(a).empty());
  CHECK(a == generate_instance(p, 1));
  CHECK(instance_stats(a).n_requests == 80);
}
