#include "doctest.h"
#include "siasp/ising.hpp"
#include "siasp/rng.hpp"
#include "support/oracles.hpp"

using namespace siasp;

namespace {

Quarter half(int k) { return Quarter{2 * k}; }

}  // namespace

TEST_CASE("Quarter formatting") {
  CHECK(Quarter{-2}.str() == "-1/2");
  CHECK(Quarter{12}.str() == "3");
  CHECK(Quarter{5}.str() == "5/4");
  CHECK(Quarter{0}.str() == "0");
  CHECK(Quarter{-3}.to_double() == doctest::Approx(-0.75));
}

TEST_CASE("single linear term") {
  QuboModel m;
  m.n = 1;
  m.add_linear(0, 1);
  const auto is = to_ising(m);
  CHECK(is.h.at(0) == half(-1));
  CHECK(is.offset == half(1));
  const std::int8_t up[] = {1}, down[] = {-1};
  CHECK(ising_energy(is, up) == Quarter{0});
  CHECK(ising_energy(is, down) == Quarter::from_integer(1));
}

TEST_CASE("single quadratic term") {
  QuboModel m;
  m.n = 2;
  m.add_quadratic(0, 1, 4);
  const auto is = to_ising(m);
  CHECK(is.J.at({0, 1}) == Quarter::from_integer(1));
  CHECK(is.h.at(0) == Quarter::from_integer(-1));
  CHECK(is.h.at(1) == Quarter::from_integer(-1));
  CHECK(is.offset == Quarter::from_integer(1));
}

TEST_CASE("energies agree on every assignment") {
  Rng rng(31);
  for (int k = 0; k < 80; ++k) {
    const std::size_t n = 1 + uniform_below(rng, 10);
    const auto m = testing::random_model(rng, n, 0.5);
    const auto is = to_ising(m);
    CHECK(is.n == n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      Bits x(n);
      std::vector<std::int8_t> z(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = (mask >> i) & 1u;
        z[i] = x[i] ? -1 : 1;
      }
      REQUIRE(ising_energy(is, z) == Quarter::from_integer(energy(m, x)));
    }
  }
}
