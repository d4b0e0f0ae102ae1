#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>

#include "siasp/qubo.hpp"

namespace siasp {

// Exact multiple of 1/4. Every Ising coefficient obtained from an integer
// QUBO through x = (1 - z) / 2 is one.
struct Quarter {
  std::int64_t quarters = 0;

  static constexpr Quarter from_integer(std::int64_t v) { return Quarter{4 * v}; }

  double to_double() const { return static_cast<double>(quarters) / 4.0; }
  // Reduced fraction, e.g. "-1/2", "3", "5/4".
  std::string str() const;

  friend constexpr Quarter operator+(Quarter a, Quarter b) { return {a.quarters + b.quarters}; }
  friend constexpr Quarter operator-(Quarter a) { return {-a.quarters}; }
  friend constexpr Quarter operator*(Quarter a, std::int64_t k) { return {a.quarters * k}; }
  Quarter& operator+=(Quarter b) {
    quarters += b.quarters;
    return *this;
  }
  friend auto operator<=>(const Quarter&, const Quarter&) = default;
};

// H(z) = sum_i h_i z_i + sum_{i<j} J_ij z_i z_j + offset, z_i in {-1, +1}.
struct IsingModel {
  std::size_t n = 0;
  std::map<std::size_t, Quarter> h;
  std::map<std::pair<std::size_t, std::size_t>, Quarter> J;
  Quarter offset;
};

// Spin z_i = 1 - 2 x_i, so x_i = 1 maps to z_i = -1.
IsingModel to_ising(const QuboModel& model);

Quarter ising_energy(const IsingModel& model, std::span<const std::int8_t> spins);

}  // namespace siasp
