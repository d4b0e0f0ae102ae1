#include "siasp/ising.hpp"

#include <numeric>
#include <stdexcept>

namespace siasp {

std::string Quarter::str() const {
  const std::int64_t g = std::gcd(quarters, std::int64_t{4});
  const std::int64_t num = quarters / (g == 0 ? 1 : g);
  const std::int64_t den = g == 0 ? 1 : 4 / g;
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

IsingModel to_ising(const QuboModel& model) {
  IsingModel out;
  out.n = model.n;
  auto add_h = [&](std::size_t i, Quarter q) {
    if (q.quarters == 0) return;
    auto [it, inserted] = out.h.try_emplace(i, q);
    if (!inserted && (it->second += q).quarters == 0) out.h.erase(it);
  };

  out.offset = Quarter::from_integer(model.offset);
  // a x = a/2 - (a/2) z
  for (const auto& [i, a] : model.diag) {
    add_h(i, Quarter{-2 * a});
    out.offset += Quarter{2 * a};
  }
  // b x_i x_j = (b/4)(1 - z_i - z_j + z_i z_j)
  for (const auto& [ij, b] : model.offdiag) {
    out.J.emplace(ij, Quarter{b});
    add_h(ij.first, Quarter{-b});
    add_h(ij.second, Quarter{-b});
    out.offset += Quarter{b};
  }
  return out;
}

Quarter ising_energy(const IsingModel& model, std::span<const std::int8_t> spins) {
  if (spins.size() != model.n)
    throw std::invalid_argument("spin vector has length " + std::to_string(spins.size()) +
                                ", model has " + std::to_string(model.n));
  Quarter e = model.offset;
  for (const auto& [i, h] : model.h) e += h * spins[i];
  for (const auto& [ij, j] : model.J) e += j * (spins[ij.first] * spins[ij.second]);
  return e;
}

}  // namespace siasp
