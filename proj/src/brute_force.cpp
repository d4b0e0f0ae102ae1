#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

#include "siasp/anneal.hpp"

namespace siasp {

namespace {

using Mask = std::uint64_t;

// Lexicographic order on x_0 x_1 ... x_{n-1}: the lowest differing bit decides.
bool lex_less(Mask a, Mask b) {
  const Mask d = a ^ b;
  if (d == 0) return false;
  return (a & (d & (~d + 1))) == 0;
}

Bits to_bits(Mask m, std::size_t n) {
  Bits b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>((m >> i) & 1u);
  return b;
}

void check_size(const QuboModel& model, std::size_t limit) {
  if (model.n > limit || model.n > 62)
    throw std::length_error("brute force: model has " + std::to_string(model.n) +
                            " variables, limit is " + std::to_string(limit));
}

// Gray-code walk over the low `free_bits` variables with the high bits fixed
// to `prefix`. Calls visit(mask, energy) for every state.
template <class Visit>
void gray_walk(const SparseQubo& q, std::size_t free_bits, Mask prefix, Visit&& visit) {
  Bits x = to_bits(prefix, q.n);
  std::vector<Coeff> field(q.diag);
  for (std::size_t i = 0; i < q.n; ++i) {
    if (!x[i]) continue;
    for (std::size_t k = q.row_start[i]; k < q.row_start[i + 1]; ++k)
      field[q.neighbor[k]] += q.coupling[k];
  }
  Coeff e = q.energy(x);
  Mask m = prefix;
  visit(m, e);
  const Mask steps = Mask{1} << free_bits;
  for (Mask g = 1; g < steps; ++g) {
    const auto i = static_cast<std::size_t>(std::countr_zero(g));
    e += x[i] ? -field[i] : field[i];
    x[i] ^= 1;
    m ^= Mask{1} << i;
    const Coeff sign = x[i] ? 1 : -1;
    for (std::size_t k = q.row_start[i]; k < q.row_start[i + 1]; ++k)
      field[q.neighbor[k]] += sign * q.coupling[k];
    visit(m, e);
  }
}

struct Split {
  std::size_t free_bits;
  std::size_t prefix_bits;
};

Split split_for(std::size_t n) {
  const std::size_t prefix_bits = std::min<std::size_t>(n, 6);
  return {n - prefix_bits, prefix_bits};
}

}  // namespace

BruteForceResult brute_force_min(const QuboModel& model, std::size_t limit) {
  check_size(model, limit);
  const SparseQubo q(model);
  const auto [free_bits, prefix_bits] = split_for(q.n);
  const auto chunks = static_cast<std::int64_t>(Mask{1} << prefix_bits);

  std::vector<std::pair<Coeff, Mask>> best(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    Coeff be = std::numeric_limits<Coeff>::max();
    Mask bm = 0;
    gray_walk(q, free_bits, static_cast<Mask>(c) << free_bits, [&](Mask m, Coeff e) {
      if (e < be || (e == be && lex_less(m, bm))) {
        be = e;
        bm = m;
      }
    });
    best[static_cast<std::size_t>(c)] = {be, bm};
  }

  auto winner = best.front();
  for (const auto& cand : best)
    if (cand.first < winner.first || (cand.first == winner.first && lex_less(cand.second, winner.second)))
      winner = cand;
  return {to_bits(winner.second, q.n), winner.first};
}

BruteForceResult brute_force_min_reference(const QuboModel& model, std::size_t limit) {
  check_size(model, limit);
  BruteForceResult best{Bits(model.n, 0), std::numeric_limits<Coeff>::max()};
  Bits x(model.n, 0);
  const Mask total = Mask{1} << model.n;
  for (Mask m = 0; m < total; ++m) {
    for (std::size_t i = 0; i < model.n; ++i) x[i] = static_cast<std::uint8_t>((m >> i) & 1u);
    const Coeff e = energy(model, x);
    if (e < best.energy || (e == best.energy && x < best.bits)) best = {x, e};
  }
  return best;
}

Minimizers brute_force_minimizers(const QuboModel& model, std::size_t limit, std::size_t cap) {
  check_size(model, limit);
  const SparseQubo q(model);
  const auto [free_bits, prefix_bits] = split_for(q.n);
  const auto chunks = static_cast<std::int64_t>(Mask{1} << prefix_bits);

  struct ChunkResult {
    Coeff energy = std::numeric_limits<Coeff>::max();
    std::vector<Mask> masks;
    bool truncated = false;
  };
  std::vector<ChunkResult> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    auto& part = parts[static_cast<std::size_t>(c)];
    gray_walk(q, free_bits, static_cast<Mask>(c) << free_bits, [&](Mask m, Coeff e) {
      if (e < part.energy) {
        part.energy = e;
        part.masks.assign(1, m);
        part.truncated = false;
      } else if (e == part.energy) {
        if (part.masks.size() < cap)
          part.masks.push_back(m);
        else
          part.truncated = true;
      }
    });
  }

  Minimizers out;
  out.energy = std::numeric_limits<Coeff>::max();
  for (const auto& p : parts) out.energy = std::min(out.energy, p.energy);
  std::vector<Mask> all;
  for (const auto& p : parts) {
    if (p.energy != out.energy) continue;
    all.insert(all.end(), p.masks.begin(), p.masks.end());
    out.truncated = out.truncated || p.truncated;
  }
  std::sort(all.begin(), all.end(), lex_less);
  if (all.size() > cap) {
    all.resize(cap);
    out.truncated = true;
  }
  for (Mask m : all) out.bits.push_back(to_bits(m, q.n));
  return out;
}

}  // namespace siasp
