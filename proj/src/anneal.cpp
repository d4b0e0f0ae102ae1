#include "siasp/anneal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "siasp/rng.hpp"

namespace siasp {

SparseQubo::SparseQubo(const QuboModel& model)
    : n(model.n), offset(model.offset), diag(model.n, 0), row_start(model.n + 1, 0) {
  for (const auto& [i, c] : model.diag) diag.at(i) = c;
  for (const auto& [ij, c] : model.offdiag) {
    ++row_start[ij.first + 1];
    ++row_start[ij.second + 1];
  }
  for (std::size_t i = 0; i < n; ++i) row_start[i + 1] += row_start[i];
  neighbor.resize(row_start[n]);
  coupling.resize(row_start[n]);
  std::vector<std::size_t> fill(row_start.begin(), row_start.end() - 1);
  for (const auto& [ij, c] : model.offdiag) {
    const auto [i, j] = ij;
    neighbor[fill[i]] = j;
    coupling[fill[i]++] = c;
    neighbor[fill[j]] = i;
    coupling[fill[j]++] = c;
  }
}

Coeff SparseQubo::energy(std::span<const std::uint8_t> bits) const {
  Coeff e = offset;
  for (std::size_t i = 0; i < n; ++i) {
    if (!bits[i]) continue;
    e += diag[i];
    for (std::size_t k = row_start[i]; k < row_start[i + 1]; ++k)
      if (neighbor[k] > i && bits[neighbor[k]]) e += coupling[k];
  }
  return e;
}

BetaRange default_betas(const QuboModel& model) {
  const SparseQubo q(model);
  std::vector<Coeff> scale(q.n, 0);
  for (std::size_t i = 0; i < q.n; ++i) {
    Coeff s = std::abs(q.diag[i]);
    for (std::size_t k = q.row_start[i]; k < q.row_start[i + 1]; ++k) s += std::abs(q.coupling[k]);
    scale[i] = s;
  }
  BetaRange b;
  b.final = std::log(1000.0);
  if (scale.empty()) {
    b.initial = b.final;
    return b;
  }
  std::nth_element(scale.begin(), scale.begin() + static_cast<std::ptrdiff_t>(scale.size() / 2),
                   scale.end());
  const auto median = static_cast<double>(scale[scale.size() / 2]);
  b.initial = median > 0 ? std::min(std::log(2.0) / median, b.final) : b.final;
  return b;
}

BetaRange resolve_betas(const QuboModel& model, const AnnealParams& params) {
  BetaRange b{};
  if (!params.beta_initial || !params.beta_final) b = default_betas(model);
  if (params.beta_initial) b.initial = *params.beta_initial;
  if (params.beta_final) b.final = *params.beta_final;
  if (!(b.initial > 0) || !(b.initial <= b.final))
    throw std::invalid_argument("annealing schedule needs 0 < beta_initial <= beta_final");
  return b;
}

std::size_t SampleSet::total_reads() const {
  std::size_t total = 0;
  for (const auto& s : samples) total += s.occurrences;
  return total;
}

namespace {

std::vector<double> geometric_schedule(const BetaRange& b, std::size_t sweeps) {
  std::vector<double> betas(sweeps);
  const double ratio = b.final / b.initial;
  for (std::size_t k = 0; k < sweeps; ++k) {
    const double t = sweeps == 1 ? 1.0 : static_cast<double>(k) / static_cast<double>(sweeps - 1);
    betas[k] = b.initial * std::pow(ratio, t);
  }
  return betas;
}

// Metropolis moves with beta * dE above this are rejected without a draw.
constexpr double kRejectCutoff = 40.0;

struct ReadResult {
  Bits bits;
  Coeff energy;
};

// One read: random start, then sequential single-flip Metropolis sweeps.
// Local fields keep every dE lookup O(1) and every accepted flip O(degree).
ReadResult anneal_read(const SparseQubo& q, const std::vector<double>& betas, Rng rng) {
  Bits x(q.n, 0);
  for (std::size_t i = 0; i < q.n; ++i) x[i] = static_cast<std::uint8_t>(rng() >> 63);

  std::vector<Coeff> field(q.diag);
  for (std::size_t i = 0; i < q.n; ++i) {
    if (!x[i]) continue;
    for (std::size_t k = q.row_start[i]; k < q.row_start[i + 1]; ++k)
      field[q.neighbor[k]] += q.coupling[k];
  }
  Coeff e = q.energy(x);

  for (const double beta : betas) {
    for (std::size_t i = 0; i < q.n; ++i) {
      const Coeff delta = x[i] ? -field[i] : field[i];
      if (delta > 0) {
        const double scaled = beta * static_cast<double>(delta);
        if (scaled > kRejectCutoff || uniform01(rng) >= std::exp(-scaled)) continue;
      }
      x[i] ^= 1;
      e += delta;
      const Coeff sign = x[i] ? 1 : -1;
      for (std::size_t k = q.row_start[i]; k < q.row_start[i + 1]; ++k)
        field[q.neighbor[k]] += sign * q.coupling[k];
    }
  }
  return {std::move(x), e};
}

SampleSet merge_reads(std::vector<ReadResult>& reads) {
  std::map<Bits, std::pair<Coeff, std::size_t>> merged;
  for (auto& r : reads) {
    auto [it, inserted] = merged.try_emplace(std::move(r.bits), r.energy, 0);
    ++it->second.second;
  }
  SampleSet set;
  set.samples.reserve(merged.size());
  for (auto& [bits, ec] : merged) set.samples.push_back({bits, ec.first, ec.second});
  std::stable_sort(set.samples.begin(), set.samples.end(),
                   [](const Sample& a, const Sample& b) { return a.energy < b.energy; });
  set.best_index = 0;
  return set;
}

void check_params(const AnnealParams& params) {
  if (params.reads < 1) throw std::invalid_argument("reads must be >= 1");
  if (params.sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
}

}  // namespace

SampleSet simulated_anneal(const QuboModel& model, const AnnealParams& params) {
  check_params(params);
  const SparseQubo q(model);
  const auto betas = geometric_schedule(resolve_betas(model, params), params.sweeps);
  std::vector<ReadResult> reads(params.reads);
  const auto count = static_cast<std::int64_t>(params.reads);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t r = 0; r < count; ++r)
    reads[static_cast<std::size_t>(r)] =
        anneal_read(q, betas, derive_stream(params.seed, static_cast<std::uint64_t>(r)));
  return merge_reads(reads);
}

SampleSet simulated_anneal_serial(const QuboModel& model, const AnnealParams& params) {
  check_params(params);
  const SparseQubo q(model);
  const auto betas = geometric_schedule(resolve_betas(model, params), params.sweeps);
  std::vector<ReadResult> reads;
  reads.reserve(params.reads);
  for (std::size_t r = 0; r < params.reads; ++r)
    reads.push_back(anneal_read(q, betas, derive_stream(params.seed, r)));
  return merge_reads(reads);
}

}  // namespace siasp
