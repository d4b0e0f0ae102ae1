#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "siasp/qubo.hpp"

namespace siasp {

// Adjacency-list view of a QuboModel for the inner loops.
struct SparseQubo {
  std::size_t n = 0;
  Coeff offset = 0;
  std::vector<Coeff> diag;
  std::vector<std::size_t> row_start;  // n + 1 entries
  std::vector<std::size_t> neighbor;
  std::vector<Coeff> coupling;

  explicit SparseQubo(const QuboModel& model);

  Coeff energy(std::span<const std::uint8_t> bits) const;
};

struct AnnealParams {
  std::size_t reads = 2000;
  std::size_t sweeps = 1000;
  // Unset endpoints are derived from the model (see default_betas).
  std::optional<double> beta_initial;
  std::optional<double> beta_final;
  std::uint64_t seed = 0;
};

struct BetaRange {
  double initial = 0;
  double final = 0;
};

// Hot end: a median-sized move is accepted with probability 1/2.
// Cold end: a unit uphill move is accepted with probability 1e-3.
BetaRange default_betas(const QuboModel& model);
BetaRange resolve_betas(const QuboModel& model, const AnnealParams& params);

struct Sample {
  Bits bits;
  Coeff energy = 0;
  std::size_t occurrences = 0;
};

// Distinct samples ordered by (energy, bitstring); best_index is always 0
// for a non-empty set.
struct SampleSet {
  std::vector<Sample> samples;
  std::size_t best_index = 0;

  const Sample& best() const { return samples.at(best_index); }
  std::size_t total_reads() const;
};

// Reads run in parallel with OpenMP. Each read owns an RNG stream derived
// from (seed, read index), so the result equals simulated_anneal_serial.
SampleSet simulated_anneal(const QuboModel& model, const AnnealParams& params);
SampleSet simulated_anneal_serial(const QuboModel& model, const AnnealParams& params);

struct BruteForceResult {
  Bits bits;
  Coeff energy = 0;
};

inline constexpr std::size_t kBruteForceLimit = 24;

// Exact minimum over all 2^n bitstrings. Ties go to the lexicographically
// smallest bitstring (x_0 first). Throws std::length_error above `limit`.
BruteForceResult brute_force_min(const QuboModel& model, std::size_t limit = kBruteForceLimit);
// Plain enumeration with full energy evaluation, kept as the test reference.
BruteForceResult brute_force_min_reference(const QuboModel& model,
                                           std::size_t limit = kBruteForceLimit);

struct Minimizers {
  Coeff energy = 0;
  std::vector<Bits> bits;  // lexicographic order
  bool truncated = false;
};

// Every global minimizer, up to `cap` of them.
Minimizers brute_force_minimizers(const QuboModel& model, std::size_t limit = kBruteForceLimit,
                                  std::size_t cap = 1u << 16);

}  // namespace siasp
