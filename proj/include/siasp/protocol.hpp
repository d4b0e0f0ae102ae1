#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "siasp/anneal.hpp"
#include "siasp/classical.hpp"
#include "siasp/qubo.hpp"

namespace siasp {

struct RunReport {
  Coeff best_energy = 0;
  // Reported schedule: the best sample if it decodes feasible, else the best
  // feasible sample in the set; empty when no sample is feasible.
  std::optional<Schedule> best_schedule;
  Weight objective = 0;  // 0 when infeasible
  double normalized = 0;
  bool feasible = false;
  // True when the lowest-energy sample was infeasible (a fallback was used
  // or nothing feasible existed).
  bool filtered_infeasible = false;
  // Check of the lowest-energy sample.
  FeasibilityReport violations;
};

// objective / optimum; an optimum of 0 normalizes to 1 by convention.
double normalize(Weight objective, Weight optimum);

RunReport evaluate_run(const Instance& inst, const VariableMap& map, const SampleSet& samples,
                       Weight optimum);

struct BruteForceSolver {
  std::size_t limit = kBruteForceLimit;
};

using QuboSolver = std::variant<AnnealParams, BruteForceSolver>;

struct ProtocolResult {
  // Over feasible reports only; absent when none was feasible.
  std::optional<double> mean;
  std::optional<double> stddev;  // population
  std::size_t n_feasible = 0;
  std::vector<RunReport> reports;
};

// Repetition k anneals with seed + k.
ProtocolResult repeat_protocol(const Instance& inst, Encoding enc, const QuboSolver& solver,
                               std::size_t repetitions, Weight optimum);

// Mean and population standard deviation.
std::pair<double, double> mean_and_stddev(const std::vector<double>& values);

}  // namespace siasp
