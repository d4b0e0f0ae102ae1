#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "siasp/instance.hpp"

namespace siasp {

// Camera assignments, kept sorted. A well-formed schedule holds at most one
// reference per request; decoded QUBO samples may hold more, and
// check_feasible reports that as a Once violation.
struct Schedule {
  std::vector<CameraRef> assignments;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

enum class ViolationKind { Once, Pair, Ternary, MonoAsStereo, StereoAsMono };

std::string_view to_string(ViolationKind kind);

struct ConstraintViolation {
  ViolationKind kind;
  std::string element;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<ConstraintViolation> violations;
};

// Sum of w_i over every assignment in the schedule (a request assigned twice
// counts twice, matching the double sum of the objective).
Weight objective_value(const Instance& inst, const Schedule& sched);

FeasibilityReport check_feasible(const Instance& inst, const Schedule& sched);

// Upper bound ignoring every constraint: the sum of all weights.
Weight max_objective(const Instance& inst);

struct ExactLimits {
  std::size_t max_requests = 64;
  std::chrono::milliseconds time_budget{60'000};
};

struct ExactResult {
  Schedule schedule;
  Weight value = 0;
  bool proven_optimal = false;
  std::uint64_t nodes = 0;
};

// Depth-first branch and bound. Requests are branched by descending weight
// (ties by id), cameras ascending, skipping last.
ExactResult solve_exact(const Instance& inst, const ExactLimits& limits = {});

}  // namespace siasp
