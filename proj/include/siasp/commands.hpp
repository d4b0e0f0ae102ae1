#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "siasp/anneal.hpp"
#include "siasp/classical.hpp"
#include "siasp/instance.hpp"
#include "siasp/qubo.hpp"

namespace siasp::cli {

// Usage and configuration problems (bad flag values, empty instance list).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Instance read_instance_file(const std::filesystem::path& path, std::ostream* warnings = nullptr);
void write_text_file(const std::filesystem::path& path, const std::string& text);

std::string stats_header();
std::string stats_row(const Instance& inst);

void cmd_stats(const std::filesystem::path& instance, std::ostream& out);

struct ReduceOptions {
  std::size_t target = 0;
  std::uint64_t seed = 0;
  std::filesystem::path out;
  std::optional<std::string> name;  // default: "<input name>-<target>"
};
void cmd_reduce(const std::filesystem::path& instance, const ReduceOptions& opts,
                std::ostream& out);

struct EncodeOptions {
  Encoding encoding = Encoding::ThreeCam;
  std::filesystem::path out;
  bool graph = false;  // also writes <out stem>.dot
};
void cmd_encode(const std::filesystem::path& instance, const EncodeOptions& opts,
                std::ostream& out);

enum class SolverKind { Anneal, BruteForce, Exact };
SolverKind parse_solver(std::string_view text);
std::string_view to_string(SolverKind kind);

struct SolveOptions {
  Encoding encoding = Encoding::ThreeCam;
  SolverKind solver = SolverKind::Anneal;
  AnnealParams anneal;
  std::size_t brute_limit = kBruteForceLimit;
  ExactLimits exact_limits;
  std::optional<Weight> optimum;
  std::optional<std::filesystem::path> samples_out;
};
void cmd_solve(const std::filesystem::path& instance, const SolveOptions& opts, std::ostream& out);

struct BenchmarkConfig {
  std::vector<std::filesystem::path> instances;
  std::vector<Encoding> encodings{Encoding::FourCam, Encoding::ThreeCam};
  std::vector<SolverKind> solvers{SolverKind::Anneal};
  std::size_t repetitions = 5;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "benchmark-out";
  std::size_t reads = 2000;
  std::size_t sweeps = 1000;
  ExactLimits exact_limits;
  // Applies to every instance without an entry in `optima`.
  std::optional<Weight> optimum;
  std::map<std::string, Weight> optima;  // keyed by instance path as given
};

// Config document: JSON object mirroring BenchmarkConfig
// ("instances", "encodings", "solvers", "repetitions", "seed", "out",
// "reads", "sweeps", "optimum", "optima"). Unknown keys are rejected.
BenchmarkConfig load_benchmark_config(const std::filesystem::path& path);
void validate_config(const BenchmarkConfig& config);

struct BenchmarkOutput {
  std::string csv;
  std::string summary;
};

// Runs every (instance, encoding, solver, repetition) and renders the CSV and
// the mean ± std summary. Instance failures become rows with feasible=error.
BenchmarkOutput run_benchmark(const BenchmarkConfig& config);
void cmd_benchmark(const BenchmarkConfig& config, std::ostream& out);

inline constexpr const char* kCsvHeader =
    "instance,encoding,solver,rep,seed,best_energy,objective,optimum,normalized,feasible,"
    "filtered_infeasible";

struct GenerateOptions {
  GeneratorParams params;
  std::uint64_t seed = 0;
  std::filesystem::path out;
};
void cmd_generate(const GenerateOptions& opts, std::ostream& out);

}  // namespace siasp::cli
