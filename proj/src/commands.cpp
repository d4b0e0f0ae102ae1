#include "siasp/commands.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "siasp/protocol.hpp"

namespace siasp::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string fixed6(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

std::string fixed2(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

std::string schedule_str(const Schedule& s) {
  if (s.assignments.empty()) return "(empty)";
  std::string out;
  for (const auto& a : s.assignments) {
    if (!out.empty()) out += ' ';
    out += "[" + std::to_string(a.request_id) + "," + std::to_string(a.camera) + "]";
  }
  return out;
}

std::string display_name(const Instance& inst, const fs::path& path) {
  return inst.name.empty() ? path.stem().string() : inst.name;
}

struct OptimumSource {
  std::optional<Weight> value;
  std::string origin;
};

// Known optimum from the caller, else from the exact solver when it proves
// optimality. Never derived from sampled solutions.
OptimumSource find_optimum(const Instance& inst, std::optional<Weight> given,
                           const ExactLimits& limits) {
  if (given) return {given, "user"};
  if (inst.requests.size() > limits.max_requests)
    return {std::nullopt, "instance exceeds exact solver limit"};
  const auto r = solve_exact(inst, limits);
  if (!r.proven_optimal) return {std::nullopt, "exact solver budget exhausted"};
  return {r.value, "exact"};
}

}  // namespace

Instance read_instance_file(const fs::path& path, std::ostream* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  auto loaded = load_instance(buf.str());
  if (warnings && loaded.duplicates_removed > 0)
    *warnings << path.string() << ": removed " << loaded.duplicates_removed
              << " duplicate constraint(s)\n";
  return std::move(loaded.instance);
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << text;
}

std::string stats_header() {
  std::ostringstream os;
  os << std::left << std::setw(16) << "ID" << std::right;
  for (const char* col :
       {"requests", "stereo", "constraints", "ternary", "L4cam", "Q4cam", "L3cam", "Q3cam"})
    os << std::setw(12) << col;
  return os.str();
}

std::string stats_row(const Instance& inst) {
  const auto s = instance_stats(inst);
  const auto four = term_counts(encode(inst, Encoding::FourCam));
  const auto three = term_counts(encode(inst, Encoding::ThreeCam));
  std::ostringstream os;
  os << std::left << std::setw(16) << (inst.name.empty() ? "-" : inst.name) << std::right;
  for (std::size_t v : {s.n_requests, s.n_stereo, s.n_constraints, s.n_ternary, four.linear,
                        four.quadratic, three.linear, three.quadratic})
    os << std::setw(12) << v;
  return os.str();
}

void cmd_stats(const fs::path& instance, std::ostream& out) {
  const auto inst = read_instance_file(instance, &out);
  out << stats_header() << "\n" << stats_row(inst) << "\n";
}

void cmd_reduce(const fs::path& instance, const ReduceOptions& opts, std::ostream& out) {
  const auto inst = read_instance_file(instance);
  Instance reduced = reduce_instance(inst, opts.target, opts.seed);
  reduced.name = opts.name ? *opts.name : inst.name + "-" + std::to_string(opts.target);
  write_text_file(opts.out, serialize_instance(reduced));
  out << stats_header() << "\n" << stats_row(reduced) << "\n";
}

void cmd_encode(const fs::path& instance, const EncodeOptions& opts, std::ostream& out) {
  const auto inst = read_instance_file(instance);
  const auto model = encode(inst, opts.encoding);
  write_text_file(opts.out, export_qubo(model));
  const auto counts = term_counts(model);
  out << "wrote " << opts.out.string() << ": " << model.n << " variables, " << counts.linear
      << " linear, " << counts.quadratic << " quadratic, penalty " << model.penalty << "\n";
  if (opts.graph) {
    fs::path dot = opts.out;
    dot.replace_extension(".dot");
    write_text_file(dot, export_graph(model));
    out << "wrote " << dot.string() << "\n";
  }
}

SolverKind parse_solver(std::string_view text) {
  if (text == "sa") return SolverKind::Anneal;
  if (text == "brute") return SolverKind::BruteForce;
  if (text == "exact" || text == "exact-classical") return SolverKind::Exact;
  throw UsageError("unknown solver \"" + std::string(text) + "\" (use sa, brute or exact)");
}

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::Anneal: return "sa";
    case SolverKind::BruteForce: return "brute";
    case SolverKind::Exact: return "exact";
  }
  return "?";
}

void cmd_solve(const fs::path& instance, const SolveOptions& opts, std::ostream& out) {
  const auto inst = read_instance_file(instance, &out);
  out << "instance: " << display_name(inst, instance) << "\n";
  out << "solver: " << to_string(opts.solver);

  const auto optimum = find_optimum(inst, opts.optimum, opts.exact_limits);
  RunReport report;

  if (opts.solver == SolverKind::Exact) {
    out << "\n";
    const auto r = solve_exact(inst, opts.exact_limits);
    report.best_energy = -r.value;
    report.feasible = true;
    report.objective = r.value;
    report.best_schedule = r.schedule;
    report.violations = check_feasible(inst, r.schedule);
    out << "proven_optimal: " << (r.proven_optimal ? "yes" : "no") << "\n";
  } else {
    const auto model = encode(inst, opts.encoding);
    out << "  encoding: " << to_string(opts.encoding) << "  variables: " << model.n
        << "  penalty: " << model.penalty << "\n";
    SampleSet samples;
    if (opts.solver == SolverKind::Anneal) {
      samples = simulated_anneal(model, opts.anneal);
    } else {
      auto r = brute_force_min(model, opts.brute_limit);
      samples.samples.push_back({std::move(r.bits), r.energy, 1});
    }
    report = evaluate_run(inst, *model.var_map, samples, optimum.value.value_or(0));
    if (opts.samples_out) {
      std::ostringstream csv;
      csv << "energy,occurrences,bits\n";
      for (const auto& s : samples.samples) {
        csv << s.energy << "," << s.occurrences << ",";
        for (auto b : s.bits) csv << static_cast<int>(b);
        csv << "\n";
      }
      write_text_file(*opts.samples_out, csv.str());
    }
  }

  out << "best_energy: " << report.best_energy << "\n";
  out << "schedule: " << (report.best_schedule ? schedule_str(*report.best_schedule) : "infeasible")
      << "\n";
  out << "feasible: " << (report.feasible ? "yes" : "no") << "\n";
  for (const auto& v : report.violations.violations)
    out << "  lowest-energy sample violates " << to_string(v.kind) << ": " << v.element << "\n";
  out << "filtered_infeasible: " << (report.filtered_infeasible ? "yes" : "no") << "\n";
  out << "objective: " << report.objective << "\n";
  if (optimum.value) {
    out << "optimum: " << *optimum.value << " (" << optimum.origin << ")\n";
    out << "normalized: "
        << fixed6(report.feasible ? normalize(report.objective, *optimum.value) : 0.0) << "\n";
  } else {
    out << "optimum: unknown (" << optimum.origin << "; pass --optimum)\n";
  }
}

BenchmarkConfig load_benchmark_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config " + path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  BenchmarkConfig cfg;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "instances") {
        cfg.instances.clear();
        for (const auto& p : value) cfg.instances.emplace_back(p.get<std::string>());
      } else if (key == "encodings") {
        cfg.encodings.clear();
        for (const auto& e : value) cfg.encodings.push_back(parse_encoding(e.get<std::string>()));
      } else if (key == "solvers") {
        cfg.solvers.clear();
        for (const auto& s : value) cfg.solvers.push_back(parse_solver(s.get<std::string>()));
      } else if (key == "repetitions") {
        cfg.repetitions = value.get<std::size_t>();
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "out") {
        cfg.out_dir = value.get<std::string>();
      } else if (key == "reads") {
        cfg.reads = value.get<std::size_t>();
      } else if (key == "sweeps") {
        cfg.sweeps = value.get<std::size_t>();
      } else if (key == "optimum") {
        cfg.optimum = value.get<Weight>();
      } else if (key == "optima") {
        for (const auto& [k, v] : value.items()) cfg.optima[k] = v.get<Weight>();
      } else {
        throw UsageError("config: unknown key \"" + key + "\"");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError("config " + path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError("config " + path.string() + ": " + e.what());
  }
  return cfg;
}

void validate_config(const BenchmarkConfig& config) {
  if (config.instances.empty()) throw UsageError("benchmark needs at least one instance");
  if (config.encodings.empty()) throw UsageError("benchmark needs at least one encoding");
  if (config.solvers.empty()) throw UsageError("benchmark needs at least one solver");
  if (config.repetitions < 1) throw UsageError("repetitions must be >= 1");
  if (config.reads < 1 || config.sweeps < 1) throw UsageError("reads and sweeps must be >= 1");
}

BenchmarkOutput run_benchmark(const BenchmarkConfig& config) {
  validate_config(config);

  std::ostringstream csv, summary;
  csv << kCsvHeader << "\n";
  summary << std::left << std::setw(20) << "instance" << std::setw(10) << "encoding"
          << std::setw(8) << "solver" << std::setw(18) << "normalized" << "feasible\n";

  for (const auto& path : config.instances) {
    Instance inst;
    std::string label = path.stem().string();
    std::optional<Weight> optimum;
    std::string failure;
    try {
      inst = read_instance_file(path);
      label = display_name(inst, path);
      auto given = config.optimum;
      if (auto it = config.optima.find(path.string()); it != config.optima.end())
        given = it->second;
      const auto found = find_optimum(inst, given, config.exact_limits);
      optimum = found.value;
      if (!optimum) failure = "optimum unknown: " + found.origin;
    } catch (const std::exception& e) {
      failure = e.what();
    }

    for (const auto enc : config.encodings) {
      for (const auto solver : config.solvers) {
        auto fail_row = [&](const std::string& why) {
          csv << label << "," << to_string(enc) << "," << to_string(solver)
              << ",,,,,,,error,\n";
          summary << std::left << std::setw(20) << label << std::setw(10) << to_string(enc)
                  << std::setw(8) << to_string(solver) << "error: " << why << "\n";
        };
        if (!failure.empty()) {
          fail_row(failure);
          continue;
        }

        std::vector<std::string> rows;
        std::vector<double> values;
        std::size_t filtered = 0;
        try {
          std::optional<QuboModel> model;
          if (solver != SolverKind::Exact) model = encode(inst, enc);
          for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
            const std::uint64_t seed = config.seed + rep;
            RunReport report;
            if (solver == SolverKind::Exact) {
              const auto r = solve_exact(inst, config.exact_limits);
              report.best_energy = -r.value;
              report.feasible = true;
              report.objective = r.value;
              report.normalized = normalize(r.value, *optimum);
            } else {
              SampleSet samples;
              if (solver == SolverKind::Anneal) {
                AnnealParams p;
                p.reads = config.reads;
                p.sweeps = config.sweeps;
                p.seed = seed;
                samples = simulated_anneal(*model, p);
              } else {
                auto r = brute_force_min(*model);
                samples.samples.push_back({std::move(r.bits), r.energy, 1});
              }
              report = evaluate_run(inst, *model->var_map, samples, *optimum);
            }
            if (report.feasible) values.push_back(report.normalized);
            if (report.filtered_infeasible) ++filtered;
            std::ostringstream row;
            row << label << "," << to_string(enc) << "," << to_string(solver) << "," << rep << ","
                << seed << "," << report.best_energy << "," << report.objective << ","
                << *optimum << "," << fixed6(report.normalized) << ","
                << (report.feasible ? "true" : "false") << ","
                << (report.filtered_infeasible ? "true" : "false");
            rows.push_back(row.str());
          }
        } catch (const std::exception& e) {
          fail_row(e.what());
          continue;
        }
        for (const auto& r : rows) csv << r << "\n";

        summary << std::left << std::setw(20) << label << std::setw(10) << to_string(enc)
                << std::setw(8) << to_string(solver);
        if (values.empty()) {
          summary << std::setw(18) << "-";
        } else {
          const auto [m, s] = mean_and_stddev(values);
          summary << std::setw(18) << (fixed2(m) + " +- " + fixed2(s));
        }
        summary << values.size() << "/" << config.repetitions;
        if (filtered) summary << " (" << filtered << " filtered)";
        summary << "\n";
      }
    }
  }
  return {csv.str(), summary.str()};
}

void cmd_benchmark(const BenchmarkConfig& config, std::ostream& out) {
  validate_config(config);
  const auto result = run_benchmark(config);
  write_text_file(config.out_dir / "benchmark.csv", result.csv);
  write_text_file(config.out_dir / "summary.txt", result.summary);
  out << result.summary;
}

void cmd_generate(const GenerateOptions& opts, std::ostream& out) {
  const auto inst = generate_instance(opts.params, opts.seed);
  write_text_file(opts.out, serialize_instance(inst));
  out << stats_header() << "\n" << stats_row(inst) << "\n";
}

}  // namespace siasp::cli
