#include "siasp/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace siasp {

double normalize(Weight objective, Weight optimum) {
  if (optimum == 0) return 1.0;
  return static_cast<double>(objective) / static_cast<double>(optimum);
}

RunReport evaluate_run(const Instance& inst, const VariableMap& map, const SampleSet& samples,
                       Weight optimum) {
  RunReport report;
  if (samples.samples.empty()) {
    report.filtered_infeasible = true;
    return report;
  }
  const Sample& best = samples.best();
  report.best_energy = best.energy;

  Schedule decoded{decode(map, best.bits).assignments};
  report.violations = check_feasible(inst, decoded);
  if (report.violations.feasible) {
    report.feasible = true;
    report.objective = objective_value(inst, decoded);
    report.best_schedule = std::move(decoded);
  } else {
    report.filtered_infeasible = true;
    for (std::size_t k = 0; k < samples.samples.size(); ++k) {
      if (k == samples.best_index) continue;
      Schedule s{decode(map, samples.samples[k].bits).assignments};
      if (!check_feasible(inst, s).feasible) continue;
      report.feasible = true;
      report.objective = objective_value(inst, s);
      report.best_schedule = std::move(s);
      break;
    }
  }
  report.normalized = report.feasible ? normalize(report.objective, optimum) : 0.0;
  return report;
}

std::pair<double, double> mean_and_stddev(const std::vector<double>& values) {
  if (values.empty()) return {0.0, 0.0};
  double sum = 0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double sq = 0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq / static_cast<double>(values.size()))};
}

ProtocolResult repeat_protocol(const Instance& inst, Encoding enc, const QuboSolver& solver,
                               std::size_t repetitions, Weight optimum) {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  const QuboModel model = encode(inst, enc);

  ProtocolResult out;
  std::vector<double> values;
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    SampleSet samples;
    if (const auto* sa = std::get_if<AnnealParams>(&solver)) {
      AnnealParams p = *sa;
      p.seed = sa->seed + rep;
      samples = simulated_anneal(model, p);
    } else {
      const auto& bf = std::get<BruteForceSolver>(solver);
      auto r = brute_force_min(model, bf.limit);
      samples.samples.push_back({std::move(r.bits), r.energy, 1});
    }
    RunReport report = evaluate_run(inst, *model.var_map, samples, optimum);
    if (report.feasible) values.push_back(report.normalized);
    out.reports.push_back(std::move(report));
  }
  out.n_feasible = values.size();
  if (!values.empty()) {
    const auto [m, s] = mean_and_stddev(values);
    out.mean = m;
    out.stddev = s;
  }
  return out;
}

}  // namespace siasp
