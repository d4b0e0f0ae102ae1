#include <iostream>

#include "CLI11.hpp"
#include "siasp/commands.hpp"

namespace cli = siasp::cli;

int main(int argc, char** argv) {
  CLI::App app{"Satellite image acquisition scheduling: QUBO compilation and benchmarking"};
  app.require_subcommand(1);

  std::string encoding = "3cam";
  std::string solver = "sa";
  std::uint64_t seed = 0;

  // stats
  std::string stats_path;
  auto* stats = app.add_subcommand("stats", "Print instance characteristics and QUBO term counts");
  stats->add_option("instance", stats_path, "Instance file")->required();

  // reduce
  std::string reduce_path;
  cli::ReduceOptions reduce_opts;
  std::string reduce_out, reduce_name;
  auto* reduce = app.add_subcommand("reduce", "Randomly reduce an instance to a target size");
  reduce->add_option("instance", reduce_path, "Instance file")->required();
  reduce->add_option("--target", reduce_opts.target, "Number of requests to keep")->required();
  reduce->add_option("--seed", seed, "Random seed");
  reduce->add_option("--out", reduce_out, "Output instance file")->required();
  reduce->add_option("--name", reduce_name, "Name of the reduced instance");

  // encode
  std::string encode_path, encode_out;
  bool graph = false;
  auto* enc = app.add_subcommand("encode", "Compile an instance to a QUBO export");
  enc->add_option("instance", encode_path, "Instance file")->required();
  enc->add_option("--encoding", encoding, "4cam or 3cam");
  enc->add_option("--out", encode_out, "Output QUBO file")->required();
  enc->add_flag("--graph", graph, "Also write a DOT graph next to the QUBO file");

  // solve
  std::string solve_path, samples_out;
  siasp::Weight optimum = 0;
  std::size_t reads = 2000, sweeps = 1000;
  double beta_initial = 0, beta_final = 0;
  auto* solve = app.add_subcommand("solve", "Solve one instance with one encoding and solver");
  solve->add_option("instance", solve_path, "Instance file")->required();
  solve->add_option("--encoding", encoding, "4cam or 3cam");
  solve->add_option("--solver", solver, "sa, brute or exact");
  solve->add_option("--reads", reads, "Annealing reads");
  solve->add_option("--sweeps", sweeps, "Sweeps per read");
  solve->add_option("--beta-initial", beta_initial, "Initial inverse temperature");
  solve->add_option("--beta-final", beta_final, "Final inverse temperature");
  solve->add_option("--seed", seed, "Random seed");
  solve->add_option("--optimum", optimum, "Known optimum used for normalization");
  solve->add_option("--samples", samples_out, "Write all samples as CSV");

  // benchmark
  std::vector<std::string> bench_instances, bench_encodings, bench_solvers;
  std::string config_path, out_dir;
  std::size_t reps = 5;
  auto* bench = app.add_subcommand("benchmark", "Repeated runs over instances, encodings, solvers");
  bench->add_option("instances", bench_instances, "Instance files");
  bench->add_option("--config", config_path, "JSON config document; flags override it");
  bench->add_option("--encoding", bench_encodings, "4cam and/or 3cam (repeatable)");
  bench->add_option("--solver", bench_solvers, "sa, brute and/or exact (repeatable)");
  bench->add_option("--reps", reps, "Repetitions per combination");
  bench->add_option("--reads", reads, "Annealing reads");
  bench->add_option("--sweeps", sweeps, "Sweeps per read");
  bench->add_option("--seed", seed, "Base seed; repetition k uses seed + k");
  bench->add_option("--optimum", optimum, "Known optimum for every instance");
  bench->add_option("--out", out_dir, "Output directory");

  // generate
  cli::GenerateOptions gen_opts;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "Write a synthetic SPOT5-like instance");
  gen->add_option("--requests", gen_opts.params.n_requests, "Number of requests");
  gen->add_option("--stereo-fraction", gen_opts.params.stereo_fraction, "Share of stereo requests");
  gen->add_option("--window", gen_opts.params.conflict_window, "Conflict window on the time line");
  gen->add_option("--pair-density", gen_opts.params.pair_density, "Pair conflict probability");
  gen->add_option("--ternary-density", gen_opts.params.ternary_density,
                  "Ternary constraint probability");
  gen->add_option("--name", gen_opts.params.name, "Instance name");
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--out", gen_out, "Output instance file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*stats) {
      cli::cmd_stats(stats_path, std::cout);
    } else if (*reduce) {
      reduce_opts.seed = seed;
      reduce_opts.out = reduce_out;
      if (reduce->count("--name")) reduce_opts.name = reduce_name;
      cli::cmd_reduce(reduce_path, reduce_opts, std::cout);
    } else if (*enc) {
      cli::EncodeOptions opts;
      opts.encoding = siasp::parse_encoding(encoding);
      opts.out = encode_out;
      opts.graph = graph;
      cli::cmd_encode(encode_path, opts, std::cout);
    } else if (*solve) {
      cli::SolveOptions opts;
      opts.encoding = siasp::parse_encoding(encoding);
      opts.solver = cli::parse_solver(solver);
      opts.anneal.reads = reads;
      opts.anneal.sweeps = sweeps;
      opts.anneal.seed = seed;
      if (solve->count("--beta-initial")) opts.anneal.beta_initial = beta_initial;
      if (solve->count("--beta-final")) opts.anneal.beta_final = beta_final;
      if (solve->count("--optimum")) opts.optimum = optimum;
      if (solve->count("--samples")) opts.samples_out = samples_out;
      cli::cmd_solve(solve_path, opts, std::cout);
    } else if (*bench) {
      cli::BenchmarkConfig cfg;
      if (!config_path.empty()) cfg = cli::load_benchmark_config(config_path);
      if (!bench_instances.empty()) cfg.instances.assign(bench_instances.begin(), bench_instances.end());
      if (!bench_encodings.empty()) {
        cfg.encodings.clear();
        for (const auto& e : bench_encodings) cfg.encodings.push_back(siasp::parse_encoding(e));
      }
      if (!bench_solvers.empty()) {
        cfg.solvers.clear();
        for (const auto& s : bench_solvers) cfg.solvers.push_back(cli::parse_solver(s));
      }
      if (bench->count("--reps")) cfg.repetitions = reps;
      if (bench->count("--reads")) cfg.reads = reads;
      if (bench->count("--sweeps")) cfg.sweeps = sweeps;
      if (bench->count("--seed")) cfg.seed = seed;
      if (bench->count("--optimum")) cfg.optimum = optimum;
      if (bench->count("--out")) cfg.out_dir = out_dir;
      cli::cmd_benchmark(cfg, std::cout);
    } else if (*gen) {
      gen_opts.seed = seed;
      gen_opts.out = gen_out;
      cli::cmd_generate(gen_opts, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
