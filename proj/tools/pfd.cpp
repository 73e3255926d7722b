// pfd: generate F-DCOP instances, solve them with PFD or a reference oracle,
// and run benchmark sweeps.
//
// Exit codes: 0 success, 1 runtime error, 2 usage error.

#include <cstdio>
#if defined(__GLIBC__)
#include <malloc.h>
#endif
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pfd/bench.hpp"
#include "pfd/generator.hpp"
#include "pfd/oracle.hpp"
#include "pfd/runtime.hpp"

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenFlags {
  std::string topology = "er";
  double p = 0.2;
  std::uint32_t m = 2;
  std::vector<std::uint32_t> agents{10};
  std::uint64_t seed = 0;
  double coeff_lo = -5.0, coeff_hi = 5.0;
  double domain_lo = -50.0, domain_hi = 50.0;
  CLI::Option* p_opt = nullptr;
  CLI::Option* m_opt = nullptr;

  void add(CLI::App& app, bool many_agents) {
    app.add_option("--topology", topology, "er | sf | tree (long forms erdos_renyi, scale_free, random_tree)")
        ->capture_default_str();
    p_opt = app.add_option("--p", p, "Erdos-Renyi edge probability")->capture_default_str();
    m_opt = app.add_option("--m", m, "scale-free attachment count")->capture_default_str();
    auto* a = app.add_option("--agents,-n", agents, many_agents ? "agent counts (one sweep each)" : "agent count")
                  ->capture_default_str();
    if (!many_agents) a->expected(1);
    app.add_option("--seed", seed, "generator base seed")->capture_default_str();
    app.add_option("--coeff-lo", coeff_lo)->capture_default_str();
    app.add_option("--coeff-hi", coeff_hi)->capture_default_str();
    app.add_option("--domain-lo", domain_lo)->capture_default_str();
    app.add_option("--domain-hi", domain_hi)->capture_default_str();
  }

  pfd::GenSpec spec(std::uint32_t n) const {
    pfd::GenSpec g;
    try {
      g.topology = pfd::parse_topology(topology);
    } catch (const pfd::Error& e) {
      throw UsageError(e.what());
    }
    if (p_opt->count() && g.topology != pfd::Topology::erdos_renyi) throw UsageError("--p only applies to --topology er");
    if (m_opt->count() && g.topology != pfd::Topology::scale_free) throw UsageError("--m only applies to --topology sf");
    g.edge_probability = p;
    g.attachment = m;
    g.agents = n;
    g.seed = seed;
    g.coeff_lo = coeff_lo;
    g.coeff_hi = coeff_hi;
    g.domain = {domain_lo, domain_hi};
    try {
      g.validate();
    } catch (const pfd::Error& e) {
      throw UsageError(e.what());
    }
    return g;
  }
};

struct SwarmFlags {
  pfd::SwarmParams params;
  int iterations = 500;

  void add(CLI::App& app, const std::string& seed_flag) {
    app.add_option("--particles,-K", params.particles, "particle count K")->capture_default_str();
    app.add_option("--w", params.w, "inertia weight")->capture_default_str();
    app.add_option("--c1", params.c1, "personal-best acceleration")->capture_default_str();
    app.add_option("--c2", params.c2, "global-best acceleration")->capture_default_str();
    app.add_option("--max-sc", params.max_sc, "success count ceiling")->capture_default_str();
    app.add_option("--max-fc", params.max_fc, "failure count ceiling")->capture_default_str();
    app.add_option("--iters", iterations, "Evaluation/Update cycles")->capture_default_str();
    app.add_option(seed_flag, params.seed, "swarm seed")->capture_default_str();
    app.add_flag("--clamp-velocity", params.clamp_velocity, "limit |v| to the domain width");
  }

  void check() const {
    try {
      params.validate();
    } catch (const pfd::Error& e) {
      throw UsageError(e.what());
    }
    if (iterations < 1) throw UsageError("--iters must be at least 1");
  }
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pfd::Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string echo(int argc, char** argv) {
  std::string line = "#";
  for (int i = 0; i < argc; ++i) line += std::string(" ") + argv[i];
  return line;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
#if defined(__GLIBC__)
  // Envelope buffers are freed and reallocated every round; without this
  // glibc hands the heap top back to the kernel each time.
  mallopt(M_TRIM_THRESHOLD, 256 << 20);
  mallopt(M_MMAP_THRESHOLD, 32 << 20);
#endif
  CLI::App app{"Particle-swarm solver for functional DCOPs"};
  app.require_subcommand(1);

  GenFlags gen;
  int count = 1;
  std::string gen_out;
  auto* generate_cmd = app.add_subcommand("generate", "write random problem instances");
  gen.add(*generate_cmd, false);
  generate_cmd->add_option("--count", count, "instances to write")->capture_default_str();
  generate_cmd->add_option("--out-dir", gen_out, "output directory (default $PFD_OUTPUT_DIR or .)");

  std::string problem_path, force_init, trace_path, oracle = "none";
  pfd::GridSpec grid;
  bool verbose = false;
  SwarmFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "run PFD (or an oracle) on a problem file");
  solve_cmd->add_option("problem", problem_path, "problem JSON")->required();
  solve_flags.add(*solve_cmd, "--seed");
  solve_cmd->add_option("--force-init", force_init, "JSON initial positions per agent and particle");
  solve_cmd->add_option("--trace", trace_path, "trace CSV path (default <out-dir>/<problem>_trace.csv)");
  solve_cmd->add_option("--oracle", oracle, "none | centralized | grid")->capture_default_str();
  solve_cmd->add_option("--grid-points", grid.points_per_dim, "grid points per dimension")->capture_default_str();
  solve_cmd->add_option("--grid-cap", grid.cap, "maximum grid size")->capture_default_str();
  solve_cmd->add_flag("--verbose,-v", verbose, "per-round envelope log on stderr");

  GenFlags bench_gen;
  SwarmFlags bench_flags;
  int instances = 50;
  std::string bench_out, bench_out_dir, trace_dir;
  auto* bench_cmd = app.add_subcommand("bench", "generate instances, solve each, write aggregate CSV");
  bench_gen.add(*bench_cmd, true);
  bench_flags.add(*bench_cmd, "--solver-seed");
  bench_cmd->add_option("--instances", instances, "instances per agent count")->capture_default_str();
  bench_cmd->add_option("--out", bench_out, "CSV path (single --agents value only)");
  bench_cmd->add_option("--out-dir", bench_out_dir, "directory for bench CSVs (default $PFD_OUTPUT_DIR or .)");
  bench_cmd->add_option("--trace-dir", trace_dir, "also write one trace CSV per instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (generate_cmd->parsed()) {
      const auto spec = gen.spec(gen.agents.front());
      if (count < 1) throw UsageError("--count must be at least 1");
      const fs::path dir = gen_out.empty() ? pfd::default_output_dir() : fs::path(gen_out);
      for (const auto& path : pfd::generate_files(spec, count, dir)) std::cout << path.string() << "\n";
      return 0;
    }

    if (solve_cmd->parsed()) {
      solve_flags.check();
      if (oracle != "none" && oracle != "centralized" && oracle != "grid")
        throw UsageError("--oracle must be none, centralized or grid");
      const auto problem = pfd::load_problem(problem_path);
      const auto& params = solve_flags.params;
      std::cout << echo(argc, argv) << "\n";
      std::cout << "# config " << pfd::command_line(params, solve_flags.iterations) << " --seed " << params.seed
                << " kernels=" << pfd::kernels::name(pfd::kernels::active().isa) << "\n";

      if (oracle == "grid") {
        const auto result = pfd::grid_search(problem, grid);
        std::cout << "oracle=grid points=" << grid.points_per_dim << " cost=" << fmt(result.cost) << "\n";
        for (const auto& [id, value] : result.assignment) std::cout << "  " << id << " = " << fmt(value) << "\n";
        return 0;
      }

      pfd::RunOptions options;
      if (!force_init.empty())
        options.initial_positions = pfd::parse_initial_positions(problem, params.particles, read_file(force_init));
      if (verbose) options.event_log = &std::cerr;

      pfd::AnytimeTrace trace;
      std::vector<double> best;
      std::string counters;
      if (oracle == "centralized") {
        auto result = pfd::centralized_gcpso(problem, params, solve_flags.iterations, options);
        trace = std::move(result.trace);
        best = std::move(result.best_values);
        counters = "oracle=centralized";
      } else {
        pfd::Simulator sim(problem, params, solve_flags.iterations, std::move(options));
        sim.run_to_completion();
        trace = sim.trace();
        best = sim.best_values();
        counters = "rounds=" + std::to_string(sim.rounds()) + " envelopes=" + std::to_string(sim.envelopes()) +
                   " scalars=" + std::to_string(sim.scalars()) + " height=" + std::to_string(sim.tree().height());
      }

      const fs::path out = trace_path.empty()
                               ? pfd::default_output_dir() / (fs::path(problem_path).stem().string() + "_trace.csv")
                               : fs::path(trace_path);
      if (out.has_parent_path()) fs::create_directories(out.parent_path());
      std::ofstream csv(out, std::ios::binary);
      if (!csv) throw pfd::Error("cannot write " + out.string());
      pfd::write_trace_csv(csv, trace);

      std::cout << "gbest " << fmt(trace.back().gbest_fitness) << "\n";
      std::cout << "iterations=" << trace.size() << " " << counters
                << " best_cost=" << fmt(pfd::global_cost(problem, best)) << "\n";
      std::cout << "trace=" << out.string() << "\n";
      return 0;
    }

    if (bench_cmd->parsed()) {
      bench_flags.check();
      if (instances < 1) throw UsageError("--instances must be at least 1");
      if (!bench_out.empty() && bench_gen.agents.size() != 1)
        throw UsageError("--out needs exactly one --agents value; use --out-dir for sweeps");
      const fs::path dir = bench_out_dir.empty() ? pfd::default_output_dir() : fs::path(bench_out_dir);
      for (auto n : bench_gen.agents) {
        pfd::BenchConfig config;
        config.gen = bench_gen.spec(n);
        config.instances = instances;
        config.params = bench_flags.params;
        config.iterations = bench_flags.iterations;
        if (!trace_dir.empty()) config.trace_dir = trace_dir;
        std::cout << "# " << pfd::command_line(config) << "\n";
        const auto rows = pfd::run_bench(config, &std::cerr);
        const auto agg = pfd::summarize(rows);
        const fs::path out = bench_out.empty() ? dir / ("bench_" + std::string(pfd::short_name(config.gen.topology)) +
                                                        "_n" + std::to_string(n) + "_s" +
                                                        std::to_string(config.gen.seed) + ".csv")
                                               : fs::path(bench_out);
        if (out.has_parent_path()) fs::create_directories(out.parent_path());
        std::ofstream csv(out, std::ios::binary);
        if (!csv) throw pfd::Error("cannot write " + out.string());
        pfd::write_bench_csv(csv, config, rows, agg);
        std::cout << "n=" << n << " mean_cost=" << fmt(agg.mean_cost) << " sd=" << fmt(agg.sd_cost)
                  << " succeeded=" << agg.succeeded << "/" << rows.size() << " csv=" << out.string() << "\n";
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n\n" << app.help() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
