#include "pfd/bench.hpp"

#include <chrono>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "pfd/rng.hpp"

namespace pfd {

namespace fs = std::filesystem;

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

fs::path default_output_dir() {
  if (const char* dir = std::getenv("PFD_OUTPUT_DIR"); dir && *dir) return dir;
  return ".";
}

GenSpec instance_spec(const GenSpec& base, int k) {
  GenSpec spec = base;
  spec.seed = rng::derive_seed(base.seed, static_cast<std::uint64_t>(k));
  return spec;
}

std::string instance_file_name(const GenSpec& base, int k) {
  return std::string(short_name(base.topology)) + "_n" + std::to_string(base.agents) + "_s" +
         std::to_string(base.seed) + "_" + std::to_string(k) + ".json";
}

std::vector<fs::path> generate_files(const GenSpec& base, int count, const fs::path& dir) {
  if (count < 1) throw Error("count must be at least 1");
  base.validate();
  fs::create_directories(dir);
  std::vector<fs::path> out;
  for (int k = 0; k < count; ++k) {
    auto path = dir / instance_file_name(base, k);
    save_problem(generate(instance_spec(base, k)), path);
    out.push_back(std::move(path));
  }
  return out;
}

SolveSummary solve(const Problem& problem, const SwarmParams& params, int iterations, RunOptions options) {
  Simulator sim(problem, params, iterations, std::move(options));
  sim.run_to_completion();
  SolveSummary s;
  s.trace = sim.trace();
  s.final_gbest = s.trace.empty() ? kInfinity : s.trace.back().gbest_fitness;
  s.rounds = sim.rounds();
  s.envelopes = sim.envelopes();
  s.scalars = sim.scalars();
  s.best_values = sim.best_values();
  s.best_cost = global_cost(problem, s.best_values);
  return s;
}

std::vector<BenchRow> run_bench(const BenchConfig& config, std::ostream* progress) {
  if (config.instances < 1) throw Error("instances must be at least 1");
  config.gen.validate();
  config.params.validate();
  if (config.trace_dir) fs::create_directories(*config.trace_dir);

  std::vector<BenchRow> rows;
  for (int k = 0; k < config.instances; ++k) {
    BenchRow row;
    row.instance = k;
    row.n = config.gen.agents;
    row.topology = config.gen.topology;
    row.iterations = config.iterations;
    const auto spec = instance_spec(config.gen, k);
    row.seed = spec.seed;
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto problem = generate(spec);
      const auto summary = solve(problem, config.params, config.iterations);
      row.final_cost = summary.final_gbest;
      row.rounds = summary.rounds;
      row.envelopes = summary.envelopes;
      if (config.trace_dir) {
        auto name = instance_file_name(config.gen, k);
        name.replace(name.size() - 5, 5, "_trace.csv");
        std::ofstream out(*config.trace_dir / name);
        write_trace_csv(out, summary.trace);
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (progress) {
      *progress << "instance " << k << ": ";
      if (row.error.empty())
        *progress << "final_cost=" << row.final_cost << " wall_ms=" << row.wall_ms << "\n";
      else
        *progress << "FAILED: " << row.error << "\n";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

BenchAggregate summarize(std::span<const BenchRow> rows) {
  BenchAggregate agg;
  double sum = 0.0, rounds = 0.0, per_iter = 0.0, wall = 0.0;
  for (const auto& r : rows) {
    if (!r.error.empty()) continue;
    ++agg.succeeded;
    sum += r.final_cost;
    rounds += static_cast<double>(r.rounds);
    per_iter += static_cast<double>(r.envelopes) / r.iterations;
    wall += r.wall_ms;
  }
  if (agg.succeeded == 0) return agg;
  const auto count = static_cast<double>(agg.succeeded);
  agg.mean_cost = sum / count;
  agg.mean_rounds = rounds / count;
  agg.mean_envelopes_per_iteration = per_iter / count;
  agg.mean_wall_ms = wall / count;
  if (agg.succeeded > 1) {
    double ss = 0.0;
    for (const auto& r : rows)
      if (r.error.empty()) ss += (r.final_cost - agg.mean_cost) * (r.final_cost - agg.mean_cost);
    agg.sd_cost = std::sqrt(ss / (count - 1.0));
  }
  return agg;
}

void write_bench_csv(std::ostream& out, const BenchConfig& config, std::span<const BenchRow> rows,
                     const BenchAggregate& agg) {
  out << "instance,n,topology,seed,final_cost,iterations,rounds,envelopes,wall_ms\n";
  for (const auto& r : rows) {
    out << r.instance << ',' << r.n << ',' << short_name(r.topology) << ',' << r.seed << ',';
    if (r.error.empty())
      out << shortest(r.final_cost) << ',' << r.iterations << ',' << r.rounds << ',' << r.envelopes;
    else
      out << "nan," << r.iterations << ",,";
    out << ',' << shortest(r.wall_ms) << '\n';
  }
  out << "aggregate," << config.gen.agents << ',' << short_name(config.gen.topology) << ',' << config.gen.seed << ','
      << shortest(agg.mean_cost) << ',' << config.iterations << ',' << shortest(agg.mean_rounds) << ','
      << shortest(agg.mean_envelopes_per_iteration) << ',' << shortest(agg.mean_wall_ms) << '\n';
  out << "# final_cost_sd=" << shortest(agg.sd_cost) << " succeeded=" << agg.succeeded << "/" << rows.size() << '\n';
  for (const auto& r : rows)
    if (!r.error.empty()) out << "# instance " << r.instance << " failed: " << r.error << '\n';
  out << "# " << command_line(config) << '\n';
}

std::string command_line(const SwarmParams& p, int iterations) {
  std::ostringstream os;
  os << "--particles " << p.particles << " --w " << shortest(p.w) << " --c1 " << shortest(p.c1) << " --c2 "
     << shortest(p.c2) << " --max-sc " << p.max_sc << " --max-fc " << p.max_fc << " --iters " << iterations
     << (p.clamp_velocity ? " --clamp-velocity" : "");
  return os.str();
}

std::string command_line(const BenchConfig& c) {
  std::ostringstream os;
  const auto& g = c.gen;
  os << "pfd bench --topology " << short_name(g.topology);
  if (g.topology == Topology::erdos_renyi) os << " --p " << shortest(g.edge_probability);
  if (g.topology == Topology::scale_free) os << " --m " << g.attachment;
  os << " --agents " << g.agents << " --seed " << g.seed << " --instances " << c.instances << " --coeff-lo "
     << shortest(g.coeff_lo) << " --coeff-hi " << shortest(g.coeff_hi) << " --domain-lo " << shortest(g.domain.lower)
     << " --domain-hi " << shortest(g.domain.upper) << ' ' << command_line(c.params, c.iterations)
     << " --solver-seed " << c.params.seed;
  if (c.trace_dir) os << " --trace-dir " << c.trace_dir->string();
  return os.str();
}

}  // namespace pfd
