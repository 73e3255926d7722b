#pragma once

// Library side of the `pfd` command line: instance batches, single solves and
// benchmark sweeps. The CLI only parses flags and calls into here.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pfd/generator.hpp"
#include "pfd/runtime.hpp"
#include "pfd/swarm.hpp"

namespace pfd {

/// Directory used when no explicit output path is given: $PFD_OUTPUT_DIR or ".".
std::filesystem::path default_output_dir();

/// Spec of instance k of a batch: same parameters, seed derive_seed(base.seed, k).
GenSpec instance_spec(const GenSpec& base, int k);
/// `<topology>_n<N>_s<seed>_<k>.json`, with the batch's base seed.
std::string instance_file_name(const GenSpec& base, int k);

std::vector<std::filesystem::path> generate_files(const GenSpec& base, int count, const std::filesystem::path& dir);

struct SolveSummary {
  AnytimeTrace trace;
  double final_gbest = kInfinity;
  long rounds = 0;
  std::uint64_t envelopes = 0;
  std::uint64_t scalars = 0;
  std::vector<double> best_values;  // global-best assignment by ordinal
  double best_cost = kInfinity;     // global_cost of best_values
};

SolveSummary solve(const Problem& problem, const SwarmParams& params, int iterations, RunOptions options = {});

struct BenchConfig {
  GenSpec gen;
  int instances = 50;
  SwarmParams params;
  int iterations = 500;
  std::optional<std::filesystem::path> trace_dir;  // per-instance trace CSVs
};

struct BenchRow {
  int instance = 0;
  std::uint32_t n = 0;
  Topology topology = Topology::erdos_renyi;
  std::uint64_t seed = 0;  // generator seed of this instance
  double final_cost = kInfinity;
  int iterations = 0;
  long rounds = 0;
  std::uint64_t envelopes = 0;
  double wall_ms = 0.0;
  std::string error;  // non-empty when the instance failed
};

struct BenchAggregate {
  std::size_t succeeded = 0;
  double mean_cost = 0.0;
  double sd_cost = 0.0;  // sample standard deviation
  double mean_rounds = 0.0;
  double mean_envelopes_per_iteration = 0.0;
  double mean_wall_ms = 0.0;
};

/// Runs every instance in index order. A failing instance is recorded with
/// its error and the sweep continues.
std::vector<BenchRow> run_bench(const BenchConfig& config, std::ostream* progress = nullptr);
BenchAggregate summarize(std::span<const BenchRow> rows);

/// Header `instance,n,topology,seed,final_cost,iterations,rounds,envelopes,wall_ms`,
/// one row per instance, an `aggregate` row (means; envelopes per iteration),
/// then `#` comment lines with the standard deviation and the command line.
void write_bench_csv(std::ostream& out, const BenchConfig& config, std::span<const BenchRow> rows,
                     const BenchAggregate& aggregate);

/// Flags reproducing `config` on the command line. The swarm flags leave out
/// the seed, whose flag name differs between solve and bench.
std::string command_line(const BenchConfig& config);
std::string command_line(const SwarmParams& params, int iterations);

}  // namespace pfd
