#pragma once

// Distributed PFD as agent state machines on a synchronous round simulator.
//
// Round 0 runs Init. In every later round the simulator first delivers all
// envelopes sent in the previous round, then fires agents in ordinal order;
// anything an agent sends is queued for the next round. Agents only see
// their own state and their inbox.
//
// Per iteration t an agent sends |L| UPDATE (VALUE at t = 0), |H| EDGE_FITNESS
// and, if it is not the root and |L| > 0, one AGG_FITNESS to its parent.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pfd/kernels.hpp"
#include "pfd/model.hpp"
#include "pfd/pseudotree.hpp"
#include "pfd/swarm.hpp"

namespace pfd {

enum class EnvelopeKind : std::uint8_t { value = 0, edge_fitness = 1, agg_fitness = 2, update = 3 };
inline constexpr std::size_t kEnvelopeKinds = 4;

const char* to_string(EnvelopeKind kind) noexcept;

struct Envelope {
  EnvelopeKind kind = EnvelopeKind::value;
  int iteration = 0;  // VALUE/UPDATE: iteration of the carried positions
  AgentIndex from = 0;
  AgentIndex to = 0;
  std::vector<double> values;               // VALUE, UPDATE
  std::vector<double> fitness;              // EDGE_FITNESS, AGG_FITNESS
  std::shared_ptr<const BestInfo> best;     // UPDATE: verdict of iteration - 1

  std::size_t payload_scalars() const noexcept {
    return values.size() + fitness.size() + (best ? best->payload_scalars() : 0);
  }
};

struct TraceRow {
  int iteration = 0;  // completed iterations, 1-based
  long round = 0;     // round in which the root formed the verdict
  double gbest_fitness = kInfinity;
  std::uint64_t envelopes = 0;  // cumulative, through the end of that round
  std::uint64_t scalars = 0;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

using AnytimeTrace = std::vector<TraceRow>;

/// CSV with header `iteration,round,gbest_fitness,envelopes,scalars`;
/// fitness printed in shortest round-trip form.
void write_trace_csv(std::ostream& out, const AnytimeTrace& trace);
std::string trace_csv(const AnytimeTrace& trace);
AnytimeTrace read_trace_csv(std::istream& in);

/// Per-agent initial positions, indexed [agent ordinal][particle].
using InitialPositions = std::vector<std::vector<double>>;

/// Reads `{"x1":[..K..],...}` (by id) or `[[..K..],...]` (by ordinal) and
/// checks the shape and domains against `problem`.
InitialPositions parse_initial_positions(const Problem& problem, std::size_t particles, std::string_view text);

struct RunOptions {
  std::optional<InitialPositions> initial_positions;
  const kernels::KernelTable* kernels = nullptr;  // null: kernels::active()
  std::ostream* event_log = nullptr;              // per-round envelope log
  bool record_root_fitness = false;               // keep the aggregated fitness vectors
  bool record_positions = false;                  // keep evaluated positions per iteration
};

class AgentMachine {
 public:
  AgentMachine(const Problem& problem, const PseudoTree& tree, AgentIndex self, const SwarmParams& params,
               int iterations, const kernels::KernelTable& kt, std::vector<double> initial_positions);

  void deliver(Envelope envelope);

  struct FireResult {
    bool acted = false;
    std::vector<Envelope> outgoing;
    std::shared_ptr<const BestInfo> emitted;  // root only
    std::vector<double> root_fitness;         // root only, when a verdict was formed
    std::vector<int> applied;                 // verdict iterations applied this round
    std::vector<std::pair<int, std::vector<double>>> evaluated;  // positions entering evaluation
  };

  /// Runs every phase whose preconditions hold: Init (round 0), pending
  /// verdicts, edge costs for the current iteration, aggregation.
  FireResult fire(long round);

  AgentIndex id() const noexcept { return self_; }
  bool finished() const noexcept { return last_applied_ + 1 >= iterations_; }
  /// Iteration the agent is currently evaluating (== iterations when done).
  int evaluating() const noexcept { return eval_; }
  const AgentSwarmState& swarm() const noexcept { return swarm_; }

 private:
  struct Slot {
    std::vector<std::vector<double>> higher_values;  // by position in H
    std::size_t values_received = 0;
    std::vector<double> fitness_sum;
    std::size_t fitness_received = 0;
  };

  Slot& slot(int t);
  void send(FireResult& r, EnvelopeKind kind, int t, AgentIndex to, std::vector<double> values,
            std::vector<double> fitness, std::shared_ptr<const BestInfo> best) const;
  void apply(FireResult& r, const std::shared_ptr<const BestInfo>& best);
  bool own_positions_ready() const noexcept { return eval_ == last_applied_ + 1; }

  const Problem* problem_;
  const PseudoTree* tree_;
  AgentIndex self_;
  SwarmParams params_;
  int iterations_;
  const kernels::KernelTable* kt_;
  AgentSwarmState swarm_;
  std::vector<std::size_t> higher_edge_;  // constraint index per H neighbor
  bool initialized_ = false;
  int eval_ = 0;
  bool edges_sent_ = false;
  int last_applied_ = -1;
  std::map<int, Slot> inbox_;
  std::map<int, std::shared_ptr<const BestInfo>> verdicts_;
  // Root ledger.
  std::vector<double> pbest_fitness_;
  double gbest_fitness_ = kInfinity;
  std::size_t gbest_index_ = 0;
};

struct RoundReport {
  long round = 0;
  std::size_t delivered = 0;
  std::size_t fired = 0;
  std::size_t sent = 0;
};

class Simulator {
 public:
  /// Keeps a reference to `problem`, which must outlive the simulator.
  Simulator(const Problem& problem, const SwarmParams& params, int iterations, RunOptions options = {});
  Simulator(Problem&&, const SwarmParams&, int, RunOptions = {}) = delete;
  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  /// One communication round. Throws Error naming the blocked agents when a
  /// round makes no progress before the run is complete.
  RoundReport step();
  bool done() const noexcept;
  void run_to_completion();

  const Problem& problem() const noexcept { return *problem_; }
  const PseudoTree& tree() const noexcept { return tree_; }
  const AnytimeTrace& trace() const noexcept { return trace_; }
  const AgentMachine& agent(AgentIndex i) const { return agents_.at(i); }
  long rounds() const noexcept { return round_; }
  std::uint64_t envelopes() const noexcept { return envelopes_; }
  std::uint64_t scalars() const noexcept { return scalars_; }

  /// Envelopes sent by `agent` carrying iteration tag `t`, per kind.
  std::array<std::uint64_t, kEnvelopeKinds> sent_by(AgentIndex agent, int t) const;
  /// Payload scalars sent by `agent` with tag `t`.
  std::uint64_t scalars_by(AgentIndex agent, int t) const;
  /// Round in which `agent` applied verdict `t`, if it has.
  std::optional<long> applied_round(AgentIndex agent, int t) const;
  /// Root's aggregated fitness per iteration (record_root_fitness).
  const std::vector<std::vector<double>>& root_fitness() const noexcept { return root_fitness_; }
  /// Evaluated positions [t][agent][k] (record_positions).
  const std::vector<std::vector<std::vector<double>>>& positions() const noexcept { return positions_; }

  /// Global-best components held by the agents, by ordinal.
  std::vector<double> best_values() const;

 private:
  const Problem* problem_;
  PseudoTree tree_;
  int iterations_;
  RunOptions options_;
  std::vector<AgentMachine> agents_;
  std::vector<Envelope> in_flight_;
  long round_ = -1;
  std::uint64_t envelopes_ = 0;
  std::uint64_t scalars_ = 0;
  AnytimeTrace trace_;
  std::vector<std::vector<std::array<std::uint64_t, kEnvelopeKinds>>> sent_;  // [agent][t][kind]
  std::vector<std::vector<std::uint64_t>> sent_scalars_;                      // [agent][t]
  std::vector<std::vector<long>> applied_;                                    // [agent][t]
  std::vector<std::vector<double>> root_fitness_;
  std::vector<std::vector<std::vector<double>>> positions_;
};

/// Init plus `iterations` Evaluation/Update cycles; the root-observed trace.
AnytimeTrace run(const Problem& problem, const SwarmParams& params, int iterations, RunOptions options = {});

}  // namespace pfd
