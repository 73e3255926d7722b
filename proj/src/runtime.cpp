#include "pfd/runtime.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace pfd {

const char* to_string(EnvelopeKind kind) noexcept {
  switch (kind) {
    case EnvelopeKind::value: return "VALUE";
    case EnvelopeKind::edge_fitness: return "EDGE_FITNESS";
    case EnvelopeKind::agg_fitness: return "AGG_FITNESS";
    case EnvelopeKind::update: return "UPDATE";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// AgentMachine

AgentMachine::AgentMachine(const Problem& problem, const PseudoTree& tree, AgentIndex self, const SwarmParams& params,
                           int iterations, const kernels::KernelTable& kt, std::vector<double> initial_positions)
    : problem_(&problem), tree_(&tree), self_(self), params_(params), iterations_(iterations), kt_(&kt) {
  swarm_ = make_agent_state(std::move(initial_positions), std::vector<double>(params.particles, 0.0));
  for (auto h : tree.higher(self)) {
    auto edge = problem.constraint_between(self, h);
    if (!edge) throw Error("no constraint between neighbors " + problem.agent(self).id + " and " + problem.agent(h).id);
    higher_edge_.push_back(*edge);
  }
  if (self == tree.root()) pbest_fitness_.assign(params.particles, kInfinity);
}

AgentMachine::Slot& AgentMachine::slot(int t) {
  auto [it, inserted] = inbox_.try_emplace(t);
  if (inserted) it->second.higher_values.resize(tree_->higher(self_).size());
  return it->second;
}

void AgentMachine::deliver(Envelope env) {
  const auto& higher = tree_->higher(self_);
  switch (env.kind) {
    case EnvelopeKind::value:
    case EnvelopeKind::update: {
      auto pos = std::find(higher.begin(), higher.end(), env.from);
      if (pos == higher.end())
        throw Error(std::string(to_string(env.kind)) + " to " + problem_->agent(self_).id +
                    " from non-higher neighbor " + problem_->agent(env.from).id);
      if (env.best && env.best->iteration > last_applied_) verdicts_.try_emplace(env.best->iteration, env.best);
      if (env.iteration < iterations_) {
        auto& s = slot(env.iteration);
        auto& stored = s.higher_values[pos - higher.begin()];
        if (stored.empty()) ++s.values_received;
        stored = std::move(env.values);
      }
      break;
    }
    case EnvelopeKind::edge_fitness:
    case EnvelopeKind::agg_fitness: {
      auto& s = slot(env.iteration);
      if (s.fitness_sum.empty()) s.fitness_sum.assign(params_.particles, 0.0);
      kernels::accumulate(*kt_, s.fitness_sum, env.fitness);
      ++s.fitness_received;
      break;
    }
  }
}

void AgentMachine::send(FireResult& r, EnvelopeKind kind, int t, AgentIndex to, std::vector<double> values,
                        std::vector<double> fitness, std::shared_ptr<const BestInfo> best) const {
  Envelope env;
  env.kind = kind;
  env.iteration = t;
  env.from = self_;
  env.to = to;
  env.values = std::move(values);
  env.fitness = std::move(fitness);
  env.best = std::move(best);
  r.outgoing.push_back(std::move(env));
}

void AgentMachine::apply(FireResult& r, const std::shared_ptr<const BestInfo>& best) {
  const int t = best->iteration;
  apply_best_info(swarm_, *best, problem_->agent(self_).domain, params_, self_, *kt_);
  last_applied_ = t;
  verdicts_.erase(t);
  r.applied.push_back(t);
  for (auto l : tree_->lower(self_)) send(r, EnvelopeKind::update, t + 1, l, swarm_.position, {}, best);
  if (t + 1 < iterations_) r.evaluated.emplace_back(t + 1, swarm_.position);
}

AgentMachine::FireResult AgentMachine::fire(long round) {
  FireResult r;
  const auto& higher = tree_->higher(self_);
  const auto& lower = tree_->lower(self_);
  const bool is_root = self_ == tree_->root();

  if (!initialized_) {
    initialized_ = true;
    r.acted = true;
    for (auto l : lower) send(r, EnvelopeKind::value, 0, l, swarm_.position, {}, nullptr);
    r.evaluated.emplace_back(0, swarm_.position);
  }
  (void)round;

  for (auto it = verdicts_.find(last_applied_ + 1); it != verdicts_.end(); it = verdicts_.find(last_applied_ + 1)) {
    auto best = it->second;
    apply(r, best);
    r.acted = true;
  }

  if (eval_ >= iterations_ || !own_positions_ready()) return r;
  const int t = eval_;
  auto& s = slot(t);
  const auto K = params_.particles;

  if (!edges_sent_ && s.values_received == higher.size()) {
    for (std::size_t idx = 0; idx < higher.size(); ++idx) {
      const auto& c = problem_->constraints()[higher_edge_[idx]];
      std::vector<double> costs(K);
      if (c.first == self_)
        kernels::edge_costs(*kt_, c.cost, swarm_.position, s.higher_values[idx], costs);
      else
        kernels::edge_costs(*kt_, c.cost, s.higher_values[idx], swarm_.position, costs);
      send(r, EnvelopeKind::edge_fitness, t, higher[idx], {}, std::move(costs), nullptr);
    }
    edges_sent_ = true;
    r.acted = true;
  }
  if (!edges_sent_) return r;

  const bool aggregated = lower.empty() || s.fitness_received == tree_->expected_fitness_messages(self_);
  if (!aggregated) return r;

  std::vector<double> fitness = s.fitness_sum.empty() ? std::vector<double>(K, 0.0) : std::move(s.fitness_sum);
  inbox_.erase(t);
  edges_sent_ = false;
  ++eval_;
  r.acted = true;

  if (is_root) {
    auto best = std::make_shared<const BestInfo>(root_update(fitness, pbest_fitness_, gbest_fitness_, gbest_index_, t));
    pbest_fitness_ = best->pbest_fitness;
    gbest_fitness_ = best->gbest_fitness;
    gbest_index_ = best->gbest_index;
    r.emitted = best;
    r.root_fitness = std::move(fitness);
    apply(r, best);
  } else if (!lower.empty()) {
    send(r, EnvelopeKind::agg_fitness, t, *tree_->parent(self_), {}, std::move(fitness), nullptr);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Simulator

namespace {

std::vector<double> initial_for(const Problem& problem, AgentIndex i, const SwarmParams& params,
                                const RunOptions& options, const kernels::KernelTable& kt) {
  if (options.initial_positions) return (*options.initial_positions).at(i);
  return init_components(params.particles, problem.agent(i).domain, params.seed, i, kt).first;
}

}  // namespace

Simulator::Simulator(const Problem& problem, const SwarmParams& params, int iterations, RunOptions options)
    : problem_(&problem), tree_(problem), iterations_(iterations), options_(std::move(options)) {
  params.validate();
  if (iterations < 1) throw Error("iterations must be at least 1");
  if (options_.initial_positions) {
    const auto& init = *options_.initial_positions;
    if (init.size() != problem.size()) throw Error("initial positions: expected one list per agent");
    for (const auto& list : init)
      if (list.size() != params.particles) throw Error("initial positions: expected one value per particle");
  }
  const auto& kt = options_.kernels ? *options_.kernels : kernels::active();
  agents_.reserve(problem.size());
  for (AgentIndex i = 0; i < problem.size(); ++i)
    agents_.emplace_back(problem, tree_, i, params, iterations, kt, initial_for(problem, i, params, options_, kt));
  sent_.assign(problem.size(), std::vector<std::array<std::uint64_t, kEnvelopeKinds>>(iterations + 1));
  sent_scalars_.assign(problem.size(), std::vector<std::uint64_t>(iterations + 1, 0));
  applied_.assign(problem.size(), std::vector<long>(iterations, -1));
  if (options_.record_positions)
    positions_.assign(iterations, std::vector<std::vector<double>>(problem.size()));
}

bool Simulator::done() const noexcept {
  if (!in_flight_.empty() || round_ < 0) return false;
  return std::all_of(agents_.begin(), agents_.end(), [](const AgentMachine& a) { return a.finished(); });
}

RoundReport Simulator::step() {
  RoundReport report;
  report.round = ++round_;

  auto batch = std::move(in_flight_);
  in_flight_.clear();
  for (auto& env : batch) {
    agents_[env.to].deliver(std::move(env));
    ++report.delivered;
  }

  std::shared_ptr<const BestInfo> emitted;
  for (auto& agent : agents_) {
    auto res = agent.fire(round_);
    if (!res.acted) continue;
    ++report.fired;
    const auto i = agent.id();
    for (auto t : res.applied) applied_[i][t] = round_;
    if (options_.record_positions)
      for (auto& [t, pos] : res.evaluated) positions_[t][i] = std::move(pos);
    if (res.emitted) {
      emitted = res.emitted;
      if (options_.record_root_fitness) root_fitness_.push_back(std::move(res.root_fitness));
    }
    for (auto& env : res.outgoing) {
      const auto scalars = env.payload_scalars();
      ++envelopes_;
      scalars_ += scalars;
      ++sent_[i][env.iteration][static_cast<std::size_t>(env.kind)];
      sent_scalars_[i][env.iteration] += scalars;
      if (options_.event_log)
        *options_.event_log << "round " << round_ << ": " << to_string(env.kind) << "(" << env.iteration << ") "
                            << problem_->agent(env.from).id << " -> " << problem_->agent(env.to).id << "\n";
      in_flight_.push_back(std::move(env));
      ++report.sent;
    }
  }
  if (emitted) trace_.push_back({emitted->iteration + 1, round_, emitted->gbest_fitness, envelopes_, scalars_});

  if (report.delivered == 0 && report.fired == 0 && !done()) {
    std::string blocked;
    for (const auto& a : agents_)
      if (!a.finished())
        blocked += (blocked.empty() ? "" : ", ") + problem_->agent(a.id()).id + " (evaluating " +
                   std::to_string(a.evaluating()) + ")";
    throw Error("deadlock in round " + std::to_string(round_) + ": blocked agents " + blocked);
  }
  return report;
}

void Simulator::run_to_completion() {
  while (!done()) step();
}

std::array<std::uint64_t, kEnvelopeKinds> Simulator::sent_by(AgentIndex agent, int t) const {
  return sent_.at(agent).at(t);
}

std::uint64_t Simulator::scalars_by(AgentIndex agent, int t) const { return sent_scalars_.at(agent).at(t); }

std::optional<long> Simulator::applied_round(AgentIndex agent, int t) const {
  auto r = applied_.at(agent).at(t);
  if (r < 0) return std::nullopt;
  return r;
}

std::vector<double> Simulator::best_values() const {
  std::vector<double> out;
  out.reserve(agents_.size());
  for (const auto& a : agents_) out.push_back(a.swarm().gbest_component);
  return out;
}

AnytimeTrace run(const Problem& problem, const SwarmParams& params, int iterations, RunOptions options) {
  Simulator sim(problem, params, iterations, std::move(options));
  sim.run_to_completion();
  return sim.trace();
}

// ---------------------------------------------------------------------------
// Trace and init files

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_trace_csv(std::ostream& out, const AnytimeTrace& trace) {
  out << "iteration,round,gbest_fitness,envelopes,scalars\n";
  for (const auto& row : trace)
    out << row.iteration << ',' << row.round << ',' << shortest(row.gbest_fitness) << ',' << row.envelopes << ','
        << row.scalars << '\n';
}

std::string trace_csv(const AnytimeTrace& trace) {
  std::ostringstream os;
  write_trace_csv(os, trace);
  return os.str();
}

AnytimeTrace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "iteration,round,gbest_fitness,envelopes,scalars")
    throw Error("trace CSV: unexpected header");
  AnytimeTrace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell[5];
    for (auto& c : cell) std::getline(fields, c, ',');
    TraceRow row;
    row.iteration = std::stoi(cell[0]);
    row.round = std::stol(cell[1]);
    std::from_chars(cell[2].data(), cell[2].data() + cell[2].size(), row.gbest_fitness);
    row.envelopes = std::stoull(cell[3]);
    row.scalars = std::stoull(cell[4]);
    trace.push_back(row);
  }
  return trace;
}

InitialPositions parse_initial_positions(const Problem& problem, std::size_t particles, std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError("document", std::string("malformed JSON: ") + e.what());
  }
  InitialPositions out(problem.size());
  auto take = [&](AgentIndex i, const json& list, const std::string& path) {
    if (!list.is_array() || list.size() != particles)
      throw ValidationError(path, "expected " + std::to_string(particles) + " positions");
    const auto& dom = problem.agent(i).domain;
    for (std::size_t k = 0; k < particles; ++k) {
      if (!list[k].is_number()) throw ValidationError(path + "[" + std::to_string(k) + "]", "expected a number");
      double x = list[k].get<double>();
      if (!dom.contains(x))
        throw ValidationError(path + "[" + std::to_string(k) + "]", "position outside the agent's domain");
      out[i].push_back(x);
    }
  };
  if (doc.is_object()) {
    for (auto& [id, list] : doc.items()) {
      auto i = problem.find(id);
      if (!i) throw ValidationError(id, "unknown agent");
      take(*i, list, id);
    }
    for (AgentIndex i = 0; i < problem.size(); ++i)
      if (out[i].empty()) throw ValidationError(problem.agent(i).id, "missing initial positions");
  } else if (doc.is_array()) {
    if (doc.size() != problem.size())
      throw ValidationError("document", "expected " + std::to_string(problem.size()) + " agent lists");
    for (AgentIndex i = 0; i < problem.size(); ++i) take(i, doc[i], "[" + std::to_string(i) + "]");
  } else {
    throw ValidationError("document", "expected an object keyed by agent id or an array of lists");
  }
  return out;
}

}  // namespace pfd
