#include "pfd/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace pfd {

namespace {

std::string squote(std::string_view s) { return "'" + std::string(s) + "'"; }

void require_finite(double v, const std::string& path) {
  if (!std::isfinite(v)) throw ValidationError(path, "value is not finite");
}

}  // namespace

Problem::Problem(std::vector<AgentSpec> agents, const std::vector<ConstraintSpec>& constraints) {
  if (agents.empty()) throw ValidationError("agents", "at least one agent is required");

  // Validate in input order so paths point at the offending entry.
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const auto path = "agents[" + std::to_string(i) + "]";
    if (agents[i].id.empty()) throw ValidationError(path + ".id", "empty id");
    require_finite(agents[i].domain.lower, path + ".domain[0]");
    require_finite(agents[i].domain.upper, path + ".domain[1]");
    if (!(agents[i].domain.lower < agents[i].domain.upper))
      throw ValidationError(path + ".domain", "lower bound must be below upper bound");
  }
  std::vector<std::size_t> order(agents.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return agents[l].id < agents[r].id; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (agents[order[k]].id == agents[order[k - 1]].id)
      throw ValidationError("agents[" + std::to_string(std::max(order[k], order[k - 1])) + "].id",
                            "duplicate id " + squote(agents[order[k]].id));
  }
  agents_.reserve(agents.size());
  for (auto k : order) agents_.push_back(std::move(agents[k]));

  adjacency_.resize(agents_.size());
  constraints_.reserve(constraints.size());
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const auto path = "constraints[" + std::to_string(k) + "]";
    const auto& spec = constraints[k];
    auto first = find(spec.first);
    if (!first) throw ValidationError(path + ".scope[0]", "unknown agent " + squote(spec.first));
    auto second = find(spec.second);
    if (!second) throw ValidationError(path + ".scope[1]", "unknown agent " + squote(spec.second));
    if (*first == *second) throw ValidationError(path + ".scope", "constraint scope repeats " + squote(spec.first));
    require_finite(spec.cost.a, path + ".a");
    require_finite(spec.cost.b, path + ".b");
    require_finite(spec.cost.c, path + ".c");
    auto key = std::minmax(*first, *second);
    if (!edge_index_.emplace(key, k).second)
      throw ValidationError(path + ".scope", "second constraint between " + squote(spec.first) + " and " +
                                                 squote(spec.second));
    constraints_.push_back({*first, *second, spec.cost});
    adjacency_[*first].push_back(*second);
    adjacency_[*second].push_back(*first);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());

  // Connectivity by traversal from ordinal 0.
  std::vector<bool> seen(agents_.size(), false);
  std::vector<AgentIndex> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    for (auto v : adjacency_[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  if (reached != agents_.size()) {
    auto missing = std::find(seen.begin(), seen.end(), false) - seen.begin();
    throw ValidationError("constraints", "constraint graph is disconnected (" +
                                             squote(agents_[missing].id) + " unreachable from " +
                                             squote(agents_[0].id) + ")");
  }
}

std::optional<AgentIndex> Problem::find(std::string_view id) const {
  auto it = std::lower_bound(agents_.begin(), agents_.end(), id,
                             [](const AgentSpec& a, std::string_view key) { return a.id < key; });
  if (it == agents_.end() || it->id != id) return std::nullopt;
  return static_cast<AgentIndex>(it - agents_.begin());
}

AgentIndex Problem::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error("unknown agent " + squote(id));
}

std::optional<std::size_t> Problem::constraint_between(AgentIndex i, AgentIndex j) const {
  auto it = edge_index_.find(std::minmax(i, j));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

double global_cost(const Problem& problem, std::span<const double> values) {
  if (values.size() != problem.size())
    throw Error("assignment has " + std::to_string(values.size()) + " values for " +
                std::to_string(problem.size()) + " agents");
  double total = 0.0;
  for (const auto& c : problem.constraints()) total += evaluate_edge(c.cost, values[c.first], values[c.second]);
  return total;
}

double global_cost(const Problem& problem, const Assignment& assignment) {
  std::vector<double> values(problem.size());
  for (AgentIndex i = 0; i < problem.size(); ++i) {
    const auto& agent = problem.agent(i);
    auto it = assignment.find(agent.id);
    if (it == assignment.end()) throw Error("assignment is missing agent " + squote(agent.id));
    if (!agent.domain.contains(it->second))
      throw Error("value for " + squote(agent.id) + " lies outside its domain");
    values[i] = it->second;
  }
  return global_cost(problem, values);
}

Assignment to_assignment(const Problem& problem, std::span<const double> values) {
  Assignment out;
  for (AgentIndex i = 0; i < problem.size(); ++i) out.emplace(problem.agent(i).id, values[i]);
  return out;
}

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ValidationError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(path + "." + key, "missing field");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ValidationError(path, "expected a number");
  double d = v.get<double>();
  require_finite(d, path);
  return d;
}

std::string string_value(const json& v, const std::string& path) {
  if (!v.is_string()) throw ValidationError(path, "expected a string");
  return v.get<std::string>();
}

const json& pair_array(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw ValidationError(path, "expected a two-element array");
  return v;
}

}  // namespace

Problem parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError("document", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("document", "expected an object");

  const auto& agents_json = field(doc, "agents", "document");
  if (!agents_json.is_array()) throw ValidationError("agents", "expected an array");
  std::vector<AgentSpec> agents;
  for (std::size_t i = 0; i < agents_json.size(); ++i) {
    const auto path = "agents[" + std::to_string(i) + "]";
    const auto& a = agents_json[i];
    const auto& dom = pair_array(field(a, "domain", path), path + ".domain");
    agents.push_back({string_value(field(a, "id", path), path + ".id"),
                      {number(dom[0], path + ".domain[0]"), number(dom[1], path + ".domain[1]")}});
  }

  const auto& cons_json = field(doc, "constraints", "document");
  if (!cons_json.is_array()) throw ValidationError("constraints", "expected an array");
  std::vector<ConstraintSpec> constraints;
  for (std::size_t k = 0; k < cons_json.size(); ++k) {
    const auto path = "constraints[" + std::to_string(k) + "]";
    const auto& c = cons_json[k];
    const auto& scope = pair_array(field(c, "scope", path), path + ".scope");
    constraints.push_back({string_value(scope[0], path + ".scope[0]"), string_value(scope[1], path + ".scope[1]"),
                           {number(field(c, "a", path), path + ".a"), number(field(c, "b", path), path + ".b"),
                            number(field(c, "c", path), path + ".c")}});
  }
  return Problem(std::move(agents), constraints);
}

std::string serialize_problem(const Problem& problem) {
  using ojson = nlohmann::ordered_json;
  ojson doc;
  doc["agents"] = ojson::array();
  for (const auto& a : problem.agents()) {
    ojson entry;
    entry["id"] = a.id;
    entry["domain"] = {a.domain.lower, a.domain.upper};
    doc["agents"].push_back(std::move(entry));
  }
  doc["constraints"] = ojson::array();
  for (const auto& c : problem.constraints()) {
    ojson entry;
    entry["scope"] = {problem.agent(c.first).id, problem.agent(c.second).id};
    entry["a"] = c.cost.a;
    entry["b"] = c.cost.b;
    entry["c"] = c.cost.c;
    doc["constraints"].push_back(std::move(entry));
  }
  // nlohmann emits the shortest decimal that round-trips each double exactly.
  return doc.dump(1) + "\n";
}

Problem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open problem file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

void save_problem(const Problem& problem, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write problem file " + path.string());
  out << serialize_problem(problem);
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace pfd
