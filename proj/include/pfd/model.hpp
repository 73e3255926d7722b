#pragma once

// F-DCOP instance: one continuous variable per agent, binary quadratic costs.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pfd {

/// Zero-based agent ordinal; equals the rank of the agent id in byte-wise
/// alphabetical order.
using AgentIndex = std::uint32_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent problem data. The message starts with the field
/// path that failed, e.g. `constraints[2].scope[1]: unknown agent 'x9'`.
class ValidationError : public Error {
 public:
  ValidationError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct ContinuousDomain {
  double lower = 0.0;
  double upper = 0.0;

  double width() const noexcept { return upper - lower; }
  bool contains(double x) const noexcept { return x >= lower && x <= upper; }
  friend bool operator==(const ContinuousDomain&, const ContinuousDomain&) = default;
};

/// cost(x_i, x_j) = a*x_i^2 + b*x_i*x_j + c*x_j^2
struct QuadraticCost {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  friend bool operator==(const QuadraticCost&, const QuadraticCost&) = default;
};

/// The single cost contract every solver path goes through. The association
/// order is fixed so that the vector kernels reproduce it bit for bit.
inline double evaluate_edge(const QuadraticCost& cost, double xi, double xj) noexcept {
  return ((cost.a * xi) * xi + (cost.b * xi) * xj) + (cost.c * xj) * xj;
}

struct AgentSpec {
  std::string id;
  ContinuousDomain domain;
  friend bool operator==(const AgentSpec&, const AgentSpec&) = default;
};

/// Constraint as written in a problem file: scope by id.
struct ConstraintSpec {
  std::string first;
  std::string second;
  QuadraticCost cost;
};

/// Resolved constraint. `first` binds to x_i and `second` to x_j.
struct Constraint {
  AgentIndex first = 0;
  AgentIndex second = 0;
  QuadraticCost cost;

  AgentIndex other(AgentIndex self) const noexcept { return self == first ? second : first; }
  /// Cost with `self` taking `own` and the other endpoint taking `theirs`.
  double evaluate_from(AgentIndex self, double own, double theirs) const noexcept {
    return self == first ? evaluate_edge(cost, own, theirs) : evaluate_edge(cost, theirs, own);
  }
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Immutable, validated problem. Agents are stored in ordinal (alphabetical)
/// order; constraints keep their input order, which is the canonical
/// summation order of the global objective.
class Problem {
 public:
  /// Throws ValidationError on duplicate ids, bad domains, unknown or repeated
  /// scopes, non-finite coefficients or a disconnected constraint graph.
  Problem(std::vector<AgentSpec> agents, const std::vector<ConstraintSpec>& constraints);

  std::size_t size() const noexcept { return agents_.size(); }
  std::span<const AgentSpec> agents() const noexcept { return agents_; }
  const AgentSpec& agent(AgentIndex i) const { return agents_.at(i); }
  std::span<const Constraint> constraints() const noexcept { return constraints_; }

  std::optional<AgentIndex> find(std::string_view id) const;
  AgentIndex index_of(std::string_view id) const;

  /// Neighbors of `i` in ordinal order.
  std::span<const AgentIndex> neighbors(AgentIndex i) const { return adjacency_.at(i); }
  /// Index into constraints() of the edge {i, j}, if any.
  std::optional<std::size_t> constraint_between(AgentIndex i, AgentIndex j) const;

  friend bool operator==(const Problem& lhs, const Problem& rhs) {
    return lhs.agents_ == rhs.agents_ && lhs.constraints_ == rhs.constraints_;
  }

 private:
  std::vector<AgentSpec> agents_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<AgentIndex>> adjacency_;
  std::map<std::pair<AgentIndex, AgentIndex>, std::size_t> edge_index_;
};

/// Complete assignment keyed by agent id.
using Assignment = std::map<std::string, double, std::less<>>;

/// Sum of all constraint costs in constraint-list order. `values` is indexed
/// by agent ordinal.
double global_cost(const Problem& problem, std::span<const double> values);

/// Same, for an id-keyed assignment. Throws Error naming a missing agent or
/// an out-of-domain value.
double global_cost(const Problem& problem, const Assignment& assignment);

Assignment to_assignment(const Problem& problem, std::span<const double> values);

/// JSON problem format:
/// {"agents":[{"id":"x1","domain":[lo,hi]},...],
///  "constraints":[{"scope":["x1","x2"],"a":..,"b":..,"c":..},...]}
Problem parse_problem(std::string_view text);
std::string serialize_problem(const Problem& problem);

Problem load_problem(const std::filesystem::path& path);
void save_problem(const Problem& problem, const std::filesystem::path& path);

}  // namespace pfd
