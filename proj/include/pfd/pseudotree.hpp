#pragma once

// BFS pseudo-tree and the priority order derived from it.
//
// Priority: lower depth first, equal depths by alphabetical id (which is
// ordinal order). H(i)/L(i) split each agent's constraint neighbors into
// higher- and lower-priority sets. Aggregated fitness only travels along
// parent links; same-depth edges are cross edges.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pfd/model.hpp"

namespace pfd {

class PseudoTree {
 public:
  /// BFS from the alphabetically smallest agent, neighbors enqueued in
  /// alphabetical order. Throws Error if the graph is disconnected.
  explicit PseudoTree(const Problem& problem);

  std::size_t size() const noexcept { return depth_.size(); }
  AgentIndex root() const noexcept { return 0; }
  std::size_t depth(AgentIndex i) const { return depth_.at(i); }
  /// Maximum depth.
  std::size_t height() const noexcept { return height_; }
  std::optional<AgentIndex> parent(AgentIndex i) const { return parent_.at(i); }
  const std::vector<AgentIndex>& children(AgentIndex i) const { return children_.at(i); }
  /// Higher-priority neighbors, in priority order (highest first).
  const std::vector<AgentIndex>& higher(AgentIndex i) const { return higher_.at(i); }
  /// Lower-priority neighbors, in priority order (highest first).
  const std::vector<AgentIndex>& lower(AgentIndex i) const { return lower_.at(i); }
  /// Fitness envelopes agent i waits for per iteration:
  /// |L(i)| edge costs plus one aggregate per child that has lower neighbors.
  std::size_t expected_fitness_messages(AgentIndex i) const { return expected_.at(i); }

  /// True iff `i` has strictly lower priority than `j`.
  bool priority_less(AgentIndex i, AgentIndex j) const;

  /// Text rendering of depths, parents and H/L sets.
  std::string dump(const Problem& problem) const;

 private:
  std::vector<std::size_t> depth_;
  std::vector<std::optional<AgentIndex>> parent_;
  std::vector<std::vector<AgentIndex>> children_;
  std::vector<std::vector<AgentIndex>> higher_;
  std::vector<std::vector<AgentIndex>> lower_;
  std::vector<std::size_t> expected_;
  std::size_t height_ = 0;
};

/// Id-based convenience; throws Error for unknown ids.
bool priority_less(const Problem& problem, const PseudoTree& tree, std::string_view i, std::string_view j);

}  // namespace pfd
