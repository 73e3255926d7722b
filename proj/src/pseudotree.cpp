#include "pfd/pseudotree.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

namespace pfd {

PseudoTree::PseudoTree(const Problem& problem) {
  const auto n = problem.size();
  constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
  depth_.assign(n, kUnseen);
  parent_.assign(n, std::nullopt);
  children_.resize(n);
  higher_.resize(n);
  lower_.resize(n);
  expected_.assign(n, 0);

  std::deque<AgentIndex> queue{root()};
  depth_[root()] = 0;
  std::size_t visited = 1;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    for (auto v : problem.neighbors(u)) {
      if (depth_[v] != kUnseen) continue;
      depth_[v] = depth_[u] + 1;
      parent_[v] = u;
      children_[u].push_back(v);
      height_ = std::max(height_, depth_[v]);
      queue.push_back(v);
      ++visited;
    }
  }
  if (visited != n) throw Error("constraint graph is disconnected; cannot build pseudo-tree");

  auto by_priority = [this](AgentIndex a, AgentIndex b) { return priority_less(b, a); };
  for (AgentIndex i = 0; i < n; ++i) {
    for (auto j : problem.neighbors(i)) (priority_less(j, i) ? lower_[i] : higher_[i]).push_back(j);
    std::sort(higher_[i].begin(), higher_[i].end(), by_priority);
    std::sort(lower_[i].begin(), lower_[i].end(), by_priority);
  }
  for (AgentIndex i = 0; i < n; ++i) {
    expected_[i] = lower_[i].size();
    for (auto c : children_[i])
      if (!lower_[c].empty()) ++expected_[i];
  }
}

bool PseudoTree::priority_less(AgentIndex i, AgentIndex j) const {
  if (depth_.at(i) != depth_.at(j)) return depth_[i] > depth_[j];
  return i > j;
}

std::string PseudoTree::dump(const Problem& problem) const {
  auto names = [&](const std::vector<AgentIndex>& list) {
    std::string out = "{";
    for (std::size_t k = 0; k < list.size(); ++k) out += (k ? "," : "") + problem.agent(list[k]).id;
    return out + "}";
  };
  std::ostringstream os;
  os << "root " << problem.agent(root()).id << ", height " << height_ << "\n";
  for (AgentIndex i = 0; i < size(); ++i) {
    os << problem.agent(i).id << " depth=" << depth_[i]
       << " parent=" << (parent_[i] ? problem.agent(*parent_[i]).id : std::string("-"))
       << " children=" << names(children_[i]) << " H=" << names(higher_[i]) << " L=" << names(lower_[i])
       << " expect=" << expected_[i] << "\n";
  }
  return os.str();
}

bool priority_less(const Problem& problem, const PseudoTree& tree, std::string_view i, std::string_view j) {
  return tree.priority_less(problem.index_of(i), problem.index_of(j));
}

}  // namespace pfd
