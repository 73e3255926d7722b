#include "pfd/generator.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "pfd/rng.hpp"

namespace pfd {

std::string_view short_name(Topology t) noexcept {
  switch (t) {
    case Topology::erdos_renyi: return "er";
    case Topology::scale_free: return "sf";
    case Topology::random_tree: return "tree";
  }
  return "?";
}

Topology parse_topology(std::string_view name) {
  if (name == "er" || name == "erdos_renyi") return Topology::erdos_renyi;
  if (name == "sf" || name == "scale_free") return Topology::scale_free;
  if (name == "tree" || name == "random_tree") return Topology::random_tree;
  throw Error("unknown topology '" + std::string(name) + "' (expected er, sf or tree)");
}

void GenSpec::validate() const {
  if (agents < 1) throw Error("agent count must be at least 1");
  if (!(coeff_lo <= coeff_hi) || !std::isfinite(coeff_lo) || !std::isfinite(coeff_hi))
    throw Error("coefficient range must satisfy lo <= hi");
  if (!(domain.lower < domain.upper) || !std::isfinite(domain.lower) || !std::isfinite(domain.upper))
    throw Error("domain must satisfy lower < upper");
  if (topology == Topology::erdos_renyi && !(edge_probability > 0.0 && edge_probability <= 1.0))
    throw Error("edge probability must lie in (0, 1]");
  if (topology == Topology::scale_free && !(attachment >= 1 && attachment < agents))
    throw Error("scale-free attachment m must satisfy 1 <= m < n");
}

namespace {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

bool connected(std::uint32_t n, const std::vector<Edge>& edges) {
  std::vector<std::uint32_t> parent(n);
  for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;
  auto root = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::uint32_t components = n;
  for (auto [u, v] : edges) {
    auto ru = root(u), rv = root(v);
    if (ru != rv) {
      parent[ru] = rv;
      --components;
    }
  }
  return components == 1;
}

std::vector<Edge> erdos_renyi(std::uint32_t n, double p, rng::PhiloxEngine& eng) {
  constexpr int kMaxAttempts = 100000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j)
        if (eng.unit() < p) edges.emplace_back(i, j);
    if (connected(n, edges)) return edges;
  }
  throw Error("no connected Erdos-Renyi graph after " + std::to_string(kMaxAttempts) +
              " draws; edge probability too small for n=" + std::to_string(n));
}

std::vector<Edge> scale_free(std::uint32_t n, std::uint32_t m, rng::PhiloxEngine& eng) {
  std::vector<Edge> edges;
  std::vector<std::uint64_t> degree(n, 0);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = i + 1; j < m; ++j) {
      edges.emplace_back(i, j);
      ++degree[i];
      ++degree[j];
    }
  for (std::uint32_t node = m; node < n; ++node) {
    std::vector<std::uint64_t> weight(degree.begin(), degree.begin() + node);
    if (std::all_of(weight.begin(), weight.end(), [](auto w) { return w == 0; }))
      std::fill(weight.begin(), weight.end(), 1);
    std::vector<std::uint32_t> targets;
    for (std::uint32_t pick = 0; pick < m; ++pick) {
      std::uint64_t total = 0;
      for (auto w : weight) total += w;
      if (total == 0) {
        // Remaining candidates all have degree zero; fall back to uniform.
        for (std::uint32_t i = 0; i < node; ++i)
          if (std::find(targets.begin(), targets.end(), i) == targets.end()) weight[i] = 1;
        for (auto w : weight) total += w;
      }
      auto ticket = eng.below(total);
      std::uint32_t chosen = 0;
      while (ticket >= weight[chosen]) ticket -= weight[chosen++];
      targets.push_back(chosen);
      weight[chosen] = 0;
    }
    for (auto t : targets) {
      edges.emplace_back(t, node);
      ++degree[t];
      ++degree[node];
    }
  }
  return edges;
}

std::vector<Edge> random_tree(std::uint32_t n, rng::PhiloxEngine& eng) {
  std::vector<Edge> edges;
  if (n < 2) return edges;
  if (n == 2) return {{0, 1}};
  std::vector<std::uint32_t> code(n - 2);
  for (auto& c : code) c = static_cast<std::uint32_t>(eng.below(n));
  std::vector<std::uint32_t> degree(n, 1);
  for (auto c : code) ++degree[c];
  // O(n^2) decode; instances stay small.
  for (auto c : code) {
    std::uint32_t leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.emplace_back(std::min(leaf, c), std::max(leaf, c));
    --degree[leaf];
    --degree[c];
  }
  std::uint32_t u = n, v = n;
  for (std::uint32_t i = 0; i < n; ++i)
    if (degree[i] == 1) (u == n ? u : v) = i;
  edges.emplace_back(u, v);
  return edges;
}

}  // namespace

Problem generate(const GenSpec& spec) {
  spec.validate();
  rng::PhiloxEngine eng(spec.seed);
  std::vector<Edge> edges;
  switch (spec.topology) {
    case Topology::erdos_renyi: edges = erdos_renyi(spec.agents, spec.edge_probability, eng); break;
    case Topology::scale_free: edges = scale_free(spec.agents, spec.attachment, eng); break;
    case Topology::random_tree: edges = random_tree(spec.agents, eng); break;
  }
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());

  std::vector<AgentSpec> agents;
  agents.reserve(spec.agents);
  for (std::uint32_t i = 0; i < spec.agents; ++i) agents.push_back({"x" + std::to_string(i + 1), spec.domain});
  std::vector<ConstraintSpec> constraints;
  constraints.reserve(edges.size());
  for (auto [i, j] : edges) {
    QuadraticCost cost;
    cost.a = eng.uniform(spec.coeff_lo, spec.coeff_hi);
    cost.b = eng.uniform(spec.coeff_lo, spec.coeff_hi);
    cost.c = eng.uniform(spec.coeff_lo, spec.coeff_hi);
    constraints.push_back({agents[i].id, agents[j].id, cost});
  }
  return Problem(std::move(agents), constraints);
}

}  // namespace pfd
