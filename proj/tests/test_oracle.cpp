#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "pfd/generator.hpp"
#include "pfd/oracle.hpp"

using namespace pfd;

TEST_SUITE("oracle") {

TEST_CASE("centralized and distributed traces agree") {
  for (int k = 0; k < 8; ++k) {
    CAPTURE(k);
    const auto p = generate(fixtures::mixed_spec(k));
    SwarmParams params;
    params.particles = 10 + static_cast<std::size_t>(k);
    params.seed = static_cast<std::uint64_t>(k);
    const auto dist = run(p, params, 40);
    const auto cent = centralized_gcpso(p, params, 40);
    REQUIRE(dist.size() == cent.trace.size());
    for (std::size_t t = 0; t < dist.size(); ++t) {
      const double a = dist[t].gbest_fitness, b = cent.trace[t].gbest_fitness;
      CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST_CASE("centralized run on the example particles") {
  SwarmParams params;
  params.particles = 2;
  RunOptions opt;
  opt.initial_positions = fixtures::example_particles();
  const auto r = centralized_gcpso(fixtures::four_agents(), params, 1, opt);
  REQUIRE(r.trace.size() == 1);
  CHECK(r.trace[0].gbest_fitness == doctest::Approx(32.99).epsilon(1e-12));
  CHECK(r.fitness[0][0] == doctest::Approx(94.25).epsilon(1e-12));
  CHECK(r.best_values == std::vector<double>{3.5, 4.9, 1, 0});
}

TEST_CASE("grid search on the example") {
  // Exhaustive enumeration done ahead of time with exact rational arithmetic.
  for (std::size_t points : {5u, 11u}) {
    const auto g = grid_search(fixtures::four_agents(), {points, 10'000'000});
    CHECK(g.cost == -100.0);
    CHECK(g.values == std::vector<double>{0, -10, 0, 0});
    CHECK(g.assignment.at("x2") == -10.0);
  }
}

TEST_CASE("grid search trivial cases") {
  const Problem bowl({{"x", {-50, 50}}, {"y", {-50, 50}}}, {{"x", "y", {1, 1, 1}}});
  const auto g = grid_search(bowl, {7, 1000});
  CHECK(g.cost == 0.0);
  CHECK(g.values == std::vector<double>{0, 0});
  const auto s = grid_search(fixtures::single(), {3, 10});
  CHECK(s.cost == 0.0);
  CHECK(s.values == std::vector<double>{-1.0});  // first point wins ties
}

TEST_CASE("refining a nested grid never raises the cost") {
  for (int k = 0; k < 5; ++k) {
    GenSpec spec;
    spec.topology = Topology::random_tree;
    spec.agents = 4;
    spec.seed = static_cast<std::uint64_t>(k);
    const auto p = generate(spec);
    double prev = kInfinity;
    for (std::size_t points : {3u, 5u, 9u, 17u}) {
      const double cost = grid_search(p, {points, 1'000'000}).cost;
      CHECK(cost <= prev);
      prev = cost;
    }
  }
}

TEST_CASE("grid cap") {
  CHECK_THROWS_WITH_AS(grid_search(fixtures::four_agents(), {11, 10000}), "grid of 11^4 points exceeds the cap of 10000",
                       Error);
  CHECK_NOTHROW(grid_search(fixtures::four_agents(), {10, 10000}));
  CHECK_THROWS_AS(grid_search(fixtures::four_agents(), {1, 10}), Error);
}

}
