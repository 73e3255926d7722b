#include "doctest.h"
#include "pfd/generator.hpp"
#include "pfd/pseudotree.hpp"

using namespace pfd;

TEST_SUITE("generator") {

TEST_CASE("topology names") {
  CHECK(parse_topology("er") == Topology::erdos_renyi);
  CHECK(parse_topology("scale_free") == Topology::scale_free);
  CHECK(short_name(parse_topology("random_tree")) == "tree");
  CHECK_THROWS_AS(parse_topology("grid"), Error);
}

TEST_CASE("defaults") {
  const GenSpec g;
  CHECK(g.coeff_lo == -5.0);
  CHECK(g.coeff_hi == 5.0);
  CHECK(g.domain == ContinuousDomain{-50.0, 50.0});
  CHECK(g.edge_probability == 0.2);
}

TEST_CASE("random trees have n-1 edges") {
  for (std::uint32_t n : {1u, 2u, 4u, 17u}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      GenSpec g;
      g.topology = Topology::random_tree;
      g.agents = n;
      g.seed = seed;
      const auto p = generate(g);
      CHECK(p.size() == n);
      CHECK(p.constraints().size() == n - 1);
    }
  }
}

TEST_CASE("scale-free edge count") {
  for (std::uint32_t m : {1u, 2u, 3u}) {
    GenSpec g;
    g.topology = Topology::scale_free;
    g.agents = 20;
    g.attachment = m;
    g.seed = m;
    CHECK(generate(g).constraints().size() == m * (m - 1) / 2 + m * (20 - m));
  }
}

TEST_CASE("generated problems are connected, in range and deterministic") {
  for (int topo = 0; topo < 3; ++topo) {
    GenSpec g;
    g.topology = static_cast<Topology>(topo);
    g.agents = 15;
    g.seed = 7;
    const auto p = generate(g);
    CHECK_NOTHROW(PseudoTree{p});
    CHECK(p == generate(g));
    g.seed = 8;
    CHECK(!(p == generate(g)));
    for (const auto& c : p.constraints()) {
      CHECK(c.first != c.second);
      for (double v : {c.cost.a, c.cost.b, c.cost.c}) {
        CHECK(v >= -5.0);
        CHECK(v <= 5.0);
      }
    }
    for (const auto& a : p.agents()) CHECK(a.domain == ContinuousDomain{-50.0, 50.0});
  }
}

TEST_CASE("complete graph at p = 1") {
  GenSpec g;
  g.edge_probability = 1.0;
  g.agents = 6;
  CHECK(generate(g).constraints().size() == 15);
}

TEST_CASE("agent ids run x1..xn") {
  GenSpec g;
  g.agents = 11;
  const auto p = generate(g);
  CHECK(p.agent(0).id == "x1");
  CHECK(p.agent(1).id == "x10");
  CHECK(p.agent(2).id == "x11");
  CHECK(p.agent(10).id == "x9");
}

TEST_CASE("infeasible specs are rejected") {
  GenSpec g;
  g.topology = Topology::scale_free;
  g.agents = 3;
  g.attachment = 3;
  CHECK_THROWS_AS(g.validate(), Error);
  g = GenSpec{};
  g.edge_probability = 0.0;
  CHECK_THROWS_AS(generate(g), Error);
  g = GenSpec{};
  g.coeff_lo = 2;
  g.coeff_hi = 1;
  CHECK_THROWS_AS(g.validate(), Error);
}

}
