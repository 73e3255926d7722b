#include <vector>

#include "doctest.h"
#include "pfd/swarm.hpp"

using namespace pfd;

namespace {

BestInfo verdict(int t, std::vector<double> pbest, std::size_t g, bool changed) {
  BestInfo b;
  b.iteration = t;
  b.improved.assign(pbest.size(), 0);
  b.gbest_index = g;
  b.gbest_fitness = pbest[g];
  b.pbest_fitness = std::move(pbest);
  b.gbest_changed = changed;
  return b;
}

}  // namespace

TEST_SUITE("swarm") {

TEST_CASE("parameter defaults and validation") {
  SwarmParams p;
  CHECK(p.particles == 2000);
  CHECK(p.w == 0.9);
  CHECK(p.c1 == 0.9);
  CHECK(p.c2 == 0.1);
  CHECK(p.max_sc == 15);
  CHECK(p.max_fc == 5);
  CHECK_NOTHROW(p.validate());
  p.particles = 0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.w = -1;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.max_fc = 0;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("root update from scratch") {
  const std::vector<double> fit{94.25, 32.99};
  const std::vector<double> none(2, kInfinity);
  const auto b = root_update(fit, none, kInfinity, 0, 0);
  CHECK(b.pbest_fitness == fit);
  CHECK(b.improved == std::vector<std::uint8_t>{1, 1});
  CHECK(b.gbest_index == 1);
  CHECK(b.gbest_fitness == 32.99);
  CHECK(b.gbest_changed);
  CHECK(b.payload_scalars() == 7);
}

TEST_CASE("root update keeps incumbents on ties") {
  auto b = root_update(std::vector<double>{5, 5, 5}, std::vector<double>(3, kInfinity), kInfinity, 2, 0);
  CHECK(b.gbest_index == 0);
  b = root_update(std::vector<double>{6, 4, 4}, std::vector<double>{5, 4, 7}, 4.0, 1, 3);
  CHECK(b.improved == std::vector<std::uint8_t>{0, 0, 1});
  CHECK(b.pbest_fitness == std::vector<double>{5, 4, 4});
  CHECK(b.gbest_index == 1);
  CHECK(!b.gbest_changed);
  CHECK(b.iteration == 3);
}

TEST_CASE("rho controller cases") {
  CHECK(rho_update(8.0, 99, 0, 15, 5, 0) == 1.0);
  CHECK(rho_update(1.0, 16, 0, 15, 5, 4) == 2.0);
  CHECK(rho_update(1.0, 15, 0, 15, 5, 4) == 1.0);
  CHECK(rho_update(1.0, 0, 6, 15, 5, 4) == 0.5);
  CHECK(rho_update(1.0, 0, 5, 15, 5, 4) == 1.0);
  double rho = 1.0;
  for (int i = 0; i < 40; ++i) rho = rho_update(rho, 0, 6, 15, 5, 1);
  CHECK(rho == 0x1p-40);  // powers of two stay exact
  static_assert(rho_update(4.0, 16, 0, 15, 5, 1) == 8.0);
}

TEST_CASE("success and failure counters") {
  // Previous best particle improved below the previous global best: success.
  auto b = verdict(2, {3.0, 9.0}, 0, true);
  CHECK(counters_update(4, 0, b, 0, 5.0) == std::pair{5, 0});
  // Another particle took over while the old best stood still.
  b = verdict(2, {5.0, 4.0}, 1, true);
  CHECK(counters_update(4, 0, b, 0, 5.0) == std::pair{0, 0});
  // Nothing changed.
  b = verdict(2, {5.0, 9.0}, 0, false);
  CHECK(counters_update(0, 2, b, 0, 5.0) == std::pair{0, 3});
}

TEST_CASE("scripted verdicts drive rho up and down") {
  SwarmParams params;
  params.particles = 2;
  const ContinuousDomain dom{-10, 10};
  auto s = make_agent_state({1.0, 2.0}, {0.0, 0.0});
  const auto& kt = kernels::scalar_table();
  double f = 100.0;
  apply_best_info(s, verdict(0, {f, f + 1}, 0, true), dom, params, 0, kt);
  CHECK(s.rho == 1.0);
  for (int t = 1; t <= params.max_sc + 1; ++t) {
    f -= 1.0;
    apply_best_info(s, verdict(t, {f, 200.0}, 0, true), dom, params, 0, kt);
    CHECK(s.s_c == t);
    CHECK(s.f_c == 0);
    CHECK(s.rho == (t == params.max_sc + 1 ? 2.0 : 1.0));
  }
  const int base = params.max_sc + 1;
  std::vector<double> seen;
  for (int u = 1; u <= params.max_fc + 2; ++u) {
    apply_best_info(s, verdict(base + u, {f, 200.0}, 0, false), dom, params, 0, kt);
    CHECK(s.s_c == 0);
    CHECK(s.f_c == u);
    seen.push_back(s.rho);
  }
  CHECK(seen == std::vector<double>{2, 2, 2, 2, 2, 1, 0.5});
}

TEST_CASE("init components") {
  const auto& kt = kernels::scalar_table();
  const auto [x, v] = init_components(50, {-50, 50}, 3, 2, kt);
  REQUIRE(x.size() == 50);
  for (std::size_t k = 0; k < x.size(); ++k) {
    CHECK(x[k] >= -50.0);
    CHECK(x[k] < 50.0);
    CHECK(v[k] == 0.0);
    CHECK(x[k] == -50.0 + rng::swarm_units(3, 2, static_cast<std::uint32_t>(k), 0, rng::Purpose::init_position).a * 100.0);
  }
  CHECK(init_components(50, {-50, 50}, 3, 2, kt).first == x);
  CHECK(init_components(50, {-50, 50}, 3, 1, kt).first != x);
}

TEST_CASE("one update step by hand") {
  SwarmParams params;
  params.particles = 3;
  params.seed = 11;
  const ContinuousDomain dom{-10, 10};
  auto s = make_agent_state({1.0, -2.0, 4.0}, {0.5, 0.0, -1.0});
  auto b = verdict(0, {7.0, 3.0, 9.0}, 1, true);
  b.improved = {1, 1, 1};
  apply_best_info(s, b, dom, params, 4, kernels::scalar_table());
  CHECK(s.gbest_component == -2.0);
  CHECK(s.pbest_component == std::vector<double>{1.0, -2.0, 4.0});

  const auto u0 = rng::swarm_units(11, 4, 0, 0, rng::Purpose::velocity);
  const auto u1 = rng::swarm_units(11, 4, 1, 0, rng::Purpose::velocity);
  const auto u2 = rng::swarm_units(11, 4, 2, 0, rng::Purpose::velocity);
  const double v0 = velocity_standard(0.5, 1.0, 1.0, -2.0, 0.9, 0.9, 0.1, u0.a, u0.b);
  const double v1 = velocity_gbest(0.0, -2.0, -2.0, 0.9, 1.0, u1.b);
  const double v2 = velocity_standard(-1.0, 4.0, 4.0, -2.0, 0.9, 0.9, 0.1, u2.a, u2.b);
  CHECK(s.velocity == std::vector<double>{v0, v1, v2});
  CHECK(s.position == std::vector<double>{position_update(1.0, v0, -10, 10), position_update(-2.0, v1, -10, 10),
                                          position_update(4.0, v2, -10, 10)});
}

TEST_CASE("velocity clamp") {
  SwarmParams params;
  params.particles = 2;
  params.clamp_velocity = true;
  const ContinuousDomain dom{0, 1};
  auto s = make_agent_state({0.0, 1.0}, {50.0, -50.0});
  auto b = verdict(0, {1.0, 2.0}, 0, true);
  apply_best_info(s, b, dom, params, 0, kernels::scalar_table());
  for (double v : s.velocity) {
    CHECK(v <= 1.0);
    CHECK(v >= -1.0);
  }
}

TEST_CASE("zero coefficients freeze a lone particle on its best") {
  SwarmParams params;
  params.particles = 1;
  params.w = params.c1 = params.c2 = 0.0;
  const ContinuousDomain dom{-1e-9, 1e-9};  // rho perturbation clamps away
  auto s = make_agent_state({0.0}, {0.0});
  for (int t = 0; t < 5; ++t) {
    auto b = verdict(t, {1.0}, 0, t == 0);
    b.improved = {static_cast<std::uint8_t>(t == 0)};
    apply_best_info(s, b, dom, params, 0, kernels::scalar_table());
    CHECK(s.gbest_component == 0.0);
  }
}

}
