#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "pfd/model.hpp"

using namespace pfd;

namespace {

std::string error_of(std::string_view json) {
  try {
    parse_problem(json);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("edge cost") {
  CHECK(evaluate_edge({1, 2, 3}, 2, 5) == 4 + 20 + 75);
  CHECK(evaluate_edge({1, 0, -1}, 3.5, 4.9) == doctest::Approx(-11.76).epsilon(1e-12));
}

TEST_CASE("global cost of the two reference particles") {
  const auto p = fixtures::four_agents();
  CHECK(global_cost(p, std::vector<double>{-1, 0, 2, 9.5}) == doctest::Approx(94.25).epsilon(1e-12));
  CHECK(global_cost(p, std::vector<double>{3.5, 4.9, 1, 0}) == doctest::Approx(32.99).epsilon(1e-12));
  CHECK(global_cost(p, Assignment{{"x1", 0}, {"x2", -10}, {"x3", 0}, {"x4", 0}}) == -100.0);
}

TEST_CASE("id-keyed assignments are checked") {
  const auto p = fixtures::four_agents();
  CHECK_THROWS_WITH_AS(global_cost(p, Assignment{{"x1", 0}, {"x2", 0}, {"x3", 0}}),
                       "assignment is missing agent 'x4'", Error);
  CHECK_THROWS_WITH_AS(global_cost(p, Assignment{{"x1", 0}, {"x2", 0}, {"x3", 0}, {"x4", 11}}),
                       "value for 'x4' lies outside its domain", Error);
  CHECK_THROWS_AS(global_cost(p, std::vector<double>{1, 2}), Error);
}

TEST_CASE("agents are ordered byte-wise by id") {
  const Problem p({{"x2", {0, 1}}, {"x10", {0, 1}}, {"x1", {0, 1}}}, {{"x2", "x10", {}}, {"x1", "x10", {}}});
  CHECK(p.agent(0).id == "x1");
  CHECK(p.agent(1).id == "x10");
  CHECK(p.agent(2).id == "x2");
  CHECK(p.index_of("x2") == 2);
  CHECK(!p.find("x3"));
  CHECK(p.constraints()[0].first == 2);  // scope order is kept
  CHECK(p.constraints()[0].second == 1);
  CHECK(p.constraint_between(1, 0) == std::optional<std::size_t>{1});
  CHECK(!p.constraint_between(0, 2));
  CHECK(std::vector<AgentIndex>(p.neighbors(1).begin(), p.neighbors(1).end()) == std::vector<AgentIndex>{0, 2});
}

TEST_CASE("evaluate_from orients the edge") {
  const Constraint c{2, 5, {1, 0, 10}};
  CHECK(c.evaluate_from(2, 1.0, 2.0) == 41.0);
  CHECK(c.evaluate_from(5, 2.0, 1.0) == 41.0);
  CHECK(c.other(5) == 2);
}

TEST_CASE("serialization round-trips exactly") {
  GenSpec g;
  g.agents = 12;
  g.seed = 99;
  const auto p = generate(g);
  const auto text = serialize_problem(p);
  CHECK(parse_problem(text) == p);
  CHECK(serialize_problem(parse_problem(text)) == text);
  CHECK(parse_problem(serialize_problem(fixtures::four_agents())) == fixtures::four_agents());
}

TEST_CASE("validation errors name the field") {
  CHECK(error_of(R"({"agents":[],"constraints":[]})") == "agents: at least one agent is required");
  CHECK(error_of(R"({"agents":[{"id":"a","domain":[1,0]}],"constraints":[]})") ==
        "agents[0].domain: lower bound must be below upper bound");
  CHECK(error_of(R"({"agents":[{"id":"a","domain":[0,1]},{"id":"a","domain":[0,1]}],"constraints":[]})") ==
        "agents[1].id: duplicate id 'a'");
  CHECK(error_of(R"({"agents":[{"id":"a","domain":[0,1]}],"constraints":[{"scope":["a","x9"],"a":1,"b":1,"c":1}]})") ==
        "constraints[0].scope[1]: unknown agent 'x9'");
  CHECK(error_of(R"({"agents":[{"id":"a","domain":[0,1]}],"constraints":[{"scope":["a","a"],"a":1,"b":1,"c":1}]})") ==
        "constraints[0].scope: constraint scope repeats 'a'");
  CHECK(error_of(R"({"agents":[{"id":"a","domain":[0,1]},{"id":"b","domain":[0,1]}],
                     "constraints":[{"scope":["a","b"],"a":1,"b":1,"c":1},{"scope":["b","a"],"a":1,"b":1,"c":1}]})")
            .starts_with("constraints[1].scope: second constraint"));
  CHECK(error_of(R"({"agents":[{"id":"a","domain":[0,1]},{"id":"b","domain":[0,1]}],"constraints":[]})")
            .starts_with("constraints: constraint graph is disconnected ('b' unreachable"));
  CHECK(error_of(R"({"agents":[{"id":"a","domain":[0,1]}],"constraints":[{"scope":["a"],"a":1,"b":1,"c":1}]})") ==
        "constraints[0].scope: expected a two-element array");
  CHECK(error_of(R"({"agents":[{"id":"a","domain":[0,1]}]})") == "document.constraints: missing field");
  CHECK(error_of(R"({"agents":[{"id":"a","domain":[0,"z"]}],"constraints":[]})") ==
        "agents[0].domain[1]: expected a number");
  CHECK(error_of("{").starts_with("document: malformed JSON"));
}

TEST_CASE("a single agent without constraints is valid") {
  const auto p = fixtures::single();
  CHECK(p.size() == 1);
  CHECK(global_cost(p, std::vector<double>{0.3}) == 0.0);
}

}
