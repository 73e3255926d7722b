#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pfd/model.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

const fs::path& scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "pfd_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Result run_pfd(const std::string& args) {
  const auto log = scratch() / "out.txt";
  const std::string cmd = "cd " + scratch().string() + " && PFD_OUTPUT_DIR=" + scratch().string() + " " PFD_BIN " " +
                          args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::ostringstream buf;
  buf << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, buf.str()};
}

const std::string data = PFD_TEST_DATA;

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate") {
  auto r = run_pfd("generate --topology er --p 0.2 --agents 10 --seed 7 --count 3 --out-dir gen");
  REQUIRE(r.code == 0);
  for (int k = 0; k < 3; ++k) {
    const auto file = scratch() / "gen" / ("er_n10_s7_" + std::to_string(k) + ".json");
    REQUIRE(fs::exists(file));
    CHECK(pfd::load_problem(file).size() == 10);
  }
  r = run_pfd("generate --topology tree --agents 4 --out-dir gen");
  REQUIRE(r.code == 0);
  CHECK(pfd::load_problem(scratch() / "gen" / "tree_n4_s0_0.json").constraints().size() == 3);
  r = run_pfd("generate --topology sf --agents 6 --m 2");
  REQUIRE(r.code == 0);
  CHECK(fs::exists(scratch() / "sf_n6_s0_0.json"));  // PFD_OUTPUT_DIR
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_pfd("").code == 2);
  CHECK(run_pfd("frobnicate").code == 2);
  CHECK(run_pfd("generate --agents many").code == 2);
  auto r = run_pfd("generate --topology tree --p 0.5");
  CHECK(r.code == 2);
  CHECK(r.out.find("--p only applies to --topology er") != std::string::npos);
  CHECK(r.out.find("Usage") != std::string::npos);
  CHECK(run_pfd("generate --topology sf --agents 3 --m 3").code == 2);
  CHECK(run_pfd("solve " + data + "/four_agents.json --oracle magic").code == 2);
  CHECK(run_pfd("solve " + data + "/four_agents.json --particles 0").code == 2);
  CHECK(run_pfd("--help").code == 0);
}

TEST_CASE("runtime errors exit with 1") {
  auto r = run_pfd("solve no_such_file.json");
  CHECK(r.code == 1);
  CHECK(r.out.find("cannot open problem file") != std::string::npos);
  std::ofstream(scratch() / "bad.json") << R"({"agents":[{"id":"a","domain":[0,1]}],"constraints":[{"scope":["a","x9"],"a":1,"b":1,"c":1}]})";
  r = run_pfd("solve bad.json");
  CHECK(r.code == 1);
  CHECK(r.out.find("constraints[0].scope[1]: unknown agent 'x9'") != std::string::npos);
}

TEST_CASE("solve the worked example") {
  const auto init = " --force-init " + data + "/four_agents_init.json";
  auto r = run_pfd("solve " + data + "/four_agents.json --particles 2 --iters 1 --seed 0" + init + " --trace t.csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\ngbest 32.99\n") != std::string::npos);
  CHECK(r.out.starts_with("# "));
  std::ifstream in(scratch() / "t.csv");
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "iteration,round,gbest_fitness,envelopes,scalars");
  CHECK(row.starts_with("1,3,32.98999999999999"));

  r = run_pfd("solve " + data + "/four_agents.json --particles 2 --iters 1 --oracle centralized" + init);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\ngbest 32.99\n") != std::string::npos);
}

TEST_CASE("centralized oracle agrees on a generated instance") {
  REQUIRE(run_pfd("generate --topology sf --agents 8 --seed 4 --out-dir eq").code == 0);
  const std::string file = "eq/sf_n8_s4_0.json";
  const auto a = run_pfd("solve " + file + " --particles 40 --iters 30 --seed 9 --trace a.csv");
  const auto b = run_pfd("solve " + file + " --particles 40 --iters 30 --seed 9 --trace b.csv --oracle centralized");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  auto gbest = [](const std::string& out) {
    const auto at = out.find("\ngbest ");
    return out.substr(at, out.find('\n', at + 1) - at);
  };
  CHECK(gbest(a.out) == gbest(b.out));
}

TEST_CASE("grid oracle") {
  const auto r = run_pfd("solve " + data + "/four_agents.json --oracle grid --grid-points 5");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("cost=-100\n") != std::string::npos);
  CHECK(r.out.find("x2 = -10\n") != std::string::npos);
  CHECK(run_pfd("solve " + data + "/four_agents.json --oracle grid --grid-points 11 --grid-cap 100").code == 1);
}

TEST_CASE("bench") {
  auto r = run_pfd("bench --agents 5 --instances 3 --particles 10 --iters 8 --out b.csv");
  REQUIRE(r.code == 0);
  std::ifstream in(scratch() / "b.csv");
  std::vector<std::string> ls;
  for (std::string l; std::getline(in, l);) ls.push_back(l);
  REQUIRE(ls.size() >= 6);
  CHECK(ls[0] == "instance,n,topology,seed,final_cost,iterations,rounds,envelopes,wall_ms");
  CHECK(ls[4].starts_with("aggregate,5,er,0,"));
  CHECK(ls.back().starts_with("# pfd bench --topology er"));

  r = run_pfd("bench --agents 4 5 --instances 1 --particles 5 --iters 3 --topology tree --out-dir sweep");
  REQUIRE(r.code == 0);
  CHECK(fs::exists(scratch() / "sweep" / "bench_tree_n4_s0.csv"));
  CHECK(fs::exists(scratch() / "sweep" / "bench_tree_n5_s0.csv"));
  CHECK(run_pfd("bench --agents 4 5 --out x.csv").code == 2);
}

TEST_CASE("echoed config line reproduces the run") {
  REQUIRE(run_pfd("generate --agents 7 --seed 2 --out-dir rep").code == 0);
  const auto a = run_pfd("bench --agents 7 --seed 2 --instances 2 --particles 12 --iters 9 --solver-seed 3 --out r1.csv");
  REQUIRE(a.code == 0);
  const auto at = a.out.find("# pfd bench ");
  REQUIRE(at != std::string::npos);
  const std::string line = a.out.substr(at, a.out.find('\n', at) - at);
  const auto b = run_pfd(line.substr(6) + " --out r2.csv");
  REQUIRE(b.code == 0);
  auto body = [](const fs::path& p) {
    std::ifstream in(p);
    std::string text, l;
    while (std::getline(in, l)) {
      if (l.starts_with("#")) continue;
      text += l.substr(0, l.rfind(',')) + "\n";  // drop wall_ms
    }
    return text;
  };
  CHECK(body(scratch() / "r1.csv") == body(scratch() / "r2.csv"));
}

}
