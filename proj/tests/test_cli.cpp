// End-to-end checks of the pcurv binary. The binary path arrives in the
// PCURV_CLI environment variable (set by ctest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

std::string cli_path() {
  const char* path = std::getenv("PCURV_CLI");
  REQUIRE_MESSAGE(path != nullptr, "PCURV_CLI must point at the pcurv binary");
  return path;
}

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "pcurv_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const std::string command = cli_path() + " " + args + " > " + out.string() + " 2>/dev/null";
  const int raw = std::system(command.c_str());
  std::ifstream in(out);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return {WEXITSTATUS(raw), buffer.str()};
}

std::string path_of(const std::string& name) { return (work_dir() / name).string(); }

json strip_wall_time(json records) {
  for (json& r : records) r.erase("wall_time_ms");
  return records;
}

}  // namespace

TEST_CASE("generate writes parseable families") {
  for (const std::string entry : {"path 3 p3.json", "cycle 4 c4.json", "star 3 star3.json",
                                 "star 8 star8.json", "complete 4 k4.json",
                                 "hypercube 3 q3.json", "path 5 p5.json", "path 2 k2.json"}) {
    std::istringstream in(entry);
    std::string family, size, file;
    in >> family >> size >> file;
    const RunResult r =
        run("generate --family " + family + " --size " + size + " --out " + path_of(file));
    CHECK(r.exit_code == 0);
  }
  const RunResult bad = run("generate --family moebius --size 3 --out " + path_of("x.json"));
  CHECK(bad.exit_code == 2);
}

TEST_CASE("curvature at a star leaf matches the closed form") {
  const RunResult r = run("curvature --graph " + path_of("star3.json") +
                          " --vertex z1 --p 2 --dim inf --restarts 48 --seed 3");
  REQUIRE(r.exit_code == 0);
  const json records = json::parse(r.output);
  REQUIRE(records.size() == 1);
  CHECK(records[0]["graph"] == path_of("star3.json"));
  CHECK(records[0]["vertex"] == "z1");
  CHECK(records[0]["status"] == "converged");
  CHECK(std::abs(records[0]["value"].get<double>() - 1.0) <= 1e-3);
  CHECK(records[0]["m"] == "inf");
  CHECK(records[0]["restarts"] == 48);
  CHECK(records[0]["seed"] == 3);
  CHECK(records[0].contains("wall_time_ms"));
}

TEST_CASE("divergence is a normal outcome with exit 0") {
  const RunResult r =
      run("curvature --graph " + path_of("p3.json") + " --vertex v1 --p 1.5 --dim inf");
  REQUIRE(r.exit_code == 0);
  const json records = json::parse(r.output);
  CHECK(records[0]["status"] == "diverging_to_minus_infinity");
  CHECK(!records[0].contains("value"));
}

TEST_CASE("input errors exit with code 2") {
  CHECK(run("curvature --graph " + path_of("p3.json") + " --vertex nosuch --p 2").exit_code ==
        2);
  CHECK(run("curvature --graph " + path_of("missing.json") + " --vertex v0 --p 2").exit_code ==
        2);
  CHECK(run("curvature --graph " + path_of("p3.json") + " --vertex v0 --p 0.5").exit_code ==
        2);
  CHECK(run("curvature --graph " + path_of("p3.json") + " --p 2").exit_code == 2);
  CHECK(run("curvature --graph " + path_of("p3.json") + " --vertex v0 --p 2 --dim -3")
            .exit_code == 2);
}

TEST_CASE("degenerate vertex exits with code 3") {
  std::ofstream(path_of("lonely.json"))
      << R"({"vertices": [{"id": "a"}, {"id": "b"}, {"id": "c"}],
             "edges": [{"u": "b", "v": "c"}]})";
  const RunResult r =
      run("curvature --graph " + path_of("lonely.json") + " --vertex a --p 2");
  CHECK(r.exit_code == 3);
  const json records = json::parse(r.output);
  CHECK(records[0]["status"] == "degenerate");
}

TEST_CASE("identical seeds give byte-identical output modulo wall time") {
  const std::string args = "curvature --graph " + path_of("c4.json") +
                           " --all --p 3 --dim 5 --restarts 16 --seed 11";
  const RunResult a = run(args);
  const RunResult b = run(args);
  REQUIRE(a.exit_code == 0);
  CHECK(strip_wall_time(json::parse(a.output)).dump() ==
        strip_wall_time(json::parse(b.output)).dump());
}

TEST_CASE("csv and json emitters agree field for field") {
  const std::string base = "curvature --graph " + path_of("p5.json") +
                           " --all --p 2 --dim inf --restarts 16 --seed 5 --format ";
  const RunResult js = run(base + "json");
  const RunResult cs = run(base + "csv");
  REQUIRE(js.exit_code == 0);
  REQUIRE(cs.exit_code == 0);

  const json records = json::parse(js.output);
  std::istringstream csv(cs.output);
  std::string line;
  std::getline(csv, line);
  CHECK(line == "graph,vertex,p,m,status,value,restarts,seed,wall_time_ms");
  std::size_t i = 0;
  while (std::getline(csv, line)) {
    REQUIRE(i < records.size());
    std::array<std::string, 9> fields;
    std::istringstream ls(line);
    for (std::string& f : fields) std::getline(ls, f, ',');
    CHECK(fields[0] == records[i]["graph"]);
    CHECK(fields[1] == records[i]["vertex"]);
    CHECK(std::strtod(fields[2].c_str(), nullptr) == records[i]["p"].get<double>());
    CHECK(fields[3] == "inf");
    CHECK(fields[4] == records[i]["status"]);
    CHECK(std::strtod(fields[5].c_str(), nullptr) == records[i]["value"].get<double>());
    CHECK(std::stoi(fields[6]) == records[i]["restarts"].get<int>());
    ++i;
  }
  CHECK(i == records.size());
}

TEST_CASE("sweep-p orders records by p and validates the range") {
  const RunResult r = run("sweep-p --graph " + path_of("star8.json") +
                          " --vertex z1 --p-from 2 --p-to 4 --p-step 1 --restarts 24 --seed 2");
  REQUIRE(r.exit_code == 0);
  const json records = json::parse(r.output);
  REQUIRE(records.size() == 3);
  CHECK(records[0]["p"] == 2.0);
  CHECK(records[2]["p"] == 4.0);
  // D = 8 > 2p+1 at p = 2 and p = 3, but not at p = 4: the sign flips.
  CHECK(records[0]["value"].get<double>() < 0.0);
  CHECK(records[2]["value"].get<double>() > 0.0);

  CHECK(run("sweep-p --graph " + path_of("p3.json") +
            " --vertex v0 --p-from 3 --p-to 2 --p-step 0.5")
            .exit_code == 2);
}

TEST_CASE("a single-point sweep matches curvature") {
  const std::string tail = " --vertex z1 --restarts 16 --seed 9";
  const RunResult sweep = run("sweep-p --graph " + path_of("star3.json") +
                              " --p-from 2 --p-to 2 --p-step 1" + tail);
  const RunResult direct =
      run("curvature --graph " + path_of("star3.json") + " --p 2" + tail);
  REQUIRE(sweep.exit_code == 0);
  REQUIRE(direct.exit_code == 0);
  CHECK(strip_wall_time(json::parse(sweep.output)).dump() ==
        strip_wall_time(json::parse(direct.output)).dump());
}

TEST_CASE("product-gap default witness") {
  SUBCASE("p=3 on K2 x K2 gives -1/12") {
    const RunResult r = run("product-gap --graph1 " + path_of("k2.json") + " --graph2 " +
                            path_of("k2.json") + " --x v0 --y v0 --p 3");
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.output);
    CHECK(std::abs(out["gap"].get<double>() - (-1.0 / 12.0)) <= 1e-12);
    CHECK(out["per_pair"].size() == 1);
  }
  SUBCASE("p=2 gives +0.5 and the quarter-sum check passes") {
    const RunResult r = run("product-gap --graph1 " + path_of("k2.json") + " --graph2 " +
                            path_of("k2.json") + " --x v0 --y v0 --p 2");
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.output);
    CHECK(std::abs(out["gap"].get<double>() - 0.5) <= 1e-12);
    CHECK(out["quarter_sum_matches"] == true);
  }
}

TEST_CASE("product-gap with a user function") {
  std::ofstream(path_of("fn.json")) << R"({"values": {
    "v0|v0": 0.0, "v1|v0": 1.0, "v0|v1": 0.0, "v1|v1": 2.0}})";
  const RunResult good =
      run("product-gap --graph1 " + path_of("k2.json") + " --graph2 " + path_of("k2.json") +
          " --x v0 --y v0 --p 3 --function " + path_of("fn.json"));
  REQUIRE(good.exit_code == 0);
  CHECK(std::abs(json::parse(good.output)["gap"].get<double>() - (-1.0 / 12.0)) <= 1e-12);

  std::ofstream(path_of("partial.json")) << R"({"values": {"v0|v0": 0.0}})";
  const RunResult bad =
      run("product-gap --graph1 " + path_of("k2.json") + " --graph2 " + path_of("k2.json") +
          " --x v0 --y v0 --p 3 --function " + path_of("partial.json"));
  CHECK(bad.exit_code == 2);
}

TEST_CASE("verify quick succeeds and reports a summary") {
  const RunResult r = run("verify --level quick");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("[PASS]") != std::string::npos);
  const std::size_t brace = r.output.find("{");
  REQUIRE(brace != std::string::npos);
  const json summary = json::parse(r.output.substr(brace));
  CHECK(summary["passed"] == true);
  CHECK(summary["level"] == "quick");
  CHECK(summary["checks"].size() >= 5);
}
