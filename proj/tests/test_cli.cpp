#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sagraph/cli.hpp"
#include "sagraph/io.hpp"

using namespace sagraph;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "sa-graph-tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("generate, read back and validate") {
  const std::string path = scratch("g51.json");
  const auto gen = call({"generate", "--family", "ex51", "--alpha", "1", "--beta", "0.5", "--rows", "12", "--out", path});
  REQUIRE(gen.code == 0);
  const json report = json::parse(gen.out);
  const auto val = call({"validate", path});
  CHECK(val.code == 0);
  // The graph file's embedded family regenerates to the same digest.
  const auto chk = call({"check", "--criterion", "thm2", path});
  CHECK(chk.code == 0);
  CHECK(json::parse(chk.out)["manifest"]["input_digests"][path] == report["digest"]);
}

TEST_CASE("negative measure is an input error listed by validate") {
  const std::string path = scratch("bad.json");
  std::ofstream(path) << R"({"vertices":[{"id":"a","mu":-1.0},{"id":"b","mu":1.0}],
                             "edges":[{"u":"a","v":"b","b":1.0}]})";
  const auto r = call({"validate", path});
  CHECK(r.code == 3);
  CHECK(r.out.find("non-positive measure") != std::string::npos);
  CHECK(r.err.find("non-positive measure") != std::string::npos);
}

TEST_CASE("usage errors exit with 3") {
  CHECK(call({}).code == 3);
  CHECK(call({"frobnicate"}).code == 3);
  const auto r = call({"check", "--criterion", "thm1", "--family", "ex51", "--bogus"});
  CHECK(r.code == 3);
  CHECK(r.err.find("--bogus") != std::string::npos);
  CHECK(call({"check", "--criterion", "thm7", "--family", "ex51"}).code == 3);
  CHECK(call({"check", "--criterion", "thm1", "--family", "ex51", "--beta", "0.9"}).code == 3);
  CHECK(call({"check", "--criterion", "thm1", "--family", "ex51", "--C", "lots"}).code == 3);
  CHECK(call({"validate", scratch("missing.json")}).code == 3);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("check exit codes follow the verdict") {
  const auto pass = call({"check", "--criterion", "thm3", "--family", "ex52", "--rows", "200"});
  CHECK(pass.code == 0);
  CHECK(json::parse(pass.out)["verdict"] == "Pass");
  CHECK(call({"check", "--criterion", "thm3", "--family", "ex51", "--rows", "10"}).code == 1);
  CHECK(call({"check", "--criterion", "thm1", "--family", "ex52", "--rows", "10"}).code == 2);
}

TEST_CASE("reports are byte-identical across runs and carry a manifest") {
  const std::vector<std::string> args{"--timestamp", "2026-01-01T00:00:00Z", "check", "--criterion", "golenia",
                                      "--family", "ex51", "--beta", "0.6", "--n-max", "500"};
  const auto a = call(args);
  const auto b = call(args);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  CHECK(j["manifest"]["timestamp"] == "2026-01-01T00:00:00Z");
  CHECK(j["manifest"]["command"] == "check");
  CHECK(j["manifest"]["input_digests"].size() == 1);
}

TEST_CASE("verify reports pass counts") {
  const auto r = call({"verify", "--suite", "lemma21", "--seed", "7", "--instances", "30"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["passed"] == 30);
  CHECK(j["failed"] == 0);
  CHECK(j.contains("worst_rel_err"));
}

TEST_CASE("boundary prints lower, upper and assumptions") {
  const auto r = call({"boundary", "--family", "ex51", "--alpha", "1", "--beta", "0.5", "--rows", "30", "--vertex", "4,1"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["lower"].get<double>() <= j["upper"].get<double>());
  CHECK(j["assumptions"].is_array());
}

TEST_CASE("spectrum dump has one triplet per stored entry") {
  const std::string dump = scratch("s.txt");
  const auto r = call({"spectrum", "--family", "ex52", "--rows", "4", "--symmetrized-dump", dump});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["eigenvalues"].size() == 10);
  std::ifstream in(dump);
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    int row, col;
    double re, im;
    CHECK(static_cast<bool>(fields >> row >> col >> re >> im));
    ++rows;
  }
  // 10 diagonal entries plus both orientations of 1*2 + 2*3 + 3*4 = 20 edges.
  CHECK(rows == 50);
}

TEST_CASE("covering prints cells and W_e") {
  const auto r = call({"covering", "--family", "ex51", "--rows", "4"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["cells"].size() == 3);
  CHECK(j["W_e"].size() == 7);
}

TEST_CASE("probe lists the truncations") {
  const auto r = call({"probe", "--family", "ex52", "--rows-list", "5,10"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["lambda_min"].size() == 2);
}
