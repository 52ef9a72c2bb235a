#include <catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "sg/cli.hpp"

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = sg::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string tmp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "sg_cli_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string write_tmp(const std::string& name, const std::string& text) {
  const std::string path = tmp_file(name);
  sg::io::write_file(path, text);
  return path;
}

const char* kFourPoints =
    R"({"field":"C","backend":"float",
        "points":[[[0,0],[0,0]],[[1,0],[0,0]],[[2,0],[0,0]],[[0,0],[1,0]]]})";

}  // namespace

TEST_CASE("gen hesse then check-sg passes", "[cli]") {
  const std::string data = tmp_file("hesse.json");
  const auto g = run_cli({"gen", "hesse", "--output", data});
  REQUIRE(g.code == 0);
  REQUIRE(g.err.empty());

  const auto r = run_cli({"check-sg", data});
  REQUIRE(r.code == 0);
  const auto rep = sg::io::json::parse(r.out);
  CHECK(rep["schema_version"] == 1);
  CHECK(rep["command"] == "check-sg");
  CHECK(rep["input_digest"] == sg::io::fnv1a64_hex(sg::io::read_file(data)));
  CHECK(rep["seed"].is_null());
  CHECK(rep["field"] == "C");
  CHECK(rep["backend"] == "exact");
  CHECK(rep["sqrt_m"] == 3);
  CHECK(rep["tol_rel"].is_null());
  CHECK(rep["verdict"] == "pass");
  CHECK(rep["bound"] == 5);
  CHECK(rep["witness"]["count"] == 3);
  CHECK(rep["witness"]["dist_sq"] == "1/7");
  CHECK(rep["witness"]["angles_pass"] == true);
  CHECK(rep["min_line"]["count"] == 3);
  CHECK(rep["histogram"] == sg::io::json::parse(R"({"3": 12})"));
  CHECK(rep["timing_ms"].is_null());
}

TEST_CASE("reports are byte-identical across runs", "[cli]") {
  const std::string data = write_tmp("four.json", kFourPoints);
  const auto r1 = run_cli({"check-sg", data});
  const auto r2 = run_cli({"check-sg", data});
  REQUIRE(r1.code == 0);
  CHECK(r1.out == r2.out);

  const auto t = run_cli({"check-sg", data, "--timing"});
  REQUIRE(t.code == 0);
  CHECK(sg::io::json::parse(t.out)["timing_ms"].is_number());
}

TEST_CASE("enumerate prints the histogram", "[cli]") {
  const std::string data = write_tmp("four.json", kFourPoints);
  const auto r = run_cli({"enumerate", data});
  REQUIRE(r.code == 0);
  CHECK(r.out == "{\n  \"2\": 3,\n  \"3\": 1\n}\n");

  const auto t = run_cli({"enumerate", data, "--format", "text"});
  REQUIRE(t.code == 0);
  CHECK(t.out == "2: 3\n3: 1\n");

  const std::string full = tmp_file("four_report.json");
  const auto f = run_cli({"enumerate", data, "--output", full});
  REQUIRE(f.code == 0);
  const auto rep = sg::io::json::parse(sg::io::read_file(full));
  CHECK(rep["command"] == "enumerate");
  CHECK(rep["lines"].size() == 4);
  CHECK(rep["min_line"]["count"] == 2);
  CHECK(rep["min_line"]["members"] == sg::io::json::parse("[0, 3]"));
  CHECK(rep["histogram"] == sg::io::json::parse(r.out));
}

TEST_CASE("collinear input is a hypothesis violation", "[cli]") {
  const std::string data = write_tmp(
      "collinear.json",
      R"({"field":"C","backend":"float","points":[[[0,0],[0,0]],[[1,0],[0,0]],[[2,0],[0,0]]]})");
  const auto r = run_cli({"check-sg", data});
  CHECK(r.code == 2);
  const auto rep = sg::io::json::parse(r.out);
  CHECK(rep["verdict"] == "hypothesis-violation");
  CHECK(rep.contains("error"));

  const std::string two = write_tmp(
      "two.json", R"({"field":"C","backend":"float","points":[[[0,0],[0,0]],[[1,0],[0,0]]]})");
  CHECK(run_cli({"check-sg", two}).code == 2);
}

TEST_CASE("parse and I/O failures exit 3", "[cli]") {
  const std::string bad = write_tmp("bad.json", "{\"field\": \"C\",\n  \"backend\": }");
  const auto r = run_cli({"check-sg", bad});
  CHECK(r.code == 3);
  CHECK(r.err.find("line 2") != std::string::npos);

  const auto missing = run_cli({"check-sg", tmp_file("does_not_exist.json")});
  CHECK(missing.code == 3);
  CHECK(!missing.err.empty());
}

TEST_CASE("quaternion datasets report the 24 bound", "[cli]") {
  const std::string data = tmp_file("hpts.json");
  REQUIRE(run_cli({"gen", "random_points", "--field", "H", "--backend", "float", "--n", "12",
                   "--seed", "3", "--output", data})
              .code == 0);
  const auto r = run_cli({"check-sg", data});
  REQUIRE(r.code == 0);
  const auto rep = sg::io::json::parse(r.out);
  CHECK(rep["field"] == "H");
  CHECK(rep["bound"] == 24);
  CHECK(rep["witness"]["note"].get<std::string>().find("kissing") != std::string::npos);
}

TEST_CASE("near-collinear data survives the default tolerance", "[cli]") {
  const std::string data = tmp_file("near.json");
  REQUIRE(run_cli({"gen", "near_collinear", "--backend", "float", "--n", "8", "--eps", "1e-7",
                   "--seed", "11", "--output", data})
              .code == 0);
  const auto r = run_cli({"check-sg", data});
  CHECK(r.code == 0);
  CHECK(sg::io::json::parse(r.out)["verdict"] == "pass");
}

TEST_CASE("generated grids pass the product bound", "[cli]") {
  const auto r = run_cli({"grid", "--gen", "random_grid", "--field", "C", "--a", "4", "--b", "4",
                          "--seed", "7"});
  REQUIRE(r.code == 0);
  const auto rep = sg::io::json::parse(r.out);
  CHECK(rep["verdict"] == "pass");
  CHECK(rep["witness_count"] == 2);
  CHECK(rep["seed"] == 7);
  CHECK(rep["gen_params"]["a"] == 4);
  CHECK(rep["a_size"] == 4);

  const auto r2 = run_cli({"grid", "--gen", "random_grid", "--field", "C", "--a", "4", "--b", "4",
                           "--seed", "7"});
  CHECK(r2.out == r.out);
}

TEST_CASE("grid from a file", "[cli]") {
  const std::string data = write_tmp("grid22.json",
                                     R"({"field":"C","backend":"exact","sqrt_m":0,
          "a":[["0","0"],["1","0"]],"b":[["0","0"],["0","1"]]})");
  const auto r = run_cli({"grid", data});
  REQUIRE(r.code == 0);
  const auto rep = sg::io::json::parse(r.out);
  CHECK(rep["verdict"] == "pass");
  CHECK(rep["witness_count"] == 2);
  CHECK(rep["witness_vertical"] == true);
  CHECK(rep["projections"]["status"] == "not-applicable");
  CHECK(rep["seed"].is_null());
}

TEST_CASE("grid from factor files", "[cli]") {
  const std::string fa = write_tmp(
      "fa.json", R"({"field":"C","backend":"exact","sqrt_m":0,"values":[["0","0"],["1","0"]]})");
  const std::string fb = write_tmp(
      "fb.json", R"({"field":"C","backend":"exact","sqrt_m":0,"values":[["0","0"],["0","1"]]})");
  const auto r = run_cli({"grid", "--a-file", fa, "--b-file", fb});
  REQUIRE(r.code == 0);
  CHECK(sg::io::json::parse(r.out)["verdict"] == "pass");

  const std::string fbf =
      write_tmp("fbf.json", R"({"field":"C","backend":"float","values":[[0,0],[0,1]]})");
  const auto mixed = run_cli({"grid", "--a-file", fa, "--b-file", fbf});
  CHECK(mixed.code == 2);
  CHECK(mixed.err.find("backend") != std::string::npos);

  CHECK(run_cli({"grid", "--a-file", fa}).code == 2);
  CHECK(run_cli({"grid"}).code == 2);

  const std::string grid_file = write_tmp("grid_dup.json",
                                          R"({"field":"C","backend":"exact","sqrt_m":0,
           "a":[["0","0"],["1","0"]],"b":[["0","0"],["0","1"]]})");
  CHECK(run_cli({"grid", grid_file, "--gen", "random_grid"}).code == 2);
}

TEST_CASE("generator parameter errors", "[cli]") {
  CHECK(run_cli({"gen", "random_points", "--n", "2"}).code == 2);
  CHECK(run_cli({"gen", "simplex4", "--field", "C"}).code == 2);
  CHECK(run_cli({"gen", "hesse", "--backend", "float"}).code == 2);
  CHECK(run_cli({"gen", "hesse", "--sqrt-m", "5"}).code == 2);
  CHECK(run_cli({"gen", "frobnicate"}).code == 2);
  CHECK(run_cli({"grid", "--gen", "random_grid", "--a", "1", "--b", "4"}).code == 2);
}

TEST_CASE("gen simplex4 emits a quaternion scalar set", "[cli]") {
  const auto r = run_cli({"gen", "simplex4"});
  REQUIRE(r.code == 0);
  const auto j = sg::io::json::parse(r.out);
  CHECK(j["field"] == "H");
  CHECK(j["backend"] == "exact");
  CHECK(j["sqrt_m"] == 5);
  REQUIRE(j["values"].size() == 5);
  CHECK(j["values"][4][0] == "1/4+1/4r");
}

TEST_CASE("text format renders dotted keys", "[cli]") {
  const std::string data = write_tmp("four.json", kFourPoints);
  const auto r = run_cli({"check-sg", data, "--format", "text"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("verdict: \"pass\"\n") != std::string::npos);
  CHECK(r.out.find("witness.point_index: ") != std::string::npos);
}

TEST_CASE("usage errors and help", "[cli]") {
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({}).code == 2);
  const auto unknown = run_cli({"check-sg", "x.json", "--bogus"});
  CHECK(unknown.code == 2);
  CHECK(!unknown.err.empty());
  CHECK(run_cli({"enumerate"}).code == 2);
  CHECK(run_cli({"check-sg", "x.json", "--format", "yaml"}).code == 2);
  CHECK(run_cli({"check-sg", "x.json", "--tol", "-1"}).code == 2);
}
