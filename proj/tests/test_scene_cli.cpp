#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "kinval/cli.hpp"
#include "kinval/scene.hpp"

using namespace kinval;

namespace {

const std::string kData = KINVAL_DATA_DIR;

const char* kMinimal = R"({
  "seed": 3,
  "shapes": {"sq": [[[0, 0], [1, 0], [1, 1], [0, 1]]]},
  "forms": {"chi": {"name": "lk0", "params": []}},
  "families": {"f": {"plateau": {"R0": 5, "R1": 6, "c": 1}, "grid": [16, 4, 4], "seed": 9}},
  "kinematic": {"A": "sq", "X": "sq", "family": "f", "valuation": "chi"}
})";

std::string scene_error(const std::string& text) {
  try {
    parse_scene(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SceneError);
    return e.what();
  }
  FAIL("scene was accepted");
  return {};
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "kinval_test_" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("parse_scene accepts a minimal scene") {
  const Scene s = parse_scene(kMinimal);
  CHECK(s.seed == 3);
  CHECK(s.shapes.size() == 1);
  CHECK(s.family("f").grid == std::array<int, 3>{16, 4, 4});
  CHECK(s.family("f").seed == 9);
  REQUIRE(s.kinematic);
  CHECK(s.kinematic->valuation == "chi");
  CHECK(s.hash == parse_scene(kMinimal).hash);
  CHECK(parse_scene(kMinimal, 4).seed == 4);
}

TEST_CASE("parse_scene reports problems") {
  CHECK(scene_error(R"({"seed": 1, "shapes": {"a": [[[0,0],[1,0],[1,1]]], "a": [[[0,0],[1,0],[0,1]]]}})")
            .find("duplicate key 'a' in 'shapes'") != std::string::npos);
  CHECK(scene_error(R"({"seed": 1, "shapes": {"h": [[[0,0],[3,0],[3,3],[0,3]], [[1,1],[2,1],[2,2],[1,2]]]}})")
            .find("orientation error in loop 1") != std::string::npos);
  CHECK(scene_error("{\"seed\": 1,\n\"shapes\": {\n\"a\": [1, }}").find("line 3") != std::string::npos);
  CHECK(scene_error(R"({"seed": 1, "forms": {"f": {"name": "nope"}}})").find("nope") != std::string::npos);
  CHECK(scene_error(R"({"shapes": {}})").find("seed") != std::string::npos);
  CHECK(scene_error(R"({"seed": 1, "kinematic": {"A": "a", "X": "b", "family": "f"}})").find("unknown shape 'a'") !=
        std::string::npos);
  CHECK(scene_error(R"({"seed": 1, "families": {"f": {"plateau": {"R0": 2, "R1": 1}}}})").find("R0 < R1") !=
        std::string::npos);
}

TEST_CASE("point sets and built-in shapes in scenes") {
  const Scene s = parse_scene(R"({"seed": 1, "shapes": {"p": {"points": [[0,0],[1,2]]}, "L": {"builtin": "L"}}})");
  CHECK(std::get<PointSet>(s.shape("p")).points.size() == 2);
  CHECK(s.region("L").vertex_count() == 6);
  CHECK_THROWS_AS(s.region("p"), Error);
}

TEST_CASE("cli intrinsic and euler") {
  const Run r = cli({"intrinsic", "--shape", "square"});
  CHECK(r.code == 0);
  CHECK(r.out.find("square V0=1 V1=2 V2=1") != std::string::npos);
  const Run m = cli({"euler", "--method", "morse", "--shape", "L", "--direction", "-1,-0.3"});
  CHECK(m.code == 0);
  CHECK(m.out.find("L chi=1") != std::string::npos);
  CHECK(cli({"euler", "--method", "cycle", "--shape", "holed"}).out.find("holed chi=0") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"intrinsic", "--shape", "nonexistent"}).code == 2);
  CHECK(cli({"euler", "--method", "morse", "--shape", "square", "--direction", "1,0"}).code == 2);
  const std::string bad = write_temp("bad.json", "{\"seed\": 1,\n \"shapes\": [}");
  const Run r = cli({"intrinsic", "--scene", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
  std::remove(bad.c_str());

  std::string strict = kMinimal;
  strict.replace(strict.find("\"seed\": 3,"), 10, "\"seed\": 3, \"quadrature\": {\"rel_tol\": 1e-18, \"max_panels\": 2},");
  strict.replace(strict.find("\"R0\": 5, \"R1\": 6"), 16, "\"R0\": 0.5, \"R1\": 1");
  const std::string path = write_temp("strict.json", strict);
  CHECK(cli({"kinematic", "--mode", "forms", "--scene", path}).code == 3);
  std::remove(path.c_str());

  CHECK(cli({"check", "variation", "--scene", kData + "/local.json", "--grid", "2,1,1"}).code == 1);
}

TEST_CASE("cli pkf check on the squares scene") {
  const Run r = cli({"check", "pkf", "--scene", kData + "/squares.json", "--mc-samples", "200000"});
  CHECK(r.code == 0);
  CHECK(r.out.find("direct chi = 28.566370614") != std::string::npos);
}

TEST_CASE("reports are deterministic apart from wall time") {
  auto body = [](const std::string& path) {
    std::ifstream in(path);
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j.contains("wall_time_s"));
    j.erase("wall_time_s");
    return j.dump();
  };
  const std::vector<std::string> args{"check", "additivity", "--scene", kData + "/local.json", "--out"};
  auto a = args, b = args;
  a.push_back("kinval_test_a.json");
  b.push_back("kinval_test_b.json");
  REQUIRE(cli(a).code == 0);
  REQUIRE(cli(b).code == 0);
  const std::string ja = body("kinval_test_a.json");
  CHECK(ja == body("kinval_test_b.json"));
  const nlohmann::json j = nlohmann::json::parse(ja);
  CHECK(j["calibration"]["joint_arc_sign"] == 1);
  CHECK(j["calibration"]["sigma_orientation"] == 1);
  std::ifstream csv("kinval_test_a.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "name,lhs,rhs,abs_error,rel_error,tolerance,pass");
  for (const char* f : {"kinval_test_a.json", "kinval_test_b.json", "kinval_test_a.csv", "kinval_test_b.csv"})
    std::remove(f);
}
