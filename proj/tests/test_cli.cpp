#include "doctest.h"
#include "turanlab/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

using namespace turanlab;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("turanlab_cli_" + std::to_string(counter_++) + "_" +
                                         std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return (path_ / name).string();
  }
  fs::path path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

const char* kDisk = R"({"kind": "disk", "center": [0, 0], "radius": 1})";
const char* kSquare = R"({"kind": "polygon", "vertices": [[0,0],[1,0],[1,1],[0,1]]})";
const char* kThin = R"({"kind": "polygon", "vertices": [[-1,-0.05],[1,-0.05],[1,0.05],[-1,0.05]]})";
const char* kArc = R"({"kind": "boundary_arclength"})";
const char* kArea = R"({"kind": "area"})";

}  // namespace

TEST_CASE("geometry") {
  TempDir t;
  const Run sq = run({"geometry", "--body", t.write("sq.json", kSquare)});
  REQUIRE(sq.code == kExitOk);
  const json j = json::parse(sq.out);
  CHECK(j["d"].get<double>() == doctest::Approx(1.41421356));
  CHECK(j["w"].get<double>() == doctest::Approx(1.0));

  const Run d = run({"geometry", "--body", t.write("d.json", R"({"kind":"disk","center":[1,2],"radius":3})")});
  const json k = json::parse(d.out);
  CHECK(k["d"].get<double>() == doctest::Approx(6.0));
  CHECK(k["w"].get<double>() == doctest::Approx(6.0));

  const Run bad = run({"geometry", "--body", t.write("bad.json", "{\n  \"kind\": \"disk\",\n  center\n}")});
  CHECK(bad.code == kExitInput);
  CHECK(bad.err.find("bad.json:3:") != std::string::npos);
  CHECK(bad.err.find("JSON parse error") != std::string::npos);

  CHECK(run({"geometry", "--body", (t.path() / "missing.json").string()}).code == kExitInput);
  CHECK(run({"geometry", "--body", t.write("nc.json", R"({"kind":"polygon","vertices":[[0,0],[2,0],[1,0.2],[1,1]]})")}).code ==
        kExitInput);
}

TEST_CASE("constants") {
  const Run c1 = run({"constants", "--mode", "cor1", "--q", "inf"});
  REQUIRE(c1.code == kExitOk);
  const auto rows = csv(c1.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][1] == "constant");
  CHECK(std::stod(rows[1][1]) == 121.0);

  const Run th = run({"constants", "--mode", "theorem", "--delta", "0.5", "--theta", "0.25", "--q", "1"});
  REQUIRE(th.code == kExitOk);
  CHECK(std::stod(csv(th.out)[1][3]) == doctest::Approx(2178.0));

  const Run c2 = run({"constants", "--mode", "cor2", "--q", "0.5,2,16"});
  REQUIRE(c2.code == kExitOk);
  const auto r2 = csv(c2.out);
  REQUIRE(r2.size() == 4);
  for (std::size_t i = 1; i < r2.size(); ++i) CHECK(r2[i][5] == "true");

  CHECK(run({"constants", "--mode", "nope", "--q", "2"}).code == kExitInput);
  CHECK(run({"constants", "--mode", "cor1", "--q", "-1"}).code == kExitInput);
}

TEST_CASE("parse_q and csv_number") {
  CHECK(std::isinf(parse_q("inf")));
  CHECK(std::isinf(parse_q("Infinity")));
  CHECK(parse_q("2.5") == 2.5);
  CHECK_THROWS(parse_q("0"));
  CHECK_THROWS(parse_q("abc"));
  CHECK(csv_number(0.1) == "0.10000000000000001");
  CHECK(csv_number(INFINITY) == "inf");
}

TEST_CASE("verify") {
  TempDir t;
  const std::string disk = t.write("disk.json", kDisk), arc = t.write("arc.json", kArc);
  const Run a = run({"verify", "--body", disk, "--measure", arc, "--delta", "0.5", "--theta", "0.25", "--q", "inf", "--n", "auto"});
  REQUIRE(a.code == kExitOk);
  const json ja = json::parse(a.out);
  CHECK(ja["result"] == "PASS");
  CHECK(ja["slack"].get<double>() < 1.0);
  CHECK(ja["branch"] == "large_width");
  CHECK(ja["conditions"]["ncond1"].is_null());

  const std::string thin = t.write("thin.json", kThin), area = t.write("area.json", kArea);
  const Run b = run({"verify", "--body", thin, "--measure", area, "--delta", "0.2", "--theta", "0.19", "--q", "2", "--n", "auto"});
  REQUIRE(b.code == kExitOk);
  const json jb = json::parse(b.out);
  CHECK(jb["result"] == "PASS");
  CHECK(jb["branch"] == "small_width");
  CHECK(jb["conditions"]["l503"] == true);

  const Run c = run({"verify", "--body", thin, "--measure", area, "--delta", "0.2", "--theta", "0.19", "--q", "2", "--n", "100"});
  CHECK(c.code == kExitInput);
  CHECK(c.err.find("condition (ncondTh) violated") != std::string::npos);

  const Run cor = run({"verify", "--body", disk, "--measure", arc, "--mode", "corollary", "--q", "2", "--n", "auto"});
  CHECK(cor.code == kExitOk);

  CHECK(run({"verify", "--body", disk, "--measure", arc, "--q", "2", "--n", "auto"}).code == kExitInput);
  CHECK(run({"verify", "--body", disk, "--measure", arc, "--delta", "0.5", "--theta", "0.25", "--q", "2", "--n", "x"}).code ==
        kExitInput);
}

TEST_CASE("estimate") {
  TempDir t;
  const std::string disk = t.write("disk.json", kDisk), arc = t.write("arc.json", kArc);
  const Run r = run({"estimate", "--body", disk, "--measure", arc, "--n", "2", "--q", "inf", "--starts", "6", "--iters", "600",
                     "--oracle", "--grid", "16"});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["best_ratio"].get<double>() == doctest::Approx(1.0).epsilon(0.02));
  CHECK(j["oracle"]["ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(j.contains("relative_gap"));

  CHECK(run({"estimate", "--body", disk, "--measure", arc, "--n", "0"}).code == kExitInput);
  CHECK(run({"estimate", "--body", disk, "--measure", t.write("m.json", R"({"kind":"weird"})"), "--n", "2"}).code ==
        kExitInput);
}

TEST_CASE("sweep") {
  TempDir t;
  t.write("disk.json", kDisk);
  t.write("arc.json", kArc);
  const std::string spec = t.write("s.json", R"({"body": "disk.json", "measure": "arc.json", "q": ["inf"],
      "n": [4, 8, 16, 32, 64], "poly": "witness", "delta": 0.5, "theta": 0.25, "out": "out/disk.csv"})");
  fs::create_directories(t.path() / "out");
  const Run r = run({"sweep", "--spec", spec});
  REQUIRE(r.code == kExitOk);
  std::ifstream in(t.path() / "out" / "disk.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto rows = csv(ss.str());
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"n", "q", "ratio", "bound", "slack", "status"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][2]) == doctest::Approx(std::stoi(rows[i][0]) / 2.0).epsilon(1e-6));
    CHECK(rows[i][5] == "PASS");
  }
  CHECK(fs::exists(t.path() / "out" / "disk_qinf_ratio.dat"));
  CHECK(fs::exists(t.path() / "out" / "disk_qinf_bound.dat"));

  const std::string seg = t.write("seg.json", R"({"body": {"kind": "polygon", "vertices": [[-1,0],[1,0]]},
      "measure": {"kind": "boundary_arclength"}, "q": ["inf"], "n": [100, 200, 400, 800], "poly": "symmetric",
      "delta": 0.5, "theta": 0.25})");
  const Run s = run({"sweep", "--spec", seg});
  REQUIRE(s.code == kExitOk);
  const auto seg_rows = csv(s.out);
  REQUIRE(seg_rows.size() == 5);
  for (std::size_t i = 1; i < seg_rows.size(); ++i) {
    const auto& row = seg_rows[i];
    CHECK(row[5] == "zero width");
    CHECK(std::stod(row[2]) / std::sqrt(std::stod(row[0])) == doctest::Approx(1.0 / std::sqrt(std::exp(1.0))).epsilon(0.05));
  }

  const std::string empty = t.write("e.json", R"({"body": "disk.json", "measure": "arc.json", "q": [2], "n": []})");
  CHECK(run({"sweep", "--spec", empty}).code == kExitInput);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitInput);
  CHECK(run({"--help"}).code == kExitOk);
}
