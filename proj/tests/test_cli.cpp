// Copyright 2026 The mbsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mbsynth/cli.hpp"

using namespace mbsynth;
using Catch::Matchers::ContainsSubstring;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  TempDir() {
    path = fs::temp_directory_path() /
           ("mbsynth_cli_" + std::to_string(std::hash<std::string>{}(
                                 Catch::getResultCapture().getCurrentTestName())));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  fs::path path;
};

void write(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const CliConfig& cfg) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_command(cfg, out, err);
  return {code, out.str(), err.str()};
}

CliConfig decompose(const std::string& scheme) {
  CliConfig c;
  c.command = "decompose";
  c.scheme = scheme;
  return c;
}

}  // namespace

TEST_CASE("decompose the tritter from a file", "[cli]") {
  TempDir dir;
  write(dir.file("u3.json"), serialize_matrix(tritter_matrix()));
  CliConfig cfg = decompose("clements");
  cfg.input_path = dir.file("u3.json");
  cfg.output_path = dir.file("c.json");
  const Run r = run(cfg);
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("reconstruction distance"));
  CHECK_THAT(r.out, ContainsSubstring("n_bs=6 n_ps=9"));
  const Circuit c = deserialize(read(dir.file("c.json")));
  CHECK(distance_up_to_global_phase(evaluate(c), tritter_matrix()).distance <= 1e-8);
}

TEST_CASE("mbs3 on a 4x4 matrix is a dimension error", "[cli]") {
  TempDir dir;
  write(dir.file("u4.json"), serialize_matrix(haar_random_unitary(4, 1)));
  CliConfig cfg = decompose("mbs3");
  cfg.input_path = dir.file("u4.json");
  const Run r = run(cfg);
  CHECK(r.code == 2);
  CHECK_THAT(r.err, ContainsSubstring("3x3"));
}

TEST_CASE("bwc on a random 6x6", "[cli]") {
  CliConfig cfg = decompose("bwc");
  cfg.random_n = 6;
  cfg.seed = 1;
  const Run r = run(cfg);
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("n_fixed_mbs=5"));
  CHECK_THAT(r.out, ContainsSubstring("n_bs=5"));
  CHECK_THAT(r.out, ContainsSubstring("n_phase_masks=8"));
  // the printed circuit is valid JSON
  const std::string json = r.out.substr(r.out.find("circuit:\n") + 9);
  CHECK(deserialize(json).width() == 6);
}

TEST_CASE("every scheme decomposes through the CLI", "[cli]") {
  for (const auto& [scheme, n] : std::vector<std::pair<std::string, int>>{
           {"reck", 5}, {"clements", 5}, {"u2", 2}, {"mbs3", 3}, {"bwc", 4}}) {
    CliConfig cfg = decompose(scheme);
    cfg.random_n = n;
    cfg.seed = 3;
    INFO(scheme);
    CHECK(run(cfg).code == 0);
  }
}

TEST_CASE("non-unitary input reports the defect", "[cli]") {
  TempDir dir;
  ComplexMatrix m = ComplexMatrix::Identity(3, 3);
  m(0, 0) = 1.01;
  write(dir.file("bad.json"), serialize_matrix(m));
  CliConfig cfg = decompose("clements");
  cfg.input_path = dir.file("bad.json");
  const Run r = run(cfg);
  CHECK(r.code == 3);
  CHECK_THAT(r.err, ContainsSubstring("0.0201"));
}

TEST_CASE("usage and parse failures", "[cli]") {
  TempDir dir;
  write(dir.file("junk.json"), "{\"n\": 2, \"re\": [[1, 0], [0, 1]]");
  CliConfig cfg = decompose("clements");
  cfg.input_path = dir.file("junk.json");
  Run r = run(cfg);
  CHECK(r.code == 2);
  CHECK_THAT(r.err, ContainsSubstring("byte"));

  cfg.input_path = dir.file("missing.json");
  CHECK(run(cfg).code == 2);

  cfg = decompose("dft");
  cfg.random_n = 3;
  CHECK(run(cfg).code == 2);

  cfg = decompose("clements");
  CHECK(run(cfg).code == 2);

  cfg.random_n = 3;
  cfg.tolerance = 0.0;
  CHECK(run(cfg).code == 2);

  cfg = decompose("bwc");
  cfg.random_n = 2;
  CHECK(run(cfg).code == 2);

  CliConfig other;
  other.command = "frobnicate";
  CHECK(run(other).code == 2);
}

TEST_CASE("tolerance failures exit with 4", "[cli]") {
  CliConfig cfg = decompose("clements");
  cfg.random_n = 12;
  cfg.tolerance = 1e-30;
  CHECK(run(cfg).code == 4);
}

TEST_CASE("verify", "[cli]") {
  TempDir dir;
  CliConfig dec = decompose("mbs3");
  dec.random_n = 3;
  dec.seed = 5;
  dec.output_path = dir.file("c.json");
  dec.save_input_path = dir.file("u.json");
  REQUIRE(run(dec).code == 0);
  // everything written re-parses
  CHECK(parse_matrix(read(dir.file("u.json"))).rows() == 3);

  CliConfig v;
  v.command = "verify";
  v.circuit_path = dir.file("c.json");
  v.input_path = dir.file("u.json");
  Run r = run(v);
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("distance"));

  write(dir.file("other.json"), serialize_matrix(haar_random_unitary(3, 77)));
  v.input_path = dir.file("other.json");
  CHECK(run(v).code == 4);

  write(dir.file("u4.json"), serialize_matrix(haar_random_unitary(4, 1)));
  v.input_path = dir.file("u4.json");
  CHECK(run(v).code == 2);

  write(dir.file("broken.json"), R"({"width": 3, "elements": [{"kind": "ps", "mode": 0, "phase": 1}]})");
  v.circuit_path = dir.file("broken.json");
  v.input_path = dir.file("u.json");
  r = run(v);
  CHECK(r.code == 2);
  CHECK_THAT(r.err, ContainsSubstring("/elements/0/mode"));
}

TEST_CASE("report", "[cli]") {
  TempDir dir;
  CliConfig cfg;
  cfg.command = "report";
  cfg.n_min = 2;
  cfg.n_max = 8;
  cfg.csv_path = dir.file("r.csv");
  const Run r = run(cfg);
  CHECK(r.code == 0);
  const std::string csv = read(dir.file("r.csv"));
  CHECK(csv.rfind("N,scheme,n_bs,n_ps,n_phase_masks,n_fixed_mbs\n", 0) == 0);
  // reck + clements for 2..8, bwc for 3..8, mbs3 at 3
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 14 + 6 + 1);
  CHECK_THAT(csv, ContainsSubstring("\n8,clements,56,64,0,0\n"));
  CHECK_THAT(csv, ContainsSubstring("\n8,bwc,7,"));
  CHECK_THAT(csv, ContainsSubstring(",10,7\n"));
  CHECK_THAT(r.out, ContainsSubstring(csv));

  cfg.n_min = 5;
  cfg.n_max = 4;
  CHECK(run(cfg).code == 2);
}

TEST_CASE("usd", "[cli]") {
  CliConfig cfg;
  cfg.command = "usd";
  cfg.delta = 0.5;
  Run r = run(cfg);
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("success probability: 0.4 "));
  CHECK_THAT(r.out, ContainsSubstring("infeasible"));
  CHECK_THAT(r.out, ContainsSubstring("\"tritter\""));

  cfg.delta = 0.7071;
  r = run(cfg);
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("theta3=0.78"));

  cfg.delta = 1.5;
  CHECK(run(cfg).code == 2);
  cfg.delta.reset();
  CHECK(run(cfg).code == 2);
}

TEST_CASE("identical inputs give identical output", "[cli]") {
  CliConfig cfg = decompose("mbs3");
  cfg.random_n = 3;
  cfg.seed = 8;
  CHECK(run(cfg).out == run(cfg).out);
  CliConfig u;
  u.command = "usd";
  u.delta = 0.3;
  CHECK(run(u).out == run(u).out);
}
