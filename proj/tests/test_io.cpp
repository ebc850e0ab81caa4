// Copyright 2026 The mesh2d Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <variant>

#include "mesh2d/demo.hpp"
#include "mesh2d/io.hpp"
#include "mesh2d/refine.hpp"
#include "support.hpp"

using namespace mesh2d;
using namespace testsupport;

namespace {

std::string temp_path(const std::string& name) {
  return "/tmp/mesh2d_io_" + name;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_of(const std::string& path) {
  try {
    load_mesh(path);
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + 1))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("save followed by load reproduces every strategy's mesh exactly") {
  std::mt19937 rng(113);
  for (Strategy s : {Strategy::TR, Strategy::TRG, Strategy::TRGB,
                     Strategy::TNVB, Strategy::QR, Strategy::QRG,
                     Strategy::QRB}) {
    MeshFile file = initial_mesh(s);
    for (int k = 0; k < 3; ++k)
      refine_in_place(file, random_marks(element_count(file), rng));

    std::string path = temp_path(strategy_tag(s) + ".mesh");
    save_mesh(file, path);
    MeshFile loaded = load_mesh(path);
    CHECK(loaded.strategy == file.strategy);
    REQUIRE(loaded.mesh.index() == file.mesh.index());
    std::visit(
        [&](const auto& a) {
          using MeshT = std::decay_t<decltype(a)>;
          const auto& b = std::get<MeshT>(loaded.mesh);
          CHECK(same_mesh(a, b));
          if constexpr (requires { a.n_green; }) CHECK(a.n_green == b.n_green);
          if constexpr (requires { a.n_blue; }) CHECK(a.n_blue == b.n_blue);
          if constexpr (requires { a.n_green4; })
            CHECK(a.n_green4 == b.n_green4);
        },
        file.mesh);
    std::remove(path.c_str());
  }
}

TEST_CASE("comments and blank lines are ignored") {
  std::string path = temp_path("commented.mesh");
  write_file(path,
             "# a full-line comment\n"
             "META\n"
             "strategy t-r  # trailing comment\n"
             "n0 3\n"
             "\n"
             "COORDINATES\n"
             "0 0\n"
             "1 0\n"
             "0 1\n"
             "ELEMENTS3\n"
             "1 2 3\n"
             "BOUNDARY\n"
             "1 2\n"
             "2 3\n"
             "3 1\n");
  MeshFile file = load_mesh(path);
  CHECK(file.strategy == Strategy::TR);
  const TriMesh& m = std::get<TriMesh>(file.mesh);
  CHECK(m.coordinates.size() == 3);
  CHECK(m.elements3.size() == 1);
  CHECK(m.elements3[0] == Tri{0, 1, 2});  // 1-based on disk, 0-based here
  CHECK(m.boundary.size() == 3);
  CHECK(m.n0 == 3);
  std::remove(path.c_str());
}

TEST_CASE("parse errors report path, line number, and reason") {
  std::string path = temp_path("short_element.mesh");
  write_file(path,
             "META\n"
             "strategy t-r\n"
             "n0 3\n"
             "COORDINATES\n"
             "0 0\n"
             "1 0\n"
             "0 1\n"
             "ELEMENTS3\n"
             "1 2\n");
  std::string what = error_of(path);
  CHECK(what.find(path + ":9: ") == 0);
  CHECK(what.find("expected 3 indices") != std::string::npos);
  std::remove(path.c_str());

  write_file(path, "0 0\n");
  what = error_of(path);
  CHECK(what.find(path + ":1: ") == 0);
  CHECK(what.find("before any section") != std::string::npos);

  write_file(path,
             "META\n"
             "strategy t-x\n"
             "n0 1\n"
             "COORDINATES\n"
             "0 0\n");
  CHECK(error_of(path).find("unknown strategy 't-x'") != std::string::npos);

  write_file(path, "COORDINATES\n0 0\n");
  CHECK(error_of(path).find("strategy") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("node indices outside the coordinate range are rejected") {
  std::string path = temp_path("bad_index.mesh");
  write_file(path,
             "META\n"
             "strategy t-r\n"
             "n0 3\n"
             "COORDINATES\n"
             "0 0\n"
             "1 0\n"
             "0 1\n"
             "ELEMENTS3\n"
             "1 2 9\n");
  std::string what = error_of(path);
  CHECK(what.find("index 9 out of range 1..3") != std::string::npos);

  write_file(path,
             "META\n"
             "strategy t-r\n"
             "n0 5\n"
             "COORDINATES\n"
             "0 0\n"
             "1 0\n"
             "0 1\n"
             "ELEMENTS3\n"
             "1 2 3\n");
  CHECK(error_of(path).find("n0 exceeds the coordinate count") !=
        std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("svg export draws one polygon per element and one dot per hanging "
          "node") {
  TriMesh t = trefine_r(square_tri(), {0});
  REQUIRE(t.irregular.size() == 1);
  std::string path = temp_path("mesh.svg");
  export_svg(t, path);
  std::string svg = read_file(path);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg ") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(count_of(svg, "<polygon") == t.elements3.size());
  CHECK(count_of(svg, "<circle") == t.irregular.size());

  SvgOptions no_dots;
  no_dots.show_hanging = false;
  export_svg(t, path, no_dots);
  CHECK(count_of(read_file(path), "<circle") == 0);

  QuadMesh q = qrefine_r(qrefine_r(square_quad(), {0}), {0});
  export_svg(q, path);
  svg = read_file(path);
  CHECK(count_of(svg, "<polygon") == q.elements4.size());
  CHECK(count_of(svg, "<circle") == q.irregular.size());
  std::remove(path.c_str());
}

TEST_CASE("scaling benchmark rows cover every coarsening step once") {
  std::vector<BenchRow> rows = bench_scaling(Strategy::TRG, 3, /*reps=*/1);
  REQUIRE(!rows.empty());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].step == static_cast<int>(i) + 1);
    CHECK(rows[i].nodes > 0);
    CHECK(rows[i].seconds >= 0.0);
    if (i > 0) CHECK(rows[i].nodes < rows[i - 1].nodes);
  }
}
