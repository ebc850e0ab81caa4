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

#include <cmath>
#include <random>

#include "mesh2d/mesh.hpp"
#include "mesh2d/refine.hpp"
#include "support.hpp"

using namespace mesh2d;
using namespace testsupport;

TEST_CASE("geometric data of a single quadrilateral") {
  QuadMesh m = square_quad();
  GeomData g = provide_geometric_data(m);
  CHECK(g.edge2nodes.size() == 4);
  for (const EdgePair& adjacent : g.edge2elements) {
    CHECK(adjacent[0] == 0);
    CHECK(adjacent[1] == -1);  // boundary edge: exactly one element
  }
  CHECK(g.boundary2edges.size() == 4);
}

TEST_CASE("geometric data of two triangles sharing an edge") {
  TriMesh m = square_tri();
  GeomData g = provide_geometric_data(m);
  CHECK(g.edge2nodes.size() == 5);
  int shared = g.edge_of(0, 2);
  REQUIRE(shared >= 0);
  CHECK(g.edge2elements[shared][0] >= 0);
  CHECK(g.edge2elements[shared][1] >= 0);
  int n_interior = 0;
  for (const EdgePair& adjacent : g.edge2elements)
    if (adjacent[1] >= 0) ++n_interior;
  CHECK(n_interior == 1);
}

TEST_CASE("geometric data of the uniformly refined unit square") {
  QuadMesh m = qrefine_r(square_quad(), {0});
  CHECK(m.elements4.size() == 4);
  CHECK(m.coordinates.size() == 9);
  GeomData g = provide_geometric_data(m);
  CHECK(g.edge2nodes.size() == 12);
  int n_interior = 0;
  for (const EdgePair& adjacent : g.edge2elements)
    if (adjacent[1] >= 0) ++n_interior;
  CHECK(n_interior == 4);
}

TEST_CASE("element2edges expands back to the vertex cycles") {
  std::mt19937 rng(7);
  TriMesh m = square_tri();
  for (int k = 0; k < 3; ++k)
    m = trefine_r(m, random_marks(m.elements3.size(), rng));
  GeomData g = provide_geometric_data(m, /*include_virtual=*/false);
  REQUIRE(g.element2edges.size() == m.elements3.size());
  for (std::size_t el = 0; el < m.elements3.size(); ++el) {
    const Tri& t = m.elements3[el];
    for (int k = 0; k < 3; ++k) {
      int e = g.element2edges[el][k];
      const EdgePair& nodes = g.edge2nodes[e];
      int a = t[k], b = t[(k + 1) % 3];
      bool match = (nodes[0] == a && nodes[1] == b) ||
                   (nodes[0] == b && nodes[1] == a);
      CHECK(match);
    }
  }
}

TEST_CASE("check_1_irregular accepts conforming and 1-irregular meshes") {
  CHECK(check_1_irregular(square_tri()).ok);
  CHECK(check_1_irregular(square_quad()).ok);

  QuadMesh m = qrefine_r(square_quad(), {0});
  m = qrefine_r(m, {0});  // one corner child: hanging nodes appear
  CHECK(!m.irregular.empty());
  CHECK(check_1_irregular(m).ok);
}

TEST_CASE("check_1_irregular rejects two hanging nodes on one edge") {
  QuadMesh m = square_quad();
  m.coordinates.push_back({0.25, 0.0});
  m.coordinates.push_back({0.75, 0.0});
  m.irregular = {{0, 1, 4}, {0, 1, 5}};
  IrregularCheck r = check_1_irregular(m);
  CHECK(!r.ok);
  CHECK(!r.violating_edges.empty());
}

TEST_CASE("check_conforming") {
  CHECK(check_conforming(square_tri()));
  CHECK(check_conforming(square_quad()));
  CHECK(check_conforming(square_mixed()));

  QuadMesh m = qrefine_r(square_quad(), {0});
  m = qrefine_r(m, {0});
  CHECK(!check_conforming(m));  // red refinement leaves hanging nodes
}

TEST_CASE("quality metrics on canonical shapes") {
  TriMesh eq;
  eq.coordinates = {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
  eq.elements3 = {{0, 1, 2}};
  eq.n0 = 3;
  CHECK(quality_metrics(eq).min_angle ==
        doctest::Approx(std::acos(0.5)).epsilon(1e-12));

  QuadMesh sq = square_quad();
  QualityReport qr = quality_metrics(sq);
  CHECK(qr.max_abs_cos == doctest::Approx(0.0));
  CHECK(qr.max_edge_ratio == doctest::Approx(1.0));
}

TEST_CASE("red refinement preserves the minimum angle of a right triangle") {
  TriMesh m;
  m.coordinates = {{0, 0}, {1, 0}, {0, 1}};
  m.elements3 = {{0, 1, 2}};
  m.n0 = 3;
  double a0 = quality_metrics(m).min_angle;
  TriMesh r = trefine_r(m, {0});
  CHECK(quality_metrics(r).min_angle == doctest::Approx(a0).epsilon(1e-12));
}

TEST_CASE("normalize_oldest_first rotates without reordering") {
  TriMesh m;
  m.coordinates = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {2, 0}, {2, 1}, {3, 0},
                   {3, 1}};
  m.elements3 = {{7, 2, 5}};
  m.n0 = 8;
  TriMesh n = normalize_oldest_first(m);
  CHECK(n.elements3[0] == Tri{2, 5, 7});
  CHECK(signed_area(n.coordinates, n.elements3[0]) ==
        doctest::Approx(signed_area(m.coordinates, m.elements3[0])));
}

TEST_CASE("normalize_oldest_first is idempotent on random rotations") {
  std::mt19937 rng(11);
  TriMesh m = square_tri();
  for (int k = 0; k < 3; ++k)
    m = trefine_r(m, random_marks(m.elements3.size(), rng));
  TriMesh shuffled = m;
  for (Tri& t : shuffled.elements3)
    std::rotate(t.begin(), t.begin() + rng() % 3, t.end());
  TriMesh once = normalize_oldest_first(shuffled);
  TriMesh twice = normalize_oldest_first(once);
  CHECK(once.elements3 == twice.elements3);
  for (std::size_t el = 0; el < m.elements3.size(); ++el)
    CHECK(signed_area(once.coordinates, once.elements3[el]) ==
          doctest::Approx(signed_area(m.coordinates, m.elements3[el])));
}

TEST_CASE("total area is preserved by refinement") {
  std::mt19937 rng(23);
  TriMesh t = square_tri();
  QuadMesh q = square_quad();
  for (int k = 0; k < 4; ++k) {
    t = trefine_r(t, random_marks(t.elements3.size(), rng));
    q = qrefine_r(q, random_marks(q.elements4.size(), rng));
    CHECK(total_area(t) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(total_area(q) == doctest::Approx(1.0).epsilon(1e-12));
  }
}
