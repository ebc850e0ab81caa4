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

// Golden tests on small hand-constructed meshes whose admissible quartets,
// blocked quartets and hanging-node layouts are known exactly.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <utility>

#include "mesh2d/coarsen_red.hpp"
#include "mesh2d/mesh.hpp"
#include "mesh2d/refine.hpp"
#include "support.hpp"

using namespace mesh2d;
using namespace testsupport;

namespace {

constexpr double kTol = 1e-9;

bool near(const Point& p, double x, double y) {
  return std::abs(p.x - x) < kTol && std::abs(p.y - y) < kTol;
}

template <typename MeshT, typename ElT>
Point centroid(const MeshT& mesh, const ElT& e) {
  Point c{0.0, 0.0};
  for (int v : e) {
    c.x += mesh.coordinates[v].x;
    c.y += mesh.coordinates[v].y;
  }
  c.x /= e.size();
  c.y /= e.size();
  return c;
}

// Element whose centroid is (x, y); fails the test if absent or ambiguous.
int element_at(const QuadMesh& mesh, double x, double y) {
  int found = -1;
  for (std::size_t el = 0; el < mesh.elements4.size(); ++el)
    if (near(centroid(mesh, mesh.elements4[el]), x, y)) {
      REQUIRE(found == -1);
      found = static_cast<int>(el);
    }
  REQUIRE(found >= 0);
  return found;
}

int element_at(const TriMesh& mesh, double x, double y) {
  int found = -1;
  for (std::size_t el = 0; el < mesh.elements3.size(); ++el)
    if (near(centroid(mesh, mesh.elements3[el]), x, y)) {
      REQUIRE(found == -1);
      found = static_cast<int>(el);
    }
  REQUIRE(found >= 0);
  return found;
}

// Middle-node coordinates of each quartet in a quad admissible set.
std::set<std::pair<double, double>> middle_points(const QuadMesh& mesh,
                                                  const AdmissibleSet& adm) {
  std::set<std::pair<double, double>> out;
  for (int v : adm.middle)
    out.insert({mesh.coordinates[v].x, mesh.coordinates[v].y});
  return out;
}

// Centroids of the middle elements of a tri admissible set.
std::set<std::pair<double, double>> middle_points(const TriMesh& mesh,
                                                  const AdmissibleSet& adm) {
  std::set<std::pair<double, double>> out;
  for (int el : adm.middle) {
    Point c = centroid(mesh, mesh.elements3[el]);
    out.insert({c.x, c.y});
  }
  return out;
}

bool contains(const std::set<std::pair<double, double>>& pts, double x,
              double y) {
  for (const auto& [px, py] : pts)
    if (std::abs(px - x) < kTol && std::abs(py - y) < kTol) return true;
  return false;
}

}  // namespace

// One quadrilateral on [-1,2]^2, refined once: the four children share the
// center node at position three, so they form the unique admissible quartet.
// Refining the upper-right child breaks that sharing; the center no longer
// yields a quartet while the finer corner does.
TEST_CASE("middle node shared at position three identifies a quartet") {
  QuadMesh m;
  m.coordinates = {{-1, -1}, {2, -1}, {2, 2}, {-1, 2}};
  m.elements4 = {{0, 1, 2, 3}};
  m.boundary = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  m.n0 = 4;

  QuadMesh left = qrefine_r(m, {0});
  AdmissibleSet adm = q_admissible(left, provide_geometric_data(left));
  REQUIRE(adm.size() == 1);
  CHECK(near(left.coordinates[adm.middle[0]], 0.5, 0.5));

  QuadMesh right = qrefine_r(left, {element_at(left, 1.25, 1.25)});
  AdmissibleSet adm2 = q_admissible(right, provide_geometric_data(right));
  REQUIRE(adm2.size() == 1);
  CHECK(near(right.coordinates[adm2.middle[0]], 1.25, 1.25));
  CHECK(!contains(middle_points(right, adm2), 0.5, 0.5));

  // The corner refinement hangs one node on each of the two interior edges.
  REQUIRE(right.irregular.size() == 2);
  std::set<std::pair<double, double>> hanging;
  for (const Tri& ir : right.irregular)
    hanging.insert({right.coordinates[ir[2]].x, right.coordinates[ir[2]].y});
  CHECK(contains(hanging, 1.25, 0.5));
  CHECK(contains(hanging, 0.5, 1.25));
}

// Two triangles on [0,2]^2, both refined, then one corner child refined
// again. Three middle elements exist, but the one whose neighbor was
// replaced by finer elements has only two direct neighbors left and is
// therefore not part of an admissible quartet.
TEST_CASE("middle element without three direct neighbors is not admissible") {
  TriMesh m;
  m.coordinates = {{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  m.elements3 = {{2, 0, 1}, {0, 2, 3}};
  m.boundary = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  m.n0 = 4;

  TriMesh r = trefine_r(m, {0, 1});
  // Child of the lower-right triangle at the (2,2) corner.
  r = trefine_r(r, {element_at(r, 5.0 / 3.0, 4.0 / 3.0)});

  AdmissibleSet adm = t_admissible(r, provide_geometric_data(r));
  auto pts = middle_points(r, adm);
  CHECK(adm.size() == 2);
  CHECK(contains(pts, 2.0 / 3.0, 4.0 / 3.0));  // upper-left middle element
  CHECK(contains(pts, 5.0 / 3.0, 4.0 / 3.0));  // finest middle element
  // The lower-right middle element lost a direct neighbor to the finer
  // corner and must be absent.
  CHECK(!contains(pts, 4.0 / 3.0, 2.0 / 3.0));
}

// Two unit squares side by side, refined to three different levels. Three
// quartets are admissible; the two whose elements carry irregular edges are
// blocked so that coarsening keeps at most one hanging node per edge.
TEST_CASE("closure blocks quartets whose elements have irregular edges") {
  QuadMesh m;
  m.coordinates = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}};
  m.elements4 = {{0, 1, 4, 3}, {1, 2, 5, 4}};
  m.boundary = {{0, 1}, {1, 2}, {2, 5}, {5, 4}, {4, 3}, {3, 0}};
  m.n0 = 6;

  QuadMesh r = qrefine_r(m, {0, 1});
  r = qrefine_r(r, {element_at(r, 1.25, 0.75), element_at(r, 1.75, 0.75)});
  r = qrefine_r(r, {element_at(r, 1.375, 0.875)});

  GeomData g = provide_geometric_data(r);
  AdmissibleSet adm = q_admissible(r, g);
  auto pts = middle_points(r, adm);
  REQUIRE(adm.size() == 3);
  CHECK(contains(pts, 0.5, 0.5));
  CHECK(contains(pts, 1.75, 0.75));
  CHECK(contains(pts, 1.375, 0.875));

  // Only the finest quartet has no irregular edge on any of its elements.
  AdmissibleSet kept = q_closure(r, g, adm);
  REQUIRE(kept.size() == 1);
  CHECK(near(r.coordinates[kept.middle[0]], 1.375, 0.875));
}

// A 3x2 arrangement of unit squares, uniformly refined, with five cells
// refined once more. Six quartets are admissible; the stencil-weight
// criterion blocks exactly the interior one whose weights sum to five,
// enforcing the 3-Neighbor Rule.
TEST_CASE("closure blocks the quartet whose stencil weights sum to five") {
  QuadMesh m;
  m.coordinates = {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 1}, {1, 1},
                   {2, 1}, {3, 1}, {0, 2}, {1, 2}, {2, 2}, {3, 2}};
  m.elements4 = {{0, 1, 5, 4}, {1, 2, 6, 5}, {2, 3, 7, 6},
                 {4, 5, 9, 8}, {5, 6, 10, 9}, {6, 7, 11, 10}};
  m.boundary = {{0, 1}, {1, 2}, {2, 3}, {3, 7}, {7, 11},
                {11, 10}, {10, 9}, {9, 8}, {8, 4}, {4, 0}};
  m.n0 = 12;

  QuadMesh r = qrefine_r(m, all_marks(6));
  r = qrefine_r(r, {element_at(r, 0.25, 1.75), element_at(r, 0.25, 0.25),
                    element_at(r, 1.75, 0.25), element_at(r, 2.75, 0.25),
                    element_at(r, 2.75, 1.75)});

  GeomData g = provide_geometric_data(r);
  AdmissibleSet adm = q_admissible(r, g);
  REQUIRE(adm.size() == 6);
  CHECK(contains(middle_points(r, adm), 1.5, 1.5));

  // The quartet at (1.5,1.5) has one boundary midpoint (weight 2) and three
  // plain midpoints (weight 1 each): the sum 5 blocks it. All five finer
  // quartets keep weight sums above 5 via hanging and boundary nodes.
  AdmissibleSet kept = q_closure(r, g, adm);
  CHECK(kept.size() == 5);
  CHECK(!contains(middle_points(r, kept), 1.5, 1.5));
}
