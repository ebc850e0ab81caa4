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

#include <random>

#include "mesh2d/coarsen_bisect.hpp"
#include "mesh2d/mesh.hpp"
#include "mesh2d/refine.hpp"
#include "support.hpp"

using namespace mesh2d;
using namespace testsupport;

namespace {

// A single scalene triangle: every bisection level has its own shape, which
// makes similarity-class and angle checks meaningful.
TriMesh scalene_tri() {
  TriMesh m;
  m.coordinates = {{0, 0}, {1.3, 0}, {0.4, 0.9}};
  m.elements3 = {{0, 1, 2}};
  m.boundary = {{0, 1}, {1, 2}, {2, 0}};
  m.n0 = 3;
  return m;
}

// All-marked coarsening until the element count stops changing; returns the
// settled mesh and the number of effective steps.
template <typename CoarsenFn>
std::pair<TriMesh, int> settle(TriMesh mesh, CoarsenFn coarsen) {
  int steps = 0;
  for (int guard = 0; guard < 64; ++guard) {
    TriMesh next = coarsen(mesh, all_marks(mesh.elements3.size()), -1);
    if (next.elements3.size() == mesh.elements3.size()) break;
    mesh = std::move(next);
    ++steps;
  }
  return {mesh, steps};
}

}  // namespace

TEST_CASE("coarsening with no marks reproduces the input mesh") {
  std::mt19937 rng(89);
  TriMesh n = square_tri();
  TriMesh r = square_tri();
  for (int k = 0; k < 3; ++k) {
    n = trefine_nvb(n, random_marks(n.elements3.size(), rng));
    r = trefine_rgb(r, random_marks(r.elements3.size(), rng));
  }
  CHECK(same_mesh(coarsen_nvb(n, {}), n));
  CHECK(same_mesh(coarsen_rgb(r, {}), r));
}

TEST_CASE("a fully refined single triangle coarsens back to its parent") {
  TriMesh s = scalene_tri();

  // Red/green/blue: the four red children merge in one call.
  TriMesh r = trefine_rgb(s, {0});
  REQUIRE(r.elements3.size() == 4);
  CHECK(same_mesh(coarsen_rgb(r, all_marks(4)), normalize_oldest_first(s)));

  // Newest-vertex bisection: marking the element refines all its edges,
  // which is two bisection levels, so coarsening needs two calls.
  TriMesh n = trefine_nvb(s, {0});
  REQUIRE(n.elements3.size() == 4);
  TriMesh halfway = coarsen_nvb(n, all_marks(4));
  CHECK(halfway.elements3.size() == 2);
  CHECK(same_mesh(coarsen_nvb(halfway, all_marks(2)),
                  normalize_oldest_first(s)));
}

TEST_CASE("uniform refinement is undone level by level down to the initial "
          "mesh") {
  const int k = 4;
  TriMesh n = square_tri();
  TriMesh r = square_tri();
  for (int i = 0; i < k; ++i) {
    n = trefine_nvb(n, all_marks(n.elements3.size()));
    r = trefine_rgb(r, all_marks(r.elements3.size()));
  }
  REQUIRE(n.elements3.size() == 512);  // 2 * 4^k: two bisections per call
  REQUIRE(r.elements3.size() == 512);

  auto [n0, n_steps] = settle(n, coarsen_nvb);
  auto [r0, r_steps] = settle(r, coarsen_rgb);
  // One bisection level per coarsening call: 2k calls for newest-vertex
  // bisection, k for red/green/blue (a whole quartet merges at once).
  CHECK(n_steps == 2 * k);
  CHECK(r_steps == k);
  CHECK(same_mesh(n0, square_tri()));
  CHECK(same_mesh(r0, square_tri()));
}

TEST_CASE("random refinement settles back to the initial mesh") {
  std::mt19937 rng(97);
  for (int rep = 0; rep < 5; ++rep) {
    TriMesh n = scalene_tri();
    TriMesh r = scalene_tri();
    for (int i = 0; i < 5; ++i) {
      n = trefine_nvb(n, random_marks(n.elements3.size(), rng));
      r = trefine_rgb(r, random_marks(r.elements3.size(), rng));
    }
    CHECK(same_mesh(settle(n, coarsen_nvb).first,
                    normalize_oldest_first(scalene_tri())));
    CHECK(same_mesh(settle(r, coarsen_rgb).first,
                    normalize_oldest_first(scalene_tri())));
  }
}

TEST_CASE("interleaved refinement and coarsening keeps meshes conforming") {
  std::mt19937 rng(103);
  for (int rep = 0; rep < 10; ++rep) {
    TriMesh n = square_tri();
    TriMesh r = square_tri();
    for (int step = 0; step < 6; ++step) {
      bool coarsen = step >= 2 && (rng() & 1);
      MarkSet nm = random_marks(n.elements3.size(), rng);
      MarkSet rm = random_marks(r.elements3.size(), rng);
      std::size_t n_before = n.elements3.size();
      std::size_t r_before = r.elements3.size();
      n = coarsen ? coarsen_nvb(n, nm) : trefine_nvb(n, nm);
      r = coarsen ? coarsen_rgb(r, rm) : trefine_rgb(r, rm);
      if (coarsen) {
        CHECK(n.elements3.size() <= n_before);
        CHECK(r.elements3.size() <= r_before);
      }
      CHECK(check_conforming(n));
      CHECK(check_conforming(r));
      CHECK(total_area(n) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(total_area(r) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("coarsening never touches initial-mesh nodes") {
  std::mt19937 rng(107);
  TriMesh base = scalene_tri();
  TriMesh t = base;
  for (int i = 0; i < 5; ++i)
    t = trefine_nvb(t, random_marks(t.elements3.size(), rng));
  for (int i = 0; i < 6; ++i) {
    t = coarsen_nvb(t, random_marks(t.elements3.size(), rng, 0.7));
    REQUIRE(t.coordinates.size() >= std::size_t(base.n0));
    for (int v = 0; v < base.n0; ++v) {
      CHECK(t.coordinates[v].x == base.coordinates[v].x);
      CHECK(t.coordinates[v].y == base.coordinates[v].y);
    }
  }
}

TEST_CASE("bisection produces at most four similarity classes per initial "
          "triangle") {
  std::mt19937 rng(109);
  TriMesh base = scalene_tri();
  double base_angle = min_angle(base);
  TriMesh n = base;
  TriMesh r = base;
  for (int i = 0; i < 7; ++i) {
    n = trefine_nvb(n, random_marks(n.elements3.size(), rng));
    r = trefine_rgb(r, random_marks(r.elements3.size(), rng));
    CHECK(similarity_classes(n) <= 4);
    CHECK(similarity_classes(r) <= 4);
    CHECK(min_angle(n) >= 0.5 * base_angle);
    CHECK(min_angle(r) >= 0.5 * base_angle);
  }
  // Coarsening only removes elements, so it cannot add shapes either.
  for (int i = 0; i < 4; ++i) {
    n = coarsen_nvb(n, random_marks(n.elements3.size(), rng, 0.7));
    r = coarsen_rgb(r, random_marks(r.elements3.size(), rng, 0.7));
    CHECK(similarity_classes(n) <= 4);
    CHECK(similarity_classes(r) <= 4);
  }
}
