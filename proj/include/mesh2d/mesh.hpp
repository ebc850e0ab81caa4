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

#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace mesh2d {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

using Tri = std::array<int, 3>;
using Quad = std::array<int, 4>;
using EdgePair = std::array<int, 2>;
using MarkSet = std::vector<int>;

// Node age is index order: the smaller the index, the older the node.
// The first n0 coordinates are the nodes of the initial mesh and are never
// deleted by coarsening.

// Triangular mesh. `irregular` lists triples (i, j, k): the edge (v_i, v_j)
// carries the hanging node v_k (k is the midpoint). Each triple acts as a
// zero-area "virtual element" with edges (i,j), (j,k), (k,i) when neighbor
// information is derived.
struct TriMesh {
  std::vector<Point> coordinates;
  std::vector<Tri> elements3;   // CCW node triples
  std::vector<Tri> irregular;   // (i, j, hanging)
  std::vector<EdgePair> boundary;  // optional
  int n0 = 0;
  int n_green = 0;  // trailing green elements (T-RG), stored as pairs
};

struct QuadMesh {
  std::vector<Point> coordinates;
  std::vector<Quad> elements4;  // CCW node quadruples
  std::vector<Tri> irregular;
  std::vector<EdgePair> boundary;
  int n0 = 0;
  int n_blue = 0;  // trailing blue elements (Q-RB), stored as triples
};

// Conforming mixed mesh produced by Q-RG: red quads, green triangles (grouped
// by pattern type), and a trailing green-quad block of length n_green4.
struct MixedMesh {
  std::vector<Point> coordinates;
  std::vector<Tri> elements3;
  std::vector<Quad> elements4;
  std::vector<EdgePair> boundary;
  int n0 = 0;
  int n_green4 = 0;
};

// Derived edge/neighbor tables. When virtual elements are included, the
// element ids n_real .. n_real+n_virtual-1 refer to the irregular triples in
// order; every interior edge then has exactly two adjacent elements and
// single-occurrence edges lie on the domain boundary.
struct GeomData {
  std::vector<EdgePair> edge2nodes;            // one pair per undirected edge
  std::vector<std::vector<int>> element2edges;  // traversal order, 3 or 4 ids
  std::vector<int> boundary2edges;              // edge ids given to `boundary`
  std::vector<EdgePair> edge2elements;          // -1 for absent neighbor
  std::vector<EdgePair> edge2local;             // local edge position, -1 pad
  std::vector<int> overfull_edges;              // edges seen by > 2 elements
  std::size_t n_real = 0;     // real elements (virtual ones follow)

  int edge_of(int a, int b) const;  // -1 if absent
};

GeomData provide_geometric_data(const TriMesh& mesh, bool include_virtual = true);
GeomData provide_geometric_data(const QuadMesh& mesh, bool include_virtual = true);
GeomData provide_geometric_data(const MixedMesh& mesh);

// Low-level builder shared by the overloads: `cycles` holds each element's
// vertex cycle (real elements first, then virtual ones).
GeomData build_geometric_data(const std::vector<std::vector<int>>& cycles,
                              const std::vector<EdgePair>& boundary,
                              std::size_t n_real);

std::vector<EdgePair> create_edge2elements(
    const std::vector<std::vector<int>>& element2edges, int n_edges);
// Advanced variant: also reports which local edge it is within each element.
std::pair<std::vector<EdgePair>, std::vector<EdgePair>> create_edge2elements_adv(
    const std::vector<std::vector<int>>& element2edges, int n_edges);

struct IrregularCheck {
  bool ok = true;
  std::vector<EdgePair> violating_edges;
};

IrregularCheck check_1_irregular(const TriMesh& mesh);
IrregularCheck check_1_irregular(const QuadMesh& mesh);

bool check_conforming(const TriMesh& mesh);
bool check_conforming(const QuadMesh& mesh);
bool check_conforming(const MixedMesh& mesh);

struct QualityReport {
  double min_angle = 0.0;             // radians, triangles
  double max_diam_inradius_ratio = 0.0;
  double max_edge_ratio = 0.0;        // quadrilaterals
  double max_abs_cos = 0.0;           // quadrilateral inner angles
};

QualityReport quality_metrics(const TriMesh& mesh);
QualityReport quality_metrics(const QuadMesh& mesh);
QualityReport quality_metrics(const MixedMesh& mesh);

TriMesh normalize_oldest_first(TriMesh mesh);
QuadMesh normalize_oldest_first(QuadMesh mesh);

double signed_area(const std::vector<Point>& c, const Tri& t);
double signed_area(const std::vector<Point>& c, const Quad& q);
double total_area(const TriMesh& mesh);
double total_area(const QuadMesh& mesh);
double total_area(const MixedMesh& mesh);

}  // namespace mesh2d
