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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "mesh2d/coarsen_red.hpp"
#include "mesh2d/mesh.hpp"
#include "mesh2d/refine.hpp"

namespace testsupport {

using namespace mesh2d;

// ---------------------------------------------------------------------------
// Canonical starting meshes (unit square, n0 = 4).

inline TriMesh square_tri() {
  TriMesh m;
  m.coordinates = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  // The diagonal is the common reference edge of both triangles.
  m.elements3 = {{2, 0, 1}, {0, 2, 3}};
  m.boundary = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  m.n0 = 4;
  return m;
}

inline QuadMesh square_quad() {
  QuadMesh m;
  m.coordinates = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  m.elements4 = {{0, 1, 2, 3}};
  m.boundary = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  m.n0 = 4;
  return m;
}

inline MixedMesh square_mixed() {
  MixedMesh m;
  m.coordinates = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  m.elements4 = {{0, 1, 2, 3}};
  m.boundary = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  m.n0 = 4;
  return m;
}

// ---------------------------------------------------------------------------
// Canonicalized mesh comparison. Element order and cyclic rotation within an
// element are implementation details; coordinates are compared bit-exactly.

template <std::size_t N>
std::array<int, N> rotate_min_first(std::array<int, N> e) {
  auto it = std::min_element(e.begin(), e.end());
  std::rotate(e.begin(), it, e.end());
  return e;
}

template <std::size_t N>
std::vector<std::array<int, N>> canonical_cycles(
    std::vector<std::array<int, N>> els) {
  for (auto& e : els) e = rotate_min_first(e);
  std::sort(els.begin(), els.end());
  return els;
}

inline std::vector<EdgePair> canonical_edges(std::vector<EdgePair> edges) {
  for (auto& e : edges)
    if (e[0] > e[1]) std::swap(e[0], e[1]);
  std::sort(edges.begin(), edges.end());
  return edges;
}

inline bool same_coordinates(const std::vector<Point>& a,
                             const std::vector<Point>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].x != b[i].x || a[i].y != b[i].y) return false;
  return true;
}

inline bool same_mesh(const TriMesh& a, const TriMesh& b) {
  return same_coordinates(a.coordinates, b.coordinates) && a.n0 == b.n0 &&
         canonical_cycles(a.elements3) == canonical_cycles(b.elements3) &&
         canonical_cycles(a.irregular) == canonical_cycles(b.irregular) &&
         canonical_edges(a.boundary) == canonical_edges(b.boundary);
}

inline bool same_mesh(const QuadMesh& a, const QuadMesh& b) {
  return same_coordinates(a.coordinates, b.coordinates) && a.n0 == b.n0 &&
         canonical_cycles(a.elements4) == canonical_cycles(b.elements4) &&
         canonical_cycles(a.irregular) == canonical_cycles(b.irregular) &&
         canonical_edges(a.boundary) == canonical_edges(b.boundary);
}

inline bool same_mesh(const MixedMesh& a, const MixedMesh& b) {
  return same_coordinates(a.coordinates, b.coordinates) && a.n0 == b.n0 &&
         canonical_cycles(a.elements3) == canonical_cycles(b.elements3) &&
         canonical_cycles(a.elements4) == canonical_cycles(b.elements4) &&
         canonical_edges(a.boundary) == canonical_edges(b.boundary);
}

// Mesh equivalence up to node renumbering: coarsening may delete a pattern
// node and regularization re-append it at a different index, so nodes are
// matched through bit-exact coordinate identity before comparing elements.
template <typename MeshT>
bool equivalent_mesh(const MeshT& a, const MeshT& b) {
  if (a.coordinates.size() != b.coordinates.size() || a.n0 != b.n0)
    return false;
  std::map<std::pair<double, double>, int> where;
  for (std::size_t i = 0; i < b.coordinates.size(); ++i)
    where[{b.coordinates[i].x, b.coordinates[i].y}] = static_cast<int>(i);
  std::vector<int> map(a.coordinates.size());
  for (std::size_t i = 0; i < a.coordinates.size(); ++i) {
    auto it = where.find({a.coordinates[i].x, a.coordinates[i].y});
    if (it == where.end()) return false;
    map[i] = it->second;
  }
  auto remap = [&map](auto els) {
    for (auto& e : els)
      for (auto& v : e) v = map[v];
    return els;
  };
  if (canonical_edges(remap(a.boundary)) != canonical_edges(b.boundary))
    return false;
  if (canonical_cycles(remap(a.irregular)) != canonical_cycles(b.irregular))
    return false;
  if constexpr (requires { a.elements3; })
    if (canonical_cycles(remap(a.elements3)) != canonical_cycles(b.elements3))
      return false;
  if constexpr (requires { a.elements4; })
    if (canonical_cycles(remap(a.elements4)) != canonical_cycles(b.elements4))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Random mark sets.

inline MarkSet all_marks(std::size_t n_elements) {
  MarkSet all(n_elements);
  std::iota(all.begin(), all.end(), 0);
  return all;
}

inline MarkSet random_marks(std::size_t n_elements, std::mt19937& rng,
                            double p = 0.3) {
  std::bernoulli_distribution coin(p);
  MarkSet out;
  for (std::size_t i = 0; i < n_elements; ++i)
    if (coin(rng)) out.push_back(static_cast<int>(i));
  if (out.empty() && n_elements > 0)
    out.push_back(static_cast<int>(rng() % n_elements));
  return out;
}

// ---------------------------------------------------------------------------
// Refinement-history tree: an explicit parent/child record maintained from
// RefineTrace outputs, used as the independent oracle for the history-free
// admissible-quartet detection.

class HistoryTree {
 public:
  explicit HistoryTree(std::size_t n_initial) {
    parent_.assign(n_initial, -1);
    live_.resize(n_initial);
    std::iota(live_.begin(), live_.end(), 0);
  }

  // Apply the trace of one refinement call.
  void apply(const RefineTrace& trace) {
    std::vector<int> next(trace.origin.size());
    for (std::size_t i = 0; i < trace.origin.size(); ++i) {
      int old_node = live_[trace.origin[i]];
      if (trace.is_child[i]) {
        next[i] = static_cast<int>(parent_.size());
        parent_.push_back(old_node);
      } else {
        next[i] = old_node;
      }
    }
    live_ = std::move(next);
  }

  // Quartets of current element ids whose tree nodes are siblings and whose
  // parent has no other living descendants (all-leaf sibling quartets).
  std::set<std::set<int>> leaf_quartets() const {
    std::vector<std::vector<int>> children_alive(parent_.size());
    for (std::size_t el = 0; el < live_.size(); ++el) {
      int p = parent_[live_[el]];
      if (p >= 0) children_alive[p].push_back(static_cast<int>(el));
    }
    std::vector<int> n_children(parent_.size(), 0);
    for (int p : parent_)
      if (p >= 0) ++n_children[p];
    std::set<std::set<int>> out;
    for (std::size_t p = 0; p < parent_.size(); ++p)
      if (n_children[p] == 4 && children_alive[p].size() == 4)
        out.insert(std::set<int>(children_alive[p].begin(),
                                 children_alive[p].end()));
    return out;
  }

 private:
  std::vector<int> parent_;  // tree node -> parent tree node (-1 for roots)
  std::vector<int> live_;    // current element id -> tree node
};

inline std::set<std::set<int>> quartet_id_sets(const AdmissibleSet& adm) {
  std::set<std::set<int>> out;
  for (const auto& q : adm.quartets)
    out.insert(std::set<int>(q.begin(), q.end()));
  return out;
}

// ---------------------------------------------------------------------------
// d-Neighbor scan: in a valid output mesh no element may have d or more
// refined neighbors, visible as d or more of its edges carrying hanging
// nodes (d = 2 triangles under the 2-Neighbor Rule, d = 3 quadrilaterals).

template <typename MeshT>
int max_irregular_edges_per_element(const MeshT& mesh) {
  std::set<std::pair<int, int>> split;
  for (const Tri& ir : mesh.irregular)
    split.insert({std::min(ir[0], ir[1]), std::max(ir[0], ir[1])});
  auto count = [&split](const auto& e) {
    int c = 0;
    for (std::size_t k = 0; k < e.size(); ++k) {
      int a = e[k], b = e[(k + 1) % e.size()];
      if (split.count({std::min(a, b), std::max(a, b)})) ++c;
    }
    return c;
  };
  int worst = 0;
  if constexpr (requires { mesh.elements3; })
    for (const Tri& t : mesh.elements3) worst = std::max(worst, count(t));
  if constexpr (requires { mesh.elements4; })
    for (const Quad& q : mesh.elements4) worst = std::max(worst, count(q));
  return worst;
}

// ---------------------------------------------------------------------------
// Triangle similarity classes: sorted angle triples rounded to 1e-9.

inline std::size_t similarity_classes(const TriMesh& mesh) {
  std::set<std::array<long long, 3>> classes;
  for (const Tri& t : mesh.elements3) {
    std::array<double, 3> ang;
    for (int k = 0; k < 3; ++k) {
      const Point& a = mesh.coordinates[t[k]];
      const Point& b = mesh.coordinates[t[(k + 1) % 3]];
      const Point& c = mesh.coordinates[t[(k + 2) % 3]];
      double ux = b.x - a.x, uy = b.y - a.y;
      double vx = c.x - a.x, vy = c.y - a.y;
      ang[k] = std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
    }
    std::sort(ang.begin(), ang.end());
    classes.insert({std::llround(ang[0] * 1e9), std::llround(ang[1] * 1e9),
                    std::llround(ang[2] * 1e9)});
  }
  return classes.size();
}

inline double min_angle(const TriMesh& mesh) {
  return quality_metrics(mesh).min_angle;
}

}  // namespace testsupport
