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

#include "mesh2d/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace mesh2d {

namespace {

inline std::int64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

std::vector<std::vector<int>> collect_cycles(const std::vector<Tri>& tris,
                                             const std::vector<Quad>& quads,
                                             const std::vector<Tri>& irregular,
                                             bool include_virtual) {
  std::vector<std::vector<int>> cycles;
  cycles.reserve(tris.size() + quads.size() +
                 (include_virtual ? irregular.size() : 0));
  for (const Quad& q : quads) cycles.push_back({q[0], q[1], q[2], q[3]});
  for (const Tri& t : tris) cycles.push_back({t[0], t[1], t[2]});
  if (include_virtual)
    for (const Tri& v : irregular) cycles.push_back({v[0], v[1], v[2]});
  return cycles;
}

}  // namespace

int GeomData::edge_of(int a, int b) const {
  // Linear probe over edge2nodes would be O(E); keep a tiny local scan only
  // for ad-hoc queries in tests. Hot paths use their own maps.
  for (std::size_t e = 0; e < edge2nodes.size(); ++e) {
    const EdgePair& p = edge2nodes[e];
    if ((p[0] == a && p[1] == b) || (p[0] == b && p[1] == a))
      return static_cast<int>(e);
  }
  return -1;
}

GeomData build_geometric_data(const std::vector<std::vector<int>>& cycles,
                              const std::vector<EdgePair>& boundary,
                              std::size_t n_real) {
  GeomData g;
  g.n_real = n_real;
  g.element2edges.resize(cycles.size());
  // Edges are identified through per-node chains keyed by the smaller
  // endpoint (flat arrays instead of a hash map: the construction is on the
  // hot path of every refine/coarsen call and dominates at large meshes).
  int n_nodes = 0;
  for (const std::vector<int>& cyc : cycles)
    for (int v : cyc) n_nodes = std::max(n_nodes, v + 1);
  std::vector<int> head(n_nodes, -1);
  std::vector<int> chain_next, chain_other, chain_edge;
  chain_next.reserve(cycles.size() * 2);
  chain_other.reserve(cycles.size() * 2);
  chain_edge.reserve(cycles.size() * 2);
  auto find_or_add = [&](int a, int b) {
    int lo = a < b ? a : b;
    int hi = a < b ? b : a;
    for (int it = head[lo]; it >= 0; it = chain_next[it])
      if (chain_other[it] == hi) return chain_edge[it];
    int e = static_cast<int>(g.edge2nodes.size());
    g.edge2nodes.push_back({lo, hi});
    g.edge2elements.push_back({-1, -1});
    g.edge2local.push_back({-1, -1});
    chain_next.push_back(head[lo]);
    chain_other.push_back(hi);
    chain_edge.push_back(e);
    head[lo] = static_cast<int>(chain_next.size()) - 1;
    return e;
  };
  for (std::size_t el = 0; el < cycles.size(); ++el) {
    const std::vector<int>& cyc = cycles[el];
    g.element2edges[el].reserve(cyc.size());
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int a = cyc[i];
      int b = cyc[(i + 1) % cyc.size()];
      if (a == b)
        throw std::runtime_error("malformed element " + std::to_string(el) +
                                 ": repeated node " + std::to_string(a));
      int e = find_or_add(a, b);
      g.element2edges[el].push_back(e);
      if (g.edge2elements[e][0] < 0) {
        g.edge2elements[e][0] = static_cast<int>(el);
        g.edge2local[e][0] = static_cast<int>(i);
      } else if (g.edge2elements[e][1] < 0) {
        g.edge2elements[e][1] = static_cast<int>(el);
        g.edge2local[e][1] = static_cast<int>(i);
      } else {
        g.overfull_edges.push_back(e);
      }
    }
  }
  g.boundary2edges.reserve(boundary.size());
  for (const EdgePair& b : boundary) {
    int found = -1;
    if (b[0] != b[1] && std::max(b[0], b[1]) < n_nodes) {
      int lo = std::min(b[0], b[1]);
      int hi = std::max(b[0], b[1]);
      for (int it = head[lo]; it >= 0; it = chain_next[it])
        if (chain_other[it] == hi) {
          found = chain_edge[it];
          break;
        }
    }
    g.boundary2edges.push_back(found);
  }
  return g;
}

GeomData provide_geometric_data(const TriMesh& mesh, bool include_virtual) {
  return build_geometric_data(
      collect_cycles(mesh.elements3, {}, mesh.irregular, include_virtual),
      mesh.boundary, mesh.elements3.size());
}

GeomData provide_geometric_data(const QuadMesh& mesh, bool include_virtual) {
  return build_geometric_data(
      collect_cycles({}, mesh.elements4, mesh.irregular, include_virtual),
      mesh.boundary, mesh.elements4.size());
}

GeomData provide_geometric_data(const MixedMesh& mesh) {
  return build_geometric_data(
      collect_cycles(mesh.elements3, mesh.elements4, {}, false), mesh.boundary,
      mesh.elements3.size() + mesh.elements4.size());
}

std::vector<EdgePair> create_edge2elements(
    const std::vector<std::vector<int>>& element2edges, int n_edges) {
  return create_edge2elements_adv(element2edges, n_edges).first;
}

std::pair<std::vector<EdgePair>, std::vector<EdgePair>> create_edge2elements_adv(
    const std::vector<std::vector<int>>& element2edges, int n_edges) {
  std::vector<EdgePair> e2e(n_edges, {-1, -1});
  std::vector<EdgePair> e2l(n_edges, {-1, -1});
  for (std::size_t el = 0; el < element2edges.size(); ++el) {
    for (std::size_t i = 0; i < element2edges[el].size(); ++i) {
      int e = element2edges[el][i];
      if (e < 0 || e >= n_edges)
        throw std::runtime_error("edge index out of range: " + std::to_string(e));
      if (e2e[e][0] < 0) {
        e2e[e] = {static_cast<int>(el), -1};
        e2l[e] = {static_cast<int>(i), -1};
      } else if (e2e[e][1] < 0) {
        e2e[e][1] = static_cast<int>(el);
        e2l[e][1] = static_cast<int>(i);
      } else {
        throw std::runtime_error("non-manifold edge " + std::to_string(e) +
                                 ": more than two adjacent elements");
      }
    }
  }
  return {std::move(e2e), std::move(e2l)};
}

namespace {

// Shared hanging-node machinery for the irregularity/conformity checks.
struct EdgeCensus {
  std::unordered_map<std::int64_t, int> count;  // real-element edge occurrences
  std::unordered_map<std::int64_t, Tri> irregular_by_edge;
};

EdgeCensus census(const std::vector<Tri>& tris, const std::vector<Quad>& quads,
                  const std::vector<Tri>& irregular) {
  EdgeCensus c;
  auto add = [&c](int a, int b) { ++c.count[edge_key(a, b)]; };
  for (const Tri& t : tris) {
    add(t[0], t[1]);
    add(t[1], t[2]);
    add(t[2], t[0]);
  }
  for (const Quad& q : quads) {
    add(q[0], q[1]);
    add(q[1], q[2]);
    add(q[2], q[3]);
    add(q[3], q[0]);
  }
  for (const Tri& v : irregular) c.irregular_by_edge[edge_key(v[0], v[1])] = v;
  return c;
}

// Index nodes on a snapped coordinate grid for midpoint lookups.
struct NodeLocator {
  std::unordered_map<std::int64_t, std::vector<int>> cells;
  const std::vector<Point>* coords = nullptr;
  double tol = 0.0;

  explicit NodeLocator(const std::vector<Point>& c) : coords(&c) {
    double scale = 1.0;
    for (const Point& p : c)
      scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    tol = 1e-12 * scale;
    double cell = std::max(tol * 16.0, 1e-9 * scale);
    inv_cell_ = 1.0 / cell;
    for (std::size_t i = 0; i < c.size(); ++i)
      cells[cell_key(c[i].x, c[i].y)].push_back(static_cast<int>(i));
  }

  std::int64_t cell_key(double x, double y) const {
    auto ix = static_cast<std::int64_t>(std::floor(x * inv_cell_));
    auto iy = static_cast<std::int64_t>(std::floor(y * inv_cell_));
    return ix * 73856093 + iy * 19349663;
  }

  int find(double x, double y) const {
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        auto it = cells.find(cell_key(x + dx / inv_cell_, y + dy / inv_cell_));
        if (it == cells.end()) continue;
        for (int i : it->second) {
          const Point& p = (*coords)[i];
          if (std::abs(p.x - x) <= tol && std::abs(p.y - y) <= tol) return i;
        }
      }
    return -1;
  }

 private:
  double inv_cell_ = 1.0;
};

IrregularCheck check_1_irregular_impl(const std::vector<Point>& coords,
                                      const std::vector<Tri>& tris,
                                      const std::vector<Quad>& quads,
                                      const std::vector<Tri>& irregular) {
  IrregularCheck r;
  EdgeCensus c = census(tris, quads, irregular);
  NodeLocator loc(coords);
  auto flag = [&r](int a, int b) {
    r.ok = false;
    r.violating_edges.push_back({a, b});
  };

  std::unordered_map<std::int64_t, int> irregular_edge_count;
  for (const Tri& v : irregular) ++irregular_edge_count[edge_key(v[0], v[1])];

  for (const Tri& v : irregular) {
    int i = v[0], j = v[1], k = v[2];
    const Point mid{(coords[i].x + coords[j].x) / 2,
                    (coords[i].y + coords[j].y) / 2};
    if (std::abs(coords[k].x - mid.x) > loc.tol ||
        std::abs(coords[k].y - mid.y) > loc.tol)
      flag(i, j);  // recorded hanging node is not the midpoint
    if (irregular_edge_count[edge_key(i, j)] > 1) flag(i, j);
    auto owner = c.count.find(edge_key(i, j));
    if (owner == c.count.end() || owner->second != 1)
      flag(i, j);  // irregular edge must bound exactly one (coarse) element
    // Halves of an irregular edge must themselves be conforming.
    if (irregular_edge_count.count(edge_key(i, k)) ||
        irregular_edge_count.count(edge_key(k, j)))
      flag(i, j);
    if (!c.count.count(edge_key(i, k)) || !c.count.count(edge_key(k, j)))
      flag(i, j);  // fine side missing
  }

  // Unrecorded hanging nodes: a single-occurrence edge whose midpoint is an
  // existing node with both half edges present must appear in `irregular`.
  for (const auto& [key, n] : c.count) {
    if (n != 1) continue;
    int a = static_cast<int>(key >> 32);
    int b = static_cast<int>(key & 0xffffffff);
    int m = loc.find((coords[a].x + coords[b].x) / 2,
                     (coords[a].y + coords[b].y) / 2);
    if (m < 0) continue;
    if (!c.count.count(edge_key(a, m)) || !c.count.count(edge_key(m, b)))
      continue;
    auto it = c.irregular_by_edge.find(key);
    if (it == c.irregular_by_edge.end() || it->second[2] != m) flag(a, b);
  }
  return r;
}

bool check_conforming_impl(const std::vector<Point>& coords,
                           const std::vector<Tri>& tris,
                           const std::vector<Quad>& quads,
                           const std::vector<Tri>& irregular) {
  if (!irregular.empty()) return false;
  EdgeCensus c = census(tris, quads, {});
  NodeLocator loc(coords);
  for (const auto& [key, n] : c.count) {
    if (n != 1) continue;
    int a = static_cast<int>(key >> 32);
    int b = static_cast<int>(key & 0xffffffff);
    int m = loc.find((coords[a].x + coords[b].x) / 2,
                     (coords[a].y + coords[b].y) / 2);
    if (m < 0) continue;
    if (c.count.count(edge_key(a, m)) && c.count.count(edge_key(m, b)))
      return false;  // geometric hanging node
  }
  return true;
}

}  // namespace

IrregularCheck check_1_irregular(const TriMesh& mesh) {
  return check_1_irregular_impl(mesh.coordinates, mesh.elements3, {},
                                mesh.irregular);
}

IrregularCheck check_1_irregular(const QuadMesh& mesh) {
  return check_1_irregular_impl(mesh.coordinates, {}, mesh.elements4,
                                mesh.irregular);
}

bool check_conforming(const TriMesh& mesh) {
  return check_conforming_impl(mesh.coordinates, mesh.elements3, {},
                               mesh.irregular);
}

bool check_conforming(const QuadMesh& mesh) {
  return check_conforming_impl(mesh.coordinates, {}, mesh.elements4,
                               mesh.irregular);
}

bool check_conforming(const MixedMesh& mesh) {
  return check_conforming_impl(mesh.coordinates, mesh.elements3,
                               mesh.elements4, {});
}

double signed_area(const std::vector<Point>& c, const Tri& t) {
  const Point &a = c[t[0]], &b = c[t[1]], &d = c[t[2]];
  return 0.5 * ((b.x - a.x) * (d.y - a.y) - (d.x - a.x) * (b.y - a.y));
}

double signed_area(const std::vector<Point>& c, const Quad& q) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Point &a = c[q[i]], &b = c[q[(i + 1) % 4]];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

double total_area(const TriMesh& mesh) {
  double s = 0.0;
  for (const Tri& t : mesh.elements3) s += signed_area(mesh.coordinates, t);
  return s;
}

double total_area(const QuadMesh& mesh) {
  double s = 0.0;
  for (const Quad& q : mesh.elements4) s += signed_area(mesh.coordinates, q);
  return s;
}

double total_area(const MixedMesh& mesh) {
  double s = 0.0;
  for (const Tri& t : mesh.elements3) s += signed_area(mesh.coordinates, t);
  for (const Quad& q : mesh.elements4) s += signed_area(mesh.coordinates, q);
  return s;
}

namespace {

double tri_min_angle(const std::vector<Point>& c, const Tri& t) {
  double best = 1e300;
  for (int i = 0; i < 3; ++i) {
    const Point &p = c[t[i]], &q = c[t[(i + 1) % 3]], &r = c[t[(i + 2) % 3]];
    double ux = q.x - p.x, uy = q.y - p.y;
    double vx = r.x - p.x, vy = r.y - p.y;
    double nu = std::hypot(ux, uy), nv = std::hypot(vx, vy);
    if (nu == 0.0 || nv == 0.0) throw std::runtime_error("degenerate triangle");
    double cosv = std::clamp((ux * vx + uy * vy) / (nu * nv), -1.0, 1.0);
    best = std::min(best, std::acos(cosv));
  }
  return best;
}

void tri_metrics(const std::vector<Point>& c, const Tri& t, QualityReport* r) {
  double area = signed_area(c, t);
  if (area <= 0.0) throw std::runtime_error("degenerate or flipped triangle");
  double per = 0.0, diam = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Point &p = c[t[i]], &q = c[t[(i + 1) % 3]];
    double len = std::hypot(q.x - p.x, q.y - p.y);
    per += len;
    diam = std::max(diam, len);
  }
  double rho = 2.0 * area / per;
  r->min_angle = std::min(r->min_angle, tri_min_angle(c, t));
  r->max_diam_inradius_ratio = std::max(r->max_diam_inradius_ratio, diam / rho);
}

void quad_metrics(const std::vector<Point>& c, const Quad& q, QualityReport* r) {
  if (signed_area(c, q) <= 0.0)
    throw std::runtime_error("degenerate or flipped quadrilateral");
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Point &a = c[q[i]], &b = c[q[(i + 1) % 4]];
    double len = std::hypot(b.x - a.x, b.y - a.y);
    lo = std::min(lo, len);
    hi = std::max(hi, len);
    const Point& p = c[q[(i + 3) % 4]];
    double ux = b.x - a.x, uy = b.y - a.y;
    double vx = p.x - a.x, vy = p.y - a.y;
    double cosv = (ux * vx + uy * vy) / (std::hypot(ux, uy) * std::hypot(vx, vy));
    r->max_abs_cos = std::max(r->max_abs_cos, std::abs(cosv));
  }
  r->max_edge_ratio = std::max(r->max_edge_ratio, hi / lo);
}

}  // namespace

QualityReport quality_metrics(const TriMesh& mesh) {
  QualityReport r;
  r.min_angle = 1e300;
  for (const Tri& t : mesh.elements3) tri_metrics(mesh.coordinates, t, &r);
  if (mesh.elements3.empty()) r.min_angle = 0.0;
  return r;
}

QualityReport quality_metrics(const QuadMesh& mesh) {
  QualityReport r;
  for (const Quad& q : mesh.elements4) quad_metrics(mesh.coordinates, q, &r);
  return r;
}

QualityReport quality_metrics(const MixedMesh& mesh) {
  QualityReport r;
  r.min_angle = 1e300;
  for (const Tri& t : mesh.elements3) tri_metrics(mesh.coordinates, t, &r);
  if (mesh.elements3.empty()) r.min_angle = 0.0;
  for (const Quad& q : mesh.elements4) quad_metrics(mesh.coordinates, q, &r);
  return r;
}

TriMesh normalize_oldest_first(TriMesh mesh) {
  for (Tri& t : mesh.elements3) {
    int s = static_cast<int>(std::min_element(t.begin(), t.end()) - t.begin());
    std::rotate(t.begin(), t.begin() + s, t.end());
  }
  return mesh;
}

QuadMesh normalize_oldest_first(QuadMesh mesh) {
  for (Quad& q : mesh.elements4) {
    int s = static_cast<int>(std::min_element(q.begin(), q.end()) - q.begin());
    std::rotate(q.begin(), q.begin() + s, q.end());
  }
  return mesh;
}

}  // namespace mesh2d
