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

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "mesh2d/refine.hpp"

namespace mesh2d {

namespace {

inline std::int64_t ekey(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

struct RedContext {
  std::vector<std::vector<int>> elem_nodes;  // vertex cycles of real elements
  std::unordered_map<std::int64_t, EdgePair> adj;      // edge -> real elements
  std::unordered_map<std::int64_t, int> irr_by_edge;   // full edge -> irr idx
  std::unordered_map<std::int64_t, int> half_owner;    // half edge -> owner el
  std::vector<char> refine;

  void build(const std::vector<Tri>& irregular) {
    for (std::size_t el = 0; el < elem_nodes.size(); ++el) {
      const auto& cyc = elem_nodes[el];
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        auto [it, fresh] =
            adj.try_emplace(ekey(cyc[i], cyc[(i + 1) % cyc.size()]),
                            EdgePair{static_cast<int>(el), -1});
        if (!fresh) {
          if (it->second[1] >= 0)
            throw std::runtime_error("non-manifold edge in refinement input");
          it->second[1] = static_cast<int>(el);
        }
      }
    }
    for (std::size_t v = 0; v < irregular.size(); ++v) {
      const Tri& t = irregular[v];
      irr_by_edge[ekey(t[0], t[1])] = static_cast<int>(v);
      auto it = adj.find(ekey(t[0], t[1]));
      if (it == adj.end() || it->second[0] < 0 || it->second[1] >= 0)
        throw std::runtime_error("irregular edge without unique coarse owner");
      half_owner[ekey(t[0], t[2])] = it->second[0];
      half_owner[ekey(t[2], t[1])] = it->second[0];
    }
  }

  int neighbor_of(std::int64_t key, int self) const {
    auto it = adj.find(key);
    if (it == adj.end()) return -1;
    if (it->second[0] == self) return it->second[1];
    return it->second[0];
  }

  // Mark for refinement; propagate the 1-Irregular Rule (an element whose
  // edge is half of a hanging edge forces the coarse owner to refine).
  void mark(int el) {
    if (refine[el]) return;
    refine[el] = 1;
    const auto& cyc = elem_nodes[el];
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      auto it = half_owner.find(ekey(cyc[i], cyc[(i + 1) % cyc.size()]));
      if (it != half_owner.end()) mark(it->second);
    }
  }

  // d-Neighbor Rule to fixpoint: refine any unrefined element with >= d
  // edges facing a refined or already-finer neighbor.
  void close_neighbors(int d) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t el = 0; el < elem_nodes.size(); ++el) {
        if (refine[el]) continue;
        int cnt = 0;
        const auto& cyc = elem_nodes[el];
        for (std::size_t i = 0; i < cyc.size(); ++i) {
          std::int64_t key = ekey(cyc[i], cyc[(i + 1) % cyc.size()]);
          if (irr_by_edge.count(key)) {
            ++cnt;
            continue;
          }
          int n = neighbor_of(key, static_cast<int>(el));
          if (n >= 0 && refine[n]) ++cnt;
        }
        if (cnt >= d) {
          mark(static_cast<int>(el));
          changed = true;
        }
      }
    }
  }
};

// Assign midpoints for all edges of refined elements; reuse hanging nodes.
struct MidpointTable {
  std::unordered_map<std::int64_t, int> node;
  int lookup(std::int64_t key) const {
    auto it = node.find(key);
    return it == node.end() ? -1 : it->second;
  }
};

template <typename MeshT>
void rebuild_irregular_and_boundary(MeshT& out, const MeshT& in,
                                    const RedContext& ctx,
                                    const MidpointTable& mids) {
  out.irregular.clear();
  for (const Tri& t : in.irregular) {
    int owner = ctx.adj.at(ekey(t[0], t[1]))[0];
    if (!ctx.refine[owner]) out.irregular.push_back(t);
  }
  for (std::size_t el = 0; el < ctx.elem_nodes.size(); ++el) {
    if (!ctx.refine[el]) continue;
    const auto& cyc = ctx.elem_nodes[el];
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      std::int64_t key = ekey(a, b);
      if (ctx.irr_by_edge.count(key)) continue;  // consumed hanging node
      int n = ctx.neighbor_of(key, static_cast<int>(el));
      int m = mids.lookup(key);
      if (n >= 0) {
        if (!ctx.refine[n])
          out.irregular.push_back({std::min(a, b), std::max(a, b), m});
      } else if (ctx.half_owner.count(key)) {
        // Edge was half of a hanging edge; the forced owner refines, and its
        // new child stays one level coarser than our children.
        out.irregular.push_back({std::min(a, b), std::max(a, b), m});
      }
    }
  }
  out.boundary.clear();
  for (const EdgePair& bp : in.boundary) {
    int m = mids.lookup(ekey(bp[0], bp[1]));
    if (m >= 0) {
      out.boundary.push_back({bp[0], m});
      out.boundary.push_back({m, bp[1]});
    } else {
      out.boundary.push_back(bp);
    }
  }
}

void check_marked(const MarkSet& marked, std::size_t n) {
  for (int m : marked)
    if (m < 0 || static_cast<std::size_t>(m) >= n)
      throw std::out_of_range("marked element index out of range");
}

}  // namespace

TriMesh trefine_r(const TriMesh& mesh, const MarkSet& marked,
                  bool two_neighbor_rule, RefineTrace* trace) {
  check_marked(marked, mesh.elements3.size());
  RedContext ctx;
  ctx.elem_nodes.reserve(mesh.elements3.size());
  for (const Tri& t : mesh.elements3) ctx.elem_nodes.push_back({t[0], t[1], t[2]});
  ctx.refine.assign(mesh.elements3.size(), 0);
  ctx.build(mesh.irregular);
  for (int m : marked) ctx.mark(m);
  if (two_neighbor_rule) ctx.close_neighbors(2);

  TriMesh out;
  out.coordinates = mesh.coordinates;
  out.n0 = mesh.n0;
  MidpointTable mids;
  for (const Tri& t : mesh.irregular) mids.node[ekey(t[0], t[1])] = t[2];
  auto midpoint = [&](int a, int b) {
    auto [it, fresh] = mids.node.try_emplace(ekey(a, b), 0);
    if (fresh) {
      it->second = static_cast<int>(out.coordinates.size());
      out.coordinates.push_back({(mesh.coordinates[a].x + mesh.coordinates[b].x) / 2,
                                 (mesh.coordinates[a].y + mesh.coordinates[b].y) / 2});
    }
    return it->second;
  };
  if (trace) {
    trace->origin.clear();
    trace->is_child.clear();
  }
  for (std::size_t el = 0; el < mesh.elements3.size(); ++el) {
    const Tri& t = mesh.elements3[el];
    if (!ctx.refine[el]) {
      out.elements3.push_back(t);
      if (trace) {
        trace->origin.push_back(static_cast<int>(el));
        trace->is_child.push_back(0);
      }
      continue;
    }
    int m01 = midpoint(t[0], t[1]);
    int m12 = midpoint(t[1], t[2]);
    int m20 = midpoint(t[2], t[0]);
    Tri kids[4] = {{t[0], m01, m20},
                   {t[1], m12, m01},
                   {t[2], m20, m12},
                   {m01, m12, m20}};
    for (Tri& k : kids) {
      int s = static_cast<int>(std::min_element(k.begin(), k.end()) - k.begin());
      std::rotate(k.begin(), k.begin() + s, k.end());
      out.elements3.push_back(k);
      if (trace) {
        trace->origin.push_back(static_cast<int>(el));
        trace->is_child.push_back(1);
      }
    }
  }
  rebuild_irregular_and_boundary(out, mesh, ctx, mids);
  return out;
}

QuadMesh qrefine_r(const QuadMesh& mesh, const MarkSet& marked,
                   RefineTrace* trace) {
  check_marked(marked, mesh.elements4.size());
  RedContext ctx;
  ctx.elem_nodes.reserve(mesh.elements4.size());
  for (const Quad& q : mesh.elements4)
    ctx.elem_nodes.push_back({q[0], q[1], q[2], q[3]});
  ctx.refine.assign(mesh.elements4.size(), 0);
  ctx.build(mesh.irregular);
  for (int m : marked) ctx.mark(m);
  ctx.close_neighbors(3);

  QuadMesh out;
  out.coordinates = mesh.coordinates;
  out.n0 = mesh.n0;
  MidpointTable mids;
  for (const Tri& t : mesh.irregular) mids.node[ekey(t[0], t[1])] = t[2];
  auto midpoint = [&](int a, int b) {
    auto [it, fresh] = mids.node.try_emplace(ekey(a, b), 0);
    if (fresh) {
      it->second = static_cast<int>(out.coordinates.size());
      out.coordinates.push_back({(mesh.coordinates[a].x + mesh.coordinates[b].x) / 2,
                                 (mesh.coordinates[a].y + mesh.coordinates[b].y) / 2});
    }
    return it->second;
  };
  if (trace) {
    trace->origin.clear();
    trace->is_child.clear();
  }
  for (std::size_t el = 0; el < mesh.elements4.size(); ++el) {
    const Quad& q = mesh.elements4[el];
    if (!ctx.refine[el]) {
      out.elements4.push_back(q);
      if (trace) {
        trace->origin.push_back(static_cast<int>(el));
        trace->is_child.push_back(0);
      }
      continue;
    }
    int m[4];
    for (int i = 0; i < 4; ++i) m[i] = midpoint(q[i], q[(i + 1) % 4]);
    int z = static_cast<int>(out.coordinates.size());
    out.coordinates.push_back(
        {(mesh.coordinates[q[0]].x + mesh.coordinates[q[1]].x +
          mesh.coordinates[q[2]].x + mesh.coordinates[q[3]].x) /
             4,
         (mesh.coordinates[q[0]].y + mesh.coordinates[q[1]].y +
          mesh.coordinates[q[2]].y + mesh.coordinates[q[3]].y) /
             4});
    for (int i = 0; i < 4; ++i) {
      // Child at corner i: corner, next midpoint, center, previous midpoint.
      out.elements4.push_back({q[i], m[i], z, m[(i + 3) % 4]});
      if (trace) {
        trace->origin.push_back(static_cast<int>(el));
        trace->is_child.push_back(1);
      }
    }
  }
  rebuild_irregular_and_boundary(out, mesh, ctx, mids);
  return out;
}

}  // namespace mesh2d
