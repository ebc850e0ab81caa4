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
#include <unordered_set>
#include <vector>

#include "mesh2d/coarsen_red.hpp"

#include "detail.hpp"

namespace mesh2d {

namespace {

using detail::ekey;

// Edge ids of the full (coarse) edges of all irregular triples. The triples
// are appended to `geom` as virtual elements right after the n_real ones.
std::unordered_set<int> irregular_full_edges(const GeomData& geom,
                                             std::size_t n_irregular) {
  std::unordered_set<int> s;
  for (std::size_t v = 0; v < n_irregular; ++v)
    s.insert(geom.element2edges[geom.n_real + v][0]);
  return s;
}

std::vector<char> boundary_nodes(const GeomData& geom, std::size_t n_nodes) {
  std::vector<char> b(n_nodes, 0);
  for (std::size_t e = 0; e < geom.edge2nodes.size(); ++e) {
    if (geom.edge2elements[e][1] < 0) {
      b[geom.edge2nodes[e][0]] = 1;
      b[geom.edge2nodes[e][1]] = 1;
    }
  }
  return b;
}

}  // namespace

AdmissibleSet q_admissible(const QuadMesh& mesh, const GeomData& geom) {
  (void)geom;
  AdmissibleSet adm;
  const std::size_t n_nodes = mesh.coordinates.size();
  std::vector<std::vector<int>> pos3(n_nodes);
  for (std::size_t el = 0; el < mesh.elements4.size(); ++el) {
    int v = mesh.elements4[el][2];
    if (v >= mesh.n0) pos3[v].push_back(static_cast<int>(el));
  }
  for (std::size_t v = 0; v < n_nodes; ++v) {
    if (pos3[v].size() != 4) continue;
    // Sort counterclockwise around the middle node: the successor of child X
    // shares the edge (X position two, middle), i.e. holds that node at
    // position four.
    std::unordered_map<int, int> by_pos4;
    for (int el : pos3[v]) by_pos4[mesh.elements4[el][3]] = el;
    int start = *std::min_element(pos3[v].begin(), pos3[v].end());
    std::array<int, 4> q{};
    int cur = start;
    bool ok = true;
    for (int i = 0; i < 4; ++i) {
      q[i] = cur;
      auto it = by_pos4.find(mesh.elements4[cur][1]);
      if (it == by_pos4.end()) {
        ok = false;
        break;
      }
      cur = it->second;
    }
    if (!ok || cur != start) continue;
    adm.quartets.push_back(q);
    adm.middle.push_back(static_cast<int>(v));
  }
  return adm;
}

AdmissibleSet t_admissible(const TriMesh& mesh, const GeomData& geom) {
  AdmissibleSet adm;
  const std::size_t n_real = mesh.elements3.size();
  // Oldest node per element (virtual ones included): the minimal index.
  std::vector<int> oldest(geom.element2edges.size());
  for (std::size_t el = 0; el < n_real; ++el) {
    const Tri& t = mesh.elements3[el];
    oldest[el] = std::min({t[0], t[1], t[2]});
  }
  for (std::size_t v = 0; v < mesh.irregular.size(); ++v) {
    const Tri& t = mesh.irregular[v];
    oldest[n_real + v] = std::min({t[0], t[1], t[2]});
  }
  // Per edge, the older of the adjacent elements' oldest nodes.
  std::vector<int> edge_old(geom.edge2nodes.size());
  for (std::size_t e = 0; e < geom.edge2nodes.size(); ++e) {
    const EdgePair& ee = geom.edge2elements[e];
    edge_old[e] = oldest[ee[0]];
    if (ee[1] >= 0) edge_old[e] = std::min(edge_old[e], oldest[ee[1]]);
  }
  for (std::size_t el = 0; el < n_real; ++el) {
    const auto& edges = geom.element2edges[el];
    int v1 = edge_old[edges[0]], v2 = edge_old[edges[1]], v3 = edge_old[edges[2]];
    if (v1 == v2 && v2 == v3) continue;  // not a middle element
    const Tri& t = mesh.elements3[el];
    if (t[0] < mesh.n0 || t[1] < mesh.n0 || t[2] < mesh.n0) continue;
    std::array<int, 4> q{};
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
      const EdgePair& ee = geom.edge2elements[edges[i]];
      int n = (ee[0] == static_cast<int>(el)) ? ee[1] : ee[0];
      if (n < 0 || n >= static_cast<int>(n_real)) ok = false;  // needs 3 direct neighbors
      q[i] = n;
    }
    if (!ok) continue;
    // Validate the recovered parent: the oldest-node edge criterion can
    // misfire when closure cascades created a coarse midpoint after a deeper
    // node in the same call, scrambling the index-vs-level order. A genuine
    // quartet has three distinct parent corners whose edge midpoints are
    // exactly the middle element's nodes.
    std::array<int, 3> parent{};
    for (int c = 0; c < 3; ++c) {
      const Tri& outer = mesh.elements3[q[c]];
      parent[c] = std::min({outer[0], outer[1], outer[2]});
    }
    if (parent[0] == parent[1] || parent[1] == parent[2] ||
        parent[0] == parent[2])
      continue;
    for (int c = 0; c < 3 && ok; ++c) {
      // Outer element c lies across the middle edge (t[c], t[c+1]), so
      // t[c+1] must be the midpoint of the parent edge (parent[c],
      // parent[c+1]).
      const Point& a = mesh.coordinates[parent[c]];
      const Point& b = mesh.coordinates[parent[(c + 1) % 3]];
      const Point& m = mesh.coordinates[t[(c + 1) % 3]];
      double scale = std::max({1.0, std::abs(a.x), std::abs(a.y),
                               std::abs(b.x), std::abs(b.y)});
      ok = std::abs(m.x - 0.5 * (a.x + b.x)) <= 1e-12 * scale &&
           std::abs(m.y - 0.5 * (a.y + b.y)) <= 1e-12 * scale;
    }
    if (!ok) continue;
    q[3] = static_cast<int>(el);
    adm.quartets.push_back(q);
    adm.middle.push_back(static_cast<int>(el));
  }
  return adm;
}

AdmissibleSet mark_filter(const AdmissibleSet& adm, const MarkSet& marked,
                          MarkPolicy policy) {
  std::unordered_set<int> m(marked.begin(), marked.end());
  AdmissibleSet out;
  for (std::size_t i = 0; i < adm.quartets.size(); ++i) {
    const auto& q = adm.quartets[i];
    int hits = 0;
    for (int el : q) hits += m.count(el) ? 1 : 0;
    bool keep = policy == MarkPolicy::AnyOf ? hits > 0 : hits == 4;
    if (keep) {
      out.quartets.push_back(q);
      out.middle.push_back(adm.middle[i]);
    }
  }
  return out;
}

namespace {

AdmissibleSet prune(const AdmissibleSet& adm, const std::vector<char>& alive) {
  AdmissibleSet out;
  for (std::size_t i = 0; i < adm.quartets.size(); ++i) {
    if (!alive[i]) continue;
    out.quartets.push_back(adm.quartets[i]);
    out.middle.push_back(adm.middle[i]);
  }
  return out;
}

void block_irregular_edges(const GeomData& geom, std::size_t n_irregular,
                           const AdmissibleSet& adm, std::vector<char>* alive) {
  std::unordered_set<int> irr = irregular_full_edges(geom, n_irregular);
  if (irr.empty()) return;
  for (std::size_t i = 0; i < adm.quartets.size(); ++i) {
    for (int el : adm.quartets[i]) {
      for (int e : geom.element2edges[el]) {
        if (irr.count(e)) {
          (*alive)[i] = 0;
          break;
        }
      }
      if (!(*alive)[i]) break;
    }
  }
}

}  // namespace

AdmissibleSet q_closure(const QuadMesh& mesh, const GeomData& geom,
                        AdmissibleSet adm) {
  std::vector<char> alive(adm.quartets.size(), 1);
  block_irregular_edges(geom, mesh.irregular.size(), adm, &alive);

  std::vector<char> bnode = boundary_nodes(geom, mesh.coordinates.size());
  std::vector<char> hanging(mesh.coordinates.size(), 0);
  for (const Tri& t : mesh.irregular) hanging[t[2]] = 1;

  // Five-point stencil of a quartet: the middle node (weight 0) plus the four
  // edge midpoints, which sit at positions two/four of the children.
  std::vector<std::array<int, 4>> stencil(adm.quartets.size());
  for (std::size_t i = 0; i < adm.quartets.size(); ++i) {
    for (int c = 0; c < 4; ++c)
      stencil[i][c] = mesh.elements4[adm.quartets[i][c]][1];
  }

  bool changed = true;
  while (changed) {
    changed = false;
    std::unordered_map<int, int> shared;
    for (std::size_t i = 0; i < adm.quartets.size(); ++i)
      if (alive[i])
        for (int m : stencil[i]) ++shared[m];
    for (std::size_t i = 0; i < adm.quartets.size(); ++i) {
      if (!alive[i]) continue;
      int sum = 0;
      for (int m : stencil[i])
        sum += (hanging[m] || bnode[m] || shared[m] >= 2) ? 2 : 1;
      if (sum <= 5) {
        alive[i] = 0;
        changed = true;
      }
    }
  }
  return prune(adm, alive);
}

AdmissibleSet t_closure(const TriMesh& mesh, const GeomData& geom,
                        AdmissibleSet adm, bool two_neighbor_rule) {
  std::vector<char> alive(adm.quartets.size(), 1);
  block_irregular_edges(geom, mesh.irregular.size(), adm, &alive);

  if (two_neighbor_rule) {
    std::vector<char> bnode = boundary_nodes(geom, mesh.coordinates.size());
    std::vector<char> hanging(mesh.coordinates.size(), 0);
    for (const Tri& t : mesh.irregular) hanging[t[2]] = 1;
    bool changed = true;
    while (changed) {
      changed = false;
      std::unordered_map<int, int> shared;
      for (std::size_t i = 0; i < adm.quartets.size(); ++i)
        if (alive[i])
          for (int m : mesh.elements3[adm.middle[i]]) ++shared[m];
      for (std::size_t i = 0; i < adm.quartets.size(); ++i) {
        if (!alive[i]) continue;
        int sum = 0;
        for (int m : mesh.elements3[adm.middle[i]])
          sum += (hanging[m] || bnode[m] || shared[m] >= 2) ? 2 : 1;
        if (sum <= 4) {
          alive[i] = 0;
          changed = true;
        }
      }
    }
  }
  return prune(adm, alive);
}

namespace {

struct Candidate {
  int a, b, m;  // edge (a, b) with midpoint m
};

// Resolve parent-edge candidates against the existing irregular table:
// duplicated candidates cancel (both sides became coarse), surviving boundary
// candidates drop their midpoint, the rest stay as hanging nodes.
struct UpdateResult {
  std::vector<Tri> irregular;
  std::vector<char> eliminate;  // nodes to delete
};

UpdateResult resolve_candidates(const std::vector<Candidate>& cands,
                                const GeomData& geom, std::size_t n_nodes,
                                const std::vector<int>& always_eliminate) {
  UpdateResult r;
  r.eliminate.assign(n_nodes, 0);
  for (int v : always_eliminate) r.eliminate[v] = 1;

  std::unordered_map<std::int64_t, int> edge_id;
  for (std::size_t e = 0; e < geom.edge2nodes.size(); ++e)
    edge_id[ekey(geom.edge2nodes[e][0], geom.edge2nodes[e][1])] =
        static_cast<int>(e);

  std::unordered_map<std::int64_t, int> count;
  for (const Candidate& c : cands) ++count[ekey(c.a, c.b)];
  std::unordered_set<std::int64_t> emitted;
  for (const Candidate& c : cands) {
    std::int64_t key = ekey(c.a, c.b);
    if (count[key] == 2) {  // both sides coarse again: node disappears
      r.eliminate[c.m] = 1;
      continue;
    }
    if (count[key] != 1)
      throw std::runtime_error("inconsistent parent-edge candidates");
    // A half edge that was single-occurrence lies on the domain boundary.
    auto it = edge_id.find(ekey(c.a, c.m));
    bool boundary = it != edge_id.end() &&
                    geom.edge2elements[it->second][1] < 0;
    if (boundary) {
      r.eliminate[c.m] = 1;
    } else if (emitted.insert(key).second) {
      r.irregular.push_back({std::min(c.a, c.b), std::max(c.a, c.b), c.m});
    }
  }
  return r;
}

using detail::compact_nodes;

std::vector<EdgePair> merge_boundary(const std::vector<EdgePair>& boundary,
                                     const std::vector<char>& eliminate,
                                     const std::unordered_map<int, EdgePair>&
                                         parent_edge_of_midpoint) {
  std::vector<EdgePair> out;
  out.reserve(boundary.size());
  for (const EdgePair& bp : boundary) {
    if (eliminate[bp[0]]) continue;  // second half of a merged edge
    if (eliminate[bp[1]]) {
      auto it = parent_edge_of_midpoint.find(bp[1]);
      if (it == parent_edge_of_midpoint.end()) continue;
      const EdgePair& pe = it->second;
      out.push_back({bp[0], pe[0] == bp[0] ? pe[1] : pe[0]});
    } else {
      out.push_back(bp);
    }
  }
  return out;
}

}  // namespace

QuadMesh update_mesh(const QuadMesh& mesh, const GeomData& geom,
                     const AdmissibleSet& adm) {
  std::vector<char> removed(mesh.elements4.size(), 0);
  std::vector<int> slot(mesh.elements4.size(), -1);  // quartet at min child
  std::vector<Quad> parents(adm.quartets.size());
  std::vector<Candidate> cands;
  std::vector<int> always_elim;
  std::unordered_map<int, EdgePair> parent_edge_of_midpoint;
  for (std::size_t i = 0; i < adm.quartets.size(); ++i) {
    const auto& q = adm.quartets[i];
    int first = *std::min_element(q.begin(), q.end());
    for (int el : q) removed[el] = 1;
    slot[first] = static_cast<int>(i);
    always_elim.push_back(adm.middle[i]);
    Quad parent;
    for (int c = 0; c < 4; ++c) parent[c] = mesh.elements4[q[c]][0];
    parents[i] = parent;
    for (int c = 0; c < 4; ++c) {
      int mid = mesh.elements4[q[c]][1];  // midpoint between corners c, c+1
      cands.push_back({parent[c], parent[(c + 1) % 4], mid});
      parent_edge_of_midpoint[mid] = {parent[c], parent[(c + 1) % 4]};
    }
  }
  for (const Tri& t : mesh.irregular) cands.push_back({t[0], t[1], t[2]});

  UpdateResult res =
      resolve_candidates(cands, geom, mesh.coordinates.size(), always_elim);

  QuadMesh out;
  out.coordinates = mesh.coordinates;
  out.n0 = mesh.n0;
  out.irregular = std::move(res.irregular);
  for (std::size_t el = 0; el < mesh.elements4.size(); ++el) {
    if (slot[el] >= 0)
      out.elements4.push_back(parents[slot[el]]);
    else if (!removed[el])
      out.elements4.push_back(mesh.elements4[el]);
  }
  out.boundary =
      merge_boundary(mesh.boundary, res.eliminate, parent_edge_of_midpoint);
  compact_nodes(out, res.eliminate, mesh.n0);
  return normalize_oldest_first(std::move(out));
}

TriMesh update_mesh(const TriMesh& mesh, const GeomData& geom,
                    const AdmissibleSet& adm) {
  std::vector<char> removed(mesh.elements3.size(), 0);
  std::vector<int> slot(mesh.elements3.size(), -1);
  std::vector<Tri> parents(adm.quartets.size());
  std::vector<Candidate> cands;
  std::unordered_map<int, EdgePair> parent_edge_of_midpoint;
  for (std::size_t i = 0; i < adm.quartets.size(); ++i) {
    const auto& q = adm.quartets[i];
    int first = *std::min_element(q.begin(), q.end());
    for (int el : q) removed[el] = 1;
    slot[first] = static_cast<int>(i);
    Tri parent;
    for (int c = 0; c < 3; ++c) {
      const Tri& outer = mesh.elements3[q[c]];
      parent[c] = std::min({outer[0], outer[1], outer[2]});
    }
    parents[i] = parent;
    const Tri& middle = mesh.elements3[q[3]];
    // Outer element c lies across the middle edge (middle[c], middle[c+1]),
    // so middle[c+1] is the midpoint of parent edge (parent[c], parent[c+1]).
    for (int c = 0; c < 3; ++c) {
      int mid = middle[(c + 1) % 3];
      cands.push_back({parent[c], parent[(c + 1) % 3], mid});
      parent_edge_of_midpoint[mid] = {parent[c], parent[(c + 1) % 3]};
    }
  }
  for (const Tri& t : mesh.irregular) cands.push_back({t[0], t[1], t[2]});

  UpdateResult res =
      resolve_candidates(cands, geom, mesh.coordinates.size(), {});

  TriMesh out;
  out.coordinates = mesh.coordinates;
  out.n0 = mesh.n0;
  out.irregular = std::move(res.irregular);
  for (std::size_t el = 0; el < mesh.elements3.size(); ++el) {
    if (slot[el] >= 0)
      out.elements3.push_back(parents[slot[el]]);
    else if (!removed[el])
      out.elements3.push_back(mesh.elements3[el]);
  }
  out.boundary =
      merge_boundary(mesh.boundary, res.eliminate, parent_edge_of_midpoint);
  compact_nodes(out, res.eliminate, mesh.n0);
  return normalize_oldest_first(std::move(out));
}

QuadMesh coarsen_r(const QuadMesh& mesh, const MarkSet& marked,
                   MarkPolicy policy) {
  QuadMesh m = normalize_oldest_first(mesh);
  GeomData geom = provide_geometric_data(m);
  AdmissibleSet adm = q_admissible(m, geom);
  adm = mark_filter(adm, marked, policy);
  adm = q_closure(m, geom, std::move(adm));
  return update_mesh(m, geom, adm);
}

TriMesh coarsen_r(const TriMesh& mesh, const MarkSet& marked,
                  MarkPolicy policy, bool two_neighbor_rule) {
  TriMesh m = normalize_oldest_first(mesh);
  GeomData geom = provide_geometric_data(m);
  AdmissibleSet adm = t_admissible(m, geom);
  adm = mark_filter(adm, marked, policy);
  adm = t_closure(m, geom, std::move(adm), two_neighbor_rule);
  return update_mesh(m, geom, adm);
}

}  // namespace mesh2d
