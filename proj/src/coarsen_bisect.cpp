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
#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "mesh2d/coarsen_bisect.hpp"

#include "detail.hpp"

namespace mesh2d {

namespace {

using detail::compact_nodes;
using detail::contract_boundary;
using detail::ekey;

std::vector<std::vector<int>> node2elements(const TriMesh& mesh) {
  std::vector<std::vector<int>> adj(mesh.coordinates.size());
  for (std::size_t el = 0; el < mesh.elements3.size(); ++el)
    for (int v : mesh.elements3[el]) adj[v].push_back(static_cast<int>(el));
  return adj;
}

std::vector<char> marked_nodes(const TriMesh& mesh, const MarkSet& marked) {
  std::vector<char> mn(mesh.coordinates.size(), 0);
  for (int m : marked) {
    if (m < 0 || static_cast<std::size_t>(m) >= mesh.elements3.size())
      throw std::out_of_range("marked element index out of range");
    for (int v : mesh.elements3[m]) mn[v] = 1;
  }
  return mn;
}

// Sibling pairs around an eliminable newest node. Same-parent siblings stay
// storage-adjacent across refinement and coarsening rounds, so the pairs are
// the storage-consecutive runs (T, U) with U holding T's first node at
// position two; the parent is then (T2, U1, T1).
bool pair_siblings(const std::vector<Tri>& elements3, std::vector<int> els,
                   std::vector<std::array<int, 2>>* pairs) {
  if (els.size() % 2) return false;
  std::sort(els.begin(), els.end());
  for (std::size_t k = 0; k < els.size(); k += 2) {
    int t = els[k], u = els[k + 1];
    if (u != t + 1 || elements3[u][1] != elements3[t][0]) return false;
    // The merged node bisects the parent edge (T1, U0), so it must be newer
    // than both endpoints. The apex T0 may be newer: closure refinement can
    // allocate it later within the same call.
    int v = elements3[t][2];
    if (elements3[u][2] != v || v < elements3[t][1] || v < elements3[u][0])
      return false;
    pairs->push_back({t, u});
  }
  return true;
}

// Replace grouped elements by their replacement lists, each placed at the
// group's earliest member position; ungrouped elements keep their order.
std::vector<Tri> rebuild(const std::vector<Tri>& elements3,
                         const std::vector<int>& gid,
                         const std::vector<int>& leader,
                         const std::vector<std::vector<Tri>>& repl) {
  std::vector<Tri> out;
  out.reserve(elements3.size());
  for (std::size_t el = 0; el < elements3.size(); ++el) {
    int g = gid[el];
    if (g < 0)
      out.push_back(elements3[el]);
    else if (static_cast<int>(el) == leader[g])
      out.insert(out.end(), repl[g].begin(), repl[g].end());
  }
  return out;
}

}  // namespace

TriMesh coarsen_nvb(const TriMesh& mesh, const MarkSet& marked, int n0) {
  if (n0 < 0) n0 = mesh.n0;
  if (!mesh.irregular.empty())
    throw std::runtime_error("bisection coarsening expects a conforming mesh");
  std::vector<char> mn = marked_nodes(mesh, marked);
  if (marked.empty()) return mesh;

  const auto adj = node2elements(mesh);
  const std::size_t n_nodes = mesh.coordinates.size();
  std::vector<int> gid(mesh.elements3.size(), -1);
  std::vector<int> leader;
  std::vector<std::vector<Tri>> repl;
  std::vector<char> elim(n_nodes, 0);

  for (std::size_t v = n0; v < n_nodes; ++v) {
    if (!mn[v]) continue;
    const auto& a = adj[v];
    if (a.size() != 2 && a.size() != 4) continue;  // blocked
    bool newest_everywhere = true;
    for (int el : a)
      if (mesh.elements3[el][2] != static_cast<int>(v)) {
        newest_everywhere = false;
        break;
      }
    if (!newest_everywhere) continue;
    std::vector<std::array<int, 2>> pairs;
    if (!pair_siblings(mesh.elements3, a, &pairs)) continue;
    elim[v] = 1;
    for (const auto& [t, u] : pairs) {
      int g = static_cast<int>(repl.size());
      gid[t] = gid[u] = g;
      leader.push_back(std::min(t, u));
      repl.push_back(
          {{mesh.elements3[t][1], mesh.elements3[u][0], mesh.elements3[t][0]}});
    }
  }

  TriMesh out;
  out.coordinates = mesh.coordinates;
  out.n0 = mesh.n0;
  out.elements3 = rebuild(mesh.elements3, gid, leader, repl);
  out.boundary = contract_boundary(mesh.boundary, elim);
  compact_nodes(out, elim, n0);
  return out;
}

namespace {

// A red quartet recognized through its middle element M = (m23, m31, m12):
// across each middle edge sits the child holding the opposite parent corner.
struct RedQuartet {
  int a, b, c, m;  // children: v1 corner, v2 corner, v3 corner, middle
  int v1, v2, v3;
  int m12, m23, m31;
};

// Which midpoints a quartet may shed, given the eliminable-node set: all
// three return the parent; the two non-reference midpoints leave a green
// pair; one of them leaves the corresponding blue pattern. The reference-edge
// midpoint alone can never go.
constexpr unsigned kM12 = 1, kM23 = 2, kM31 = 4;

unsigned clamp_action(const RedQuartet& q, const std::vector<char>& in_f) {
  bool f12 = in_f[q.m12], f23 = in_f[q.m23], f31 = in_f[q.m31];
  if (f12 && f23 && f31) return kM12 | kM23 | kM31;
  if (f23 && f31) return kM23 | kM31;
  if (f23) return kM23;
  if (f31) return kM31;
  return 0;
}

}  // namespace

TriMesh coarsen_rgb(const TriMesh& mesh, const MarkSet& marked, int n0) {
  if (n0 < 0) n0 = mesh.n0;
  if (!mesh.irregular.empty())
    throw std::runtime_error("bisection coarsening expects a conforming mesh");
  std::vector<char> mn = marked_nodes(mesh, marked);
  if (marked.empty()) return mesh;

  const auto adj = node2elements(mesh);
  const std::size_t n_nodes = mesh.coordinates.size();
  const std::size_t n_el = mesh.elements3.size();

  std::unordered_map<std::int64_t, std::vector<int>> by_edge;
  for (std::size_t el = 0; el < n_el; ++el) {
    const Tri& t = mesh.elements3[el];
    for (int k = 0; k < 3; ++k)
      by_edge[ekey(t[k], t[(k + 1) % 3])].push_back(static_cast<int>(el));
  }
  auto across = [&](int el, int x, int y) {
    for (int e : by_edge[ekey(x, y)])
      if (e != el) return e;
    return -1;
  };

  std::vector<int> quartet_of(n_el, -1);
  std::vector<RedQuartet> quartets;
  for (std::size_t el = 0; el < n_el; ++el) {
    if (quartet_of[el] >= 0) continue;
    const Tri& t = mesh.elements3[el];  // middle candidate (m23, m31, m12)
    if (std::min({t[0], t[1], t[2]}) < n0) continue;
    int c = across(static_cast<int>(el), t[0], t[1]);  // v3 child
    int a = across(static_cast<int>(el), t[1], t[2]);  // v1 child
    int b = across(static_cast<int>(el), t[2], t[0]);  // v2 child
    if (a < 0 || b < 0 || c < 0) continue;
    if (quartet_of[a] >= 0 || quartet_of[b] >= 0 || quartet_of[c] >= 0)
      continue;
    const Tri &ta = mesh.elements3[a], &tb = mesh.elements3[b],
              &tc = mesh.elements3[c];
    if (tc[0] != t[1] || tc[1] != t[0]) continue;
    if (ta[1] != t[2] || ta[2] != t[1]) continue;
    if (tb[0] != t[2] || tb[2] != t[0]) continue;
    // Age check against positional coincidences: the middle element consists
    // of the parent-edge midpoints, which are all newer than the corners.
    if (std::max({ta[0], tb[1], tc[2]}) > std::min({t[0], t[1], t[2]}))
      continue;
    RedQuartet q{a,     b,     c,     static_cast<int>(el), ta[0],
                 tb[1], tc[2], t[2],  t[0],                 t[1]};
    int qi = static_cast<int>(quartets.size());
    quartet_of[a] = quartet_of[b] = quartet_of[c] = qi;
    quartet_of[el] = qi;
    quartets.push_back(q);
  }

  // Eliminable-node fixpoint: a node stays only while every adjacent element
  // either sheds it through its quartet's action or merges away in a sibling
  // pair; dropping a node can weaken a quartet's action, so iterate.
  std::vector<char> in_f(n_nodes, 0);
  for (std::size_t v = n0; v < n_nodes; ++v) in_f[v] = mn[v];
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = n0; v < n_nodes; ++v) {
      if (!in_f[v]) continue;
      bool covered = true;
      std::vector<int> free_els;
      for (int el : adj[v]) {
        int qi = quartet_of[el];
        if (qi >= 0) {
          const RedQuartet& q = quartets[qi];
          unsigned act = clamp_action(q, in_f);
          unsigned bit = (static_cast<int>(v) == q.m12)   ? kM12
                         : (static_cast<int>(v) == q.m23) ? kM23
                         : (static_cast<int>(v) == q.m31) ? kM31
                                                          : 0;
          if (!(act & bit)) {
            covered = false;
            break;
          }
        } else {
          if (mesh.elements3[el][2] != static_cast<int>(v)) {
            covered = false;
            break;
          }
          free_els.push_back(el);
        }
      }
      if (covered && !free_els.empty()) {
        std::vector<std::array<int, 2>> pairs;
        covered = pair_siblings(mesh.elements3, free_els, &pairs);
      }
      if (!covered) {
        in_f[v] = 0;
        changed = true;
      }
    }
  }

  std::vector<int> gid(n_el, -1);
  std::vector<int> leader;
  std::vector<std::vector<Tri>> repl;
  for (const RedQuartet& q : quartets) {
    unsigned act = clamp_action(q, in_f);
    if (!act) continue;
    int g = static_cast<int>(repl.size());
    gid[q.a] = gid[q.b] = gid[q.c] = gid[q.m] = g;
    leader.push_back(std::min({q.a, q.b, q.c, q.m}));
    if (act == (kM12 | kM23 | kM31))
      repl.push_back({{q.v1, q.v2, q.v3}});
    else if (act == (kM23 | kM31))
      repl.push_back({{q.v3, q.v1, q.m12}, {q.v2, q.v3, q.m12}});
    else if (act == kM23)  // blue, second split toward v3-v1
      repl.push_back(
          {{q.m12, q.v3, q.m31}, {q.v1, q.m12, q.m31}, {q.v2, q.v3, q.m12}});
    else  // act == kM31: blue, second split toward v2-v3
      repl.push_back(
          {{q.v3, q.v1, q.m12}, {q.m12, q.v2, q.m23}, {q.v3, q.m12, q.m23}});
  }
  std::vector<char> elim(n_nodes, 0);
  for (std::size_t v = n0; v < n_nodes; ++v) {
    if (!in_f[v]) continue;
    elim[v] = 1;
    std::vector<int> free_els;
    for (int el : adj[v])
      if (quartet_of[el] < 0) free_els.push_back(el);
    std::vector<std::array<int, 2>> pairs;
    if (!pair_siblings(mesh.elements3, free_els, &pairs))
      throw std::runtime_error("sibling pairing lost during fixpoint");
    for (const auto& [t, u] : pairs) {
      int g = static_cast<int>(repl.size());
      gid[t] = gid[u] = g;
      leader.push_back(std::min(t, u));
      repl.push_back(
          {{mesh.elements3[t][1], mesh.elements3[u][0], mesh.elements3[t][0]}});
    }
  }

  TriMesh out;
  out.coordinates = mesh.coordinates;
  out.n0 = mesh.n0;
  out.elements3 = rebuild(mesh.elements3, gid, leader, repl);
  out.boundary = contract_boundary(mesh.boundary, elim);
  compact_nodes(out, elim, n0);
  return out;
}

}  // namespace mesh2d
