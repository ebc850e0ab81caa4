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

#include "mesh2d/coarsen_regular.hpp"

#include "detail.hpp"

namespace mesh2d {

namespace {

using detail::compact_nodes;
using detail::ekey;

Quad rot(const Quad& q, int r) {
  return {q[r & 3], q[(r + 1) & 3], q[(r + 2) & 3], q[(r + 3) & 3]};
}

// A pattern midpoint and the parent edge (a, b) it sits on. After all parents
// are known, the midpoint either survives as a hanging node (it is still a
// corner of some element) or is deleted together with the pattern.
struct PendingMid {
  int a;
  int b;
  int m;
};

template <typename MeshT>
void resolve_midpoints(MeshT& mesh, const std::vector<PendingMid>& mids,
                       std::size_t n_nodes,
                       std::vector<char> elim = {}) {
  std::vector<char> used(n_nodes, 0);
  auto scan = [&used](const auto& list) {
    for (const auto& el : list)
      for (int v : el) used[v] = 1;
  };
  if constexpr (requires { mesh.elements3; }) scan(mesh.elements3);
  if constexpr (requires { mesh.elements4; }) scan(mesh.elements4);
  elim.resize(n_nodes, 0);
  for (const PendingMid& pm : mids) {
    if (used[pm.m])
      mesh.irregular.push_back({pm.a, pm.b, pm.m});
    else
      elim[pm.m] = 1;
  }
  mesh.boundary = detail::contract_boundary(mesh.boundary, elim);
  compact_nodes(mesh, elim, mesh.n0);
}

MarkSet transfer_marks(const MarkSet& marked, const std::vector<int>& new_id,
                       std::size_t n_elements) {
  std::unordered_set<int> out;
  for (int m : marked) {
    if (m < 0 || static_cast<std::size_t>(m) >= n_elements)
      throw std::out_of_range("marked element index out of range");
    out.insert(new_id[m]);
  }
  MarkSet res(out.begin(), out.end());
  std::sort(res.begin(), res.end());
  return res;
}

}  // namespace

RecoarsenTriResult recoarsen_green_tri(const TriMesh& mesh,
                                       const MarkSet& marked) {
  if (!mesh.irregular.empty())
    throw std::runtime_error("recoarsen expects a conforming mesh");
  const std::size_t n_el = mesh.elements3.size();
  if (mesh.n_green < 0 || mesh.n_green % 2 ||
      static_cast<std::size_t>(mesh.n_green) > n_el)
    throw std::runtime_error("invalid green block length");
  const std::size_t n_red = n_el - mesh.n_green;

  TriMesh out;
  out.coordinates = mesh.coordinates;
  out.boundary = mesh.boundary;
  out.n0 = mesh.n0;
  out.elements3.assign(mesh.elements3.begin(), mesh.elements3.begin() + n_red);

  std::vector<int> new_id(n_el);
  for (std::size_t i = 0; i < n_red; ++i) new_id[i] = static_cast<int>(i);
  std::vector<PendingMid> mids;
  for (std::size_t p = n_red; p < n_el; p += 2) {
    const Tri& t1 = mesh.elements3[p];
    const Tri& t2 = mesh.elements3[p + 1];
    if (t1[2] != t2[2] || t2[1] != t1[0])
      throw std::runtime_error("malformed green triangle pair");
    Tri parent{t1[1], t2[0], t1[0]};
    int pid = static_cast<int>(out.elements3.size());
    out.elements3.push_back(parent);
    new_id[p] = new_id[p + 1] = pid;
    mids.push_back({parent[0], parent[1], t1[2]});
  }

  MarkSet pm = transfer_marks(marked, new_id, n_el);
  resolve_midpoints(out, mids, mesh.coordinates.size());
  return {std::move(out), std::move(pm)};
}

RecoarsenQuadResult recoarsen_green_quad(const MixedMesh& mesh,
                                         const MarkSet& marked) {
  const std::size_t nq = mesh.elements4.size();
  const std::size_t nt = mesh.elements3.size();
  if (mesh.n_green4 < 0 || mesh.n_green4 % 2 ||
      static_cast<std::size_t>(mesh.n_green4) > nq)
    throw std::runtime_error("invalid green quadrilateral block length");
  const std::size_t n_red = nq - mesh.n_green4;

  QuadMesh out;
  out.coordinates = mesh.coordinates;
  out.boundary = mesh.boundary;
  out.n0 = mesh.n0;
  out.elements4.assign(mesh.elements4.begin(), mesh.elements4.begin() + n_red);

  // Element ids of the mixed mesh: quadrilaterals first, then triangles.
  std::vector<int> new_id(nq + nt, -1);
  for (std::size_t i = 0; i < n_red; ++i) new_id[i] = static_cast<int>(i);

  std::vector<PendingMid> mids;
  // The green triangles are grouped by pattern; a pattern of three starts
  // with three consecutive triangles sharing their first node (the midpoint).
  std::size_t i = 0;
  while (i < nt) {
    const Tri& t1 = mesh.elements3[i];
    int pid = static_cast<int>(out.elements4.size());
    if (i + 2 < nt && t1[0] == mesh.elements3[i + 1][0] &&
        t1[0] == mesh.elements3[i + 2][0]) {
      const Tri& t2 = mesh.elements3[i + 1];
      const Tri& t3 = mesh.elements3[i + 2];
      if (t1[2] != t2[1] || t2[2] != t3[1])
        throw std::runtime_error("malformed green triangle pattern");
      Quad parent{t3[2], t1[1], t1[2], t2[2]};
      out.elements4.push_back(parent);
      mids.push_back({parent[0], parent[1], t1[0]});
      for (std::size_t k = 0; k < 3; ++k) new_id[nq + i + k] = pid;
      i += 3;
    } else {
      if (i + 3 >= nt)
        throw std::runtime_error("malformed green triangle pattern");
      const Tri& t2 = mesh.elements3[i + 1];
      const Tri& t3 = mesh.elements3[i + 2];
      const Tri& t4 = mesh.elements3[i + 3];
      if (t1[0] != t2[0] || t1[0] != t4[1] || t1[2] != t2[1] ||
          t1[2] != t3[0] || t2[2] != t3[2] || t2[2] != t4[2])
        throw std::runtime_error("malformed green triangle pattern");
      Quad parent{t4[0], t1[1], t3[1], t2[2]};
      out.elements4.push_back(parent);
      mids.push_back({parent[0], parent[1], t1[0]});
      mids.push_back({parent[1], parent[2], t1[2]});
      for (std::size_t k = 0; k < 4; ++k) new_id[nq + i + k] = pid;
      i += 4;
    }
  }
  for (std::size_t p = n_red; p < nq; p += 2) {
    const Quad& q1 = mesh.elements4[p];
    const Quad& q2 = mesh.elements4[p + 1];
    if (q2[0] != q1[1] || q2[3] != q1[2])
      throw std::runtime_error("malformed green quadrilateral pair");
    Quad parent{q1[0], q2[1], q2[2], q1[3]};
    int pid = static_cast<int>(out.elements4.size());
    out.elements4.push_back(parent);
    mids.push_back({parent[0], parent[1], q1[1]});
    mids.push_back({parent[2], parent[3], q1[2]});
    new_id[p] = new_id[p + 1] = pid;
  }

  MarkSet pm = transfer_marks(marked, new_id, nq + nt);
  resolve_midpoints(out, mids, mesh.coordinates.size());
  return {std::move(out), std::move(pm)};
}

RecoarsenQuadResult recoarsen_blue(const QuadMesh& mesh,
                                   const MarkSet& marked) {
  if (!mesh.irregular.empty())
    throw std::runtime_error("recoarsen expects a conforming mesh");
  const std::size_t n_el = mesh.elements4.size();
  if (mesh.n_blue < 0 || mesh.n_blue % 3 ||
      static_cast<std::size_t>(mesh.n_blue) > n_el)
    throw std::runtime_error("invalid blue block length");
  const std::size_t n_red = n_el - mesh.n_blue;

  QuadMesh out;
  out.coordinates = mesh.coordinates;
  out.boundary = mesh.boundary;
  out.n0 = mesh.n0;
  out.elements4.assign(mesh.elements4.begin(), mesh.elements4.begin() + n_red);

  std::vector<int> new_id(n_el);
  for (std::size_t i = 0; i < n_red; ++i) new_id[i] = static_cast<int>(i);
  std::vector<PendingMid> mids;
  std::vector<char> elim_center(mesh.coordinates.size(), 0);
  for (std::size_t p = n_red; p < n_el; p += 3) {
    const Quad& c1 = mesh.elements4[p];
    const Quad& c2 = mesh.elements4[p + 1];
    const Quad& c3 = mesh.elements4[p + 2];
    if (c2[0] != c1[1] || c2[3] != c1[2] || c3[0] != c2[2] || c3[3] != c1[2])
      throw std::runtime_error("malformed blue triple");
    Quad parent{c1[0], c2[1], c3[1], c1[3]};
    int pid = static_cast<int>(out.elements4.size());
    out.elements4.push_back(parent);
    mids.push_back({parent[0], parent[1], c1[1]});
    mids.push_back({parent[1], parent[2], c2[2]});
    elim_center[c1[2]] = 1;  // the pattern center never survives
    new_id[p] = new_id[p + 1] = new_id[p + 2] = pid;
  }

  MarkSet pm = transfer_marks(marked, new_id, n_el);
  resolve_midpoints(out, mids, mesh.coordinates.size(),
                    std::move(elim_center));
  return {std::move(out), std::move(pm)};
}

TriMesh regularize_green_tri(const TriMesh& mesh) {
  std::unordered_map<std::int64_t, Tri> entry;  // full edge -> (i, j, m)
  for (const Tri& e : mesh.irregular) entry[ekey(e[0], e[1])] = e;

  TriMesh out;
  out.coordinates = mesh.coordinates;
  out.boundary = mesh.boundary;
  out.n0 = mesh.n0;
  std::vector<Tri> green;
  std::size_t owners = 0;
  for (const Tri& t : mesh.elements3) {
    int hang = -1;
    for (int k = 0; k < 3; ++k)
      if (entry.count(ekey(t[k], t[(k + 1) % 3]))) {
        if (hang >= 0)
          throw std::runtime_error(
              "element with two hanging nodes cannot be closed by a green "
              "pattern");
        hang = k;
      }
    if (hang < 0) {
      out.elements3.push_back(t);
      continue;
    }
    ++owners;
    int a = t[hang], b = t[(hang + 1) % 3], c = t[(hang + 2) % 3];
    int m = entry[ekey(a, b)][2];
    green.push_back({c, a, m});
    green.push_back({b, c, m});
  }
  if (owners != mesh.irregular.size())
    throw std::runtime_error("hanging node without a coarse owner");
  out.n_green = static_cast<int>(green.size());
  out.elements3.insert(out.elements3.end(), green.begin(), green.end());
  return out;
}

MixedMesh regularize_green_quad(const QuadMesh& mesh) {
  std::unordered_map<std::int64_t, Tri> entry;
  for (const Tri& e : mesh.irregular) entry[ekey(e[0], e[1])] = e;

  MixedMesh out;
  out.coordinates = mesh.coordinates;
  out.boundary = mesh.boundary;
  out.n0 = mesh.n0;
  std::vector<Tri> pat3, pat4;
  std::vector<Quad> pairs;
  std::size_t owners = 0;
  for (const Quad& q : mesh.elements4) {
    int h1 = -1, h2 = -1;
    for (int k = 0; k < 4; ++k)
      if (entry.count(ekey(q[k], q[(k + 1) & 3]))) {
        if (h1 < 0)
          h1 = k;
        else if (h2 < 0)
          h2 = k;
        else
          throw std::runtime_error(
              "element with three hanging nodes cannot be closed by a green "
              "pattern");
      }
    if (h1 < 0) {
      out.elements4.push_back(q);
      continue;
    }
    auto mid = [&](const Quad& r, int k) {
      return entry[ekey(r[k], r[(k + 1) & 3])][2];
    };
    if (h2 < 0) {
      ++owners;
      Quad p = rot(q, h1);
      int m = mid(p, 0);
      pat3.push_back({m, p[1], p[2]});
      pat3.push_back({m, p[2], p[3]});
      pat3.push_back({m, p[3], p[0]});
    } else if ((h2 - h1) == 2) {  // opposite edges: two quadrilaterals
      owners += 2;
      int r = (q[h1] < q[h2]) ? h1 : h2;  // deterministic orientation
      Quad p = rot(q, r);
      int m1 = mid(p, 0), m2 = mid(p, 2);
      pairs.push_back({p[0], m1, m2, p[3]});
      pairs.push_back({m1, p[1], p[2], m2});
    } else {  // adjacent edges
      owners += 2;
      int r = (h2 - h1 == 1) ? h1 : h2;  // {0,3} wraps: start at 3
      Quad p = rot(q, r);
      int m1 = mid(p, 0), m2 = mid(p, 1);
      pat4.push_back({m1, p[1], m2});
      pat4.push_back({m1, m2, p[3]});
      pat4.push_back({m2, p[2], p[3]});
      pat4.push_back({p[0], m1, p[3]});
    }
  }
  if (owners != mesh.irregular.size())
    throw std::runtime_error("hanging node without a coarse owner");
  out.elements3 = std::move(pat3);
  out.elements3.insert(out.elements3.end(), pat4.begin(), pat4.end());
  out.n_green4 = static_cast<int>(pairs.size());
  out.elements4.insert(out.elements4.end(), pairs.begin(), pairs.end());
  return out;
}

namespace {

// One hanging node of a working quadrilateral: local edge index and midpoint.
struct Hang {
  int local;
  int mid;
};

}  // namespace

QuadMesh regularize_blue(const QuadMesh& mesh) {
  std::vector<Point> coords = mesh.coordinates;
  std::vector<Quad> quads = mesh.elements4;
  std::vector<Tri> irr = mesh.irregular;
  std::unordered_map<std::int64_t, int> both;  // planned splits, both sides
  std::unordered_map<std::int64_t, int> bsplit;  // boundary edge -> midpoint

  auto new_mid = [&coords](int x, int y) {
    coords.push_back({(coords[x].x + coords[y].x) / 2,
                      (coords[x].y + coords[y].y) / 2});
    return static_cast<int>(coords.size()) - 1;
  };

  std::vector<std::vector<Hang>> hangs;
  for (int pass = 0;; ++pass) {
    if (pass > 100000)
      throw std::runtime_error("blue regularization failed to converge");

    std::unordered_map<std::int64_t, std::vector<int>> by_edge;
    for (std::size_t qi = 0; qi < quads.size(); ++qi)
      for (int k = 0; k < 4; ++k)
        by_edge[ekey(quads[qi][k], quads[qi][(k + 1) & 3])].push_back(
            static_cast<int>(qi));
    std::unordered_map<std::int64_t, int> full2e, half2e;
    for (std::size_t e = 0; e < irr.size(); ++e) {
      full2e[ekey(irr[e][0], irr[e][1])] = static_cast<int>(e);
      half2e[ekey(irr[e][0], irr[e][2])] = static_cast<int>(e);
      half2e[ekey(irr[e][2], irr[e][1])] = static_cast<int>(e);
    }

    hangs.assign(quads.size(), {});
    for (std::size_t qi = 0; qi < quads.size(); ++qi)
      for (int k = 0; k < 4; ++k) {
        std::int64_t key = ekey(quads[qi][k], quads[qi][(k + 1) & 3]);
        if (auto it = full2e.find(key); it != full2e.end()) {
          if (by_edge[key].size() != 1)
            throw std::runtime_error("hanging node on a conforming edge");
          hangs[qi].push_back({k, irr[it->second][2]});
        } else if (auto jt = both.find(key); jt != both.end()) {
          hangs[qi].push_back({k, jt->second});
        }
      }

    // Phase one: red-refine every element with three or more hanging nodes
    // or two on opposite edges. These refinements are forced regardless of
    // any pattern choice, so they are settled to a fixpoint before any
    // second split is planned; the fixpoint depends only on the mesh, not on
    // element order, which makes the regularization reproducible after a
    // recoarsening round trip.
    std::vector<char> refine(quads.size(), 0);
    bool any_refine = false;
    for (std::size_t qi = 0; qi < quads.size(); ++qi) {
      const auto& h = hangs[qi];
      if (h.size() >= 3 ||
          (h.size() == 2 && !((h[1].local - h[0].local) & 1))) {
        refine[qi] = 1;
        any_refine = true;
      }
    }

    // Phase two: plan a second split for each element with a single hanging
    // node so it becomes a blue configuration. Elements are visited in
    // centroid order so the pairing does not depend on element numbering.
    if (!any_refine) {
      std::vector<int> order;
      for (std::size_t qi = 0; qi < quads.size(); ++qi)
        if (hangs[qi].size() == 1) order.push_back(static_cast<int>(qi));
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        auto center = [&](int qi) {
          const Quad& q = quads[qi];
          return std::pair<double, double>(
              coords[q[0]].x + coords[q[1]].x + coords[q[2]].x + coords[q[3]].x,
              coords[q[0]].y + coords[q[1]].y + coords[q[2]].y +
                  coords[q[3]].y);
        };
        return center(a) < center(b);
      });
      bool planned = false;
      for (int qi : order) {
        const auto& h = hangs[qi];
        // An edge that is the half of a coarser hanging edge must not be
        // split again (1-irregularity).
        int cands[2] = {(h[0].local + 1) & 3, (h[0].local + 3) & 3};
        int best = -1;
        bool best_bnd = false;
        int best_rank = -1;
        std::int64_t best_key = 0;
        for (int c : cands) {
          std::int64_t key = ekey(quads[qi][c], quads[qi][(c + 1) & 3]);
          if (half2e.count(key)) continue;
          if (both.count(key)) {  // a neighbor planned it this phase already
            best = -2;
            break;
          }
          const auto& side = by_edge[key];
          bool bnd = side.size() == 1;
          // Rank candidates: boundary edges first (no neighbor is disturbed
          // and the choice is reproducible after coarsening); then a
          // neighbor that also has exactly one hanging node adjacent to this
          // edge, pairing up into two blue patterns (this reconstructs
          // midpoints shared between two patterns, which recoarsening
          // deletes outright); then plain neighbors; last, neighbors the
          // split would force to refine.
          int rank = bnd ? 3 : 1;
          if (!bnd) {
            int nq = side[0] == qi ? side[1] : side[0];
            const auto& nh = hangs[nq];
            if (nh.size() == 1) {
              int k = 0;
              while (ekey(quads[nq][k], quads[nq][(k + 1) & 3]) != key) ++k;
              rank = ((nh[0].local - k) & 1) ? 2 : 0;
            } else if (nh.size() >= 2) {
              rank = 0;
            }
          }
          if (rank > best_rank || (rank == best_rank && key < best_key)) {
            best = c;
            best_bnd = bnd;
            best_rank = rank;
            best_key = key;
          }
        }
        if (best == -2) continue;  // will be a blue configuration next pass
        if (best >= 0) {
          int x = quads[qi][best], y = quads[qi][(best + 1) & 3];
          int node = new_mid(x, y);
          both[best_key] = node;
          if (best_bnd) bsplit[best_key] = node;
          planned = true;
          continue;
        }
        // No admissible second split: refine the element itself.
        refine[qi] = 1;
        any_refine = true;
      }
      if (!planned && !any_refine) break;
    }
    if (!any_refine) continue;

    // Close the refinement set: refining the finer side of a hanging edge
    // forces the coarse owner to refine as well.
    std::vector<int> work;
    for (std::size_t qi = 0; qi < quads.size(); ++qi)
      if (refine[qi]) work.push_back(static_cast<int>(qi));
    while (!work.empty()) {
      int qi = work.back();
      work.pop_back();
      for (int k = 0; k < 4; ++k) {
        std::int64_t key = ekey(quads[qi][k], quads[qi][(k + 1) & 3]);
        auto it = half2e.find(key);
        if (it == half2e.end()) continue;
        const Tri& e = irr[it->second];
        auto own = by_edge.find(ekey(e[0], e[1]));
        if (own == by_edge.end() || own->second.size() != 1)
          throw std::runtime_error("hanging node without a coarse owner");
        int oq = own->second[0];
        if (!refine[oq]) {
          refine[oq] = 1;
          work.push_back(oq);
        }
      }
    }

    // Red-refine the set in place. Midpoints reuse hanging nodes and planned
    // split nodes; fresh midpoints may create new hanging nodes on the
    // unrefined side.
    std::unordered_map<std::int64_t, std::array<int, 3>> fresh;  // key->x,y,m
    auto edge_mid = [&](int x, int y) {
      std::int64_t key = ekey(x, y);
      if (auto it = full2e.find(key); it != full2e.end())
        return irr[it->second][2];
      if (auto it = both.find(key); it != both.end()) return it->second;
      if (auto it = fresh.find(key); it != fresh.end()) return it->second[2];
      int node = new_mid(x, y);
      fresh[key] = {x, y, node};
      return node;
    };
    std::vector<Quad> old = quads;
    std::vector<std::array<Quad, 4>> children(quads.size());
    for (std::size_t qi = 0; qi < quads.size(); ++qi) {
      if (!refine[qi]) continue;
      const Quad& q = old[qi];
      int m[4];
      for (int k = 0; k < 4; ++k) m[k] = edge_mid(q[k], q[(k + 1) & 3]);
      coords.push_back({(coords[q[0]].x + coords[q[1]].x + coords[q[2]].x +
                         coords[q[3]].x) /
                            4,
                        (coords[q[0]].y + coords[q[1]].y + coords[q[2]].y +
                         coords[q[3]].y) /
                            4});
      int z = static_cast<int>(coords.size()) - 1;
      for (int k = 0; k < 4; ++k)
        children[qi][k] = {q[k], m[k], z, m[(k + 3) & 3]};
    }

    auto side_refined = [&](std::int64_t key, bool& has_coarse) {
      int n_ref = 0, n_tot = 0;
      auto it = by_edge.find(key);
      if (it != by_edge.end())
        for (int qi : it->second) {
          ++n_tot;
          if (refine[qi]) ++n_ref;
        }
      has_coarse = n_tot - n_ref > 0;
      return n_ref;
    };

    std::vector<Tri> kept;
    for (const Tri& e : irr) {
      auto own = by_edge.find(ekey(e[0], e[1]));
      if (own == by_edge.end() || own->second.size() != 1)
        throw std::runtime_error("hanging node without a coarse owner");
      if (!refine[own->second[0]]) kept.push_back(e);  // else the entry dies
    }
    for (const auto& [key, rec] : fresh) {
      bool has_coarse = false;
      int n_ref = side_refined(key, has_coarse);
      if (half2e.count(key)) {
        // The refined element sat on the finer side of a coarser hanging
        // edge; its forced owner leaves a same-size child behind, which now
        // owns the new hanging node.
        kept.push_back({rec[0], rec[1], rec[2]});
      } else if (has_coarse) {
        kept.push_back({rec[0], rec[1], rec[2]});
      } else if (n_ref == 1) {
        bsplit[key] = rec[2];  // boundary edge
      }
    }
    for (auto it = both.begin(); it != both.end();) {
      bool has_coarse = false;
      int n_ref = side_refined(it->first, has_coarse);
      if (n_ref > 0) {
        if (has_coarse) {
          int x = static_cast<int>(it->first >> 32);
          int y = static_cast<int>(it->first & 0xffffffff);
          kept.push_back({x, y, it->second});
        }
        it = both.erase(it);
      } else {
        ++it;
      }
    }
    irr = std::move(kept);
    for (std::size_t qi = 0; qi < old.size(); ++qi) {
      if (!refine[qi]) continue;
      quads[qi] = children[qi][0];
      for (int k = 1; k < 4; ++k) quads.push_back(children[qi][k]);
    }
  }

  // Emission: plain elements first, blue triples trailing. Every remaining
  // hanging node is consumed by the blue pattern on its coarse side.
  QuadMesh out;
  out.coordinates = std::move(coords);
  out.n0 = mesh.n0;
  std::vector<Quad> blue;
  for (std::size_t qi = 0; qi < quads.size(); ++qi) {
    const auto& h = hangs[qi];
    if (h.empty()) {
      out.elements4.push_back(quads[qi]);
      continue;
    }
    if (h.size() != 2)
      throw std::runtime_error("blue regularization left an unclosed element");
    int j = -1;
    auto has = [&h](int l) {
      return h[0].local == l || h[1].local == l;
    };
    for (int k = 0; k < 4; ++k)
      if (has(k) && has((k + 1) & 3)) j = k;
    if (j < 0)
      throw std::runtime_error("blue regularization left an unclosed element");
    Quad p = rot(quads[qi], j);
    int m1 = (h[0].local == j) ? h[0].mid : h[1].mid;
    int m2 = (h[0].local == j) ? h[1].mid : h[0].mid;
    out.coordinates.push_back(
        {(out.coordinates[p[0]].x + out.coordinates[p[1]].x +
          out.coordinates[p[2]].x + out.coordinates[p[3]].x) /
             4,
         (out.coordinates[p[0]].y + out.coordinates[p[1]].y +
          out.coordinates[p[2]].y + out.coordinates[p[3]].y) /
             4});
    int z = static_cast<int>(out.coordinates.size()) - 1;
    blue.push_back({p[0], m1, z, p[3]});
    blue.push_back({m1, p[1], m2, z});
    blue.push_back({m2, p[2], p[3], z});
  }
  out.n_blue = static_cast<int>(blue.size());
  out.elements4.insert(out.elements4.end(), blue.begin(), blue.end());

  // Split boundary pieces wherever a boundary edge received a midpoint;
  // cascaded refinements may split a half again.
  std::vector<EdgePair> stack(mesh.boundary.rbegin(), mesh.boundary.rend());
  while (!stack.empty()) {
    EdgePair bp = stack.back();
    stack.pop_back();
    auto it = bsplit.find(ekey(bp[0], bp[1]));
    if (it != bsplit.end()) {
      stack.push_back({it->second, bp[1]});
      stack.push_back({bp[0], it->second});
    } else {
      out.boundary.push_back(bp);
    }
  }
  return out;
}

TriMesh coarsen_rg_tri(const TriMesh& mesh, const MarkSet& marked,
                       MarkPolicy policy) {
  RecoarsenTriResult rec = recoarsen_green_tri(mesh, marked);
  TriMesh red = coarsen_r(rec.mesh, rec.marked, policy,
                          /*two_neighbor_rule=*/true);
  return regularize_green_tri(red);
}

MixedMesh coarsen_rg_quad(const MixedMesh& mesh, const MarkSet& marked,
                          MarkPolicy policy) {
  RecoarsenQuadResult rec = recoarsen_green_quad(mesh, marked);
  QuadMesh red = coarsen_r(rec.mesh, rec.marked, policy);
  return regularize_green_quad(red);
}

QuadMesh coarsen_rb(const QuadMesh& mesh, const MarkSet& marked,
                    MarkPolicy policy) {
  RecoarsenQuadResult rec = recoarsen_blue(mesh, marked);
  QuadMesh red = coarsen_r(rec.mesh, rec.marked, policy);
  return regularize_blue(red);
}

}  // namespace mesh2d
