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

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mesh2d/refine.hpp"

namespace mesh2d {

namespace {

inline std::int64_t ekey(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

// Shared skeleton for NVB and RGB: mark all edges of marked elements, then
// propagate reference-edge marking to a fixpoint; each element finally splits
// exactly its marked edges. `use_red` selects the all-three-edges pattern.
TriMesh refine_bisect(const TriMesh& mesh, const MarkSet& marked, bool use_red,
                      RefineTrace* trace) {
  for (int m : marked)
    if (m < 0 || static_cast<std::size_t>(m) >= mesh.elements3.size())
      throw std::out_of_range("marked element index out of range");

  std::unordered_set<std::int64_t> medges;
  for (int m : marked) {
    const Tri& t = mesh.elements3[m];
    medges.insert(ekey(t[0], t[1]));
    medges.insert(ekey(t[1], t[2]));
    medges.insert(ekey(t[2], t[0]));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Tri& t : mesh.elements3) {
      std::int64_t ref = ekey(t[0], t[1]);
      if (medges.count(ref)) continue;
      if (medges.count(ekey(t[1], t[2])) || medges.count(ekey(t[2], t[0]))) {
        medges.insert(ref);
        changed = true;
      }
    }
  }

  TriMesh out;
  out.coordinates = mesh.coordinates;
  out.n0 = mesh.n0;
  std::unordered_map<std::int64_t, int> mids;
  auto midpoint = [&](int a, int b) {
    auto [it, fresh] = mids.try_emplace(ekey(a, b), 0);
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
  auto emit = [&](int el, const Tri& t, bool child) {
    out.elements3.push_back(t);
    if (trace) {
      trace->origin.push_back(el);
      trace->is_child.push_back(child ? 1 : 0);
    }
  };
  for (std::size_t el = 0; el < mesh.elements3.size(); ++el) {
    const Tri& t = mesh.elements3[el];
    bool r1 = medges.count(ekey(t[0], t[1])) > 0;
    bool r2 = medges.count(ekey(t[1], t[2])) > 0;
    bool r3 = medges.count(ekey(t[2], t[0])) > 0;
    int e = static_cast<int>(el);
    if (!r1) {
      emit(e, t, false);
      continue;
    }
    int m1 = midpoint(t[0], t[1]);
    if (!r2 && !r3) {  // green: single bisection of the reference edge
      emit(e, {t[2], t[0], m1}, true);
      emit(e, {t[1], t[2], m1}, true);
    } else if (r2 && !r3) {  // blue (right)
      int m2 = midpoint(t[1], t[2]);
      emit(e, {t[2], t[0], m1}, true);
      emit(e, {m1, t[1], m2}, true);
      emit(e, {t[2], m1, m2}, true);
    } else if (!r2 && r3) {  // blue (left)
      int m3 = midpoint(t[2], t[0]);
      emit(e, {m1, t[2], m3}, true);
      emit(e, {t[0], m1, m3}, true);
      emit(e, {t[1], t[2], m1}, true);
    } else if (use_red) {  // red: four similar children
      int m2 = midpoint(t[1], t[2]);
      int m3 = midpoint(t[2], t[0]);
      emit(e, {t[0], m1, m3}, true);
      emit(e, {m1, t[1], m2}, true);
      emit(e, {m3, m2, t[2]}, true);
      emit(e, {m2, m3, m1}, true);
    } else {  // bisec(3)
      int m2 = midpoint(t[1], t[2]);
      int m3 = midpoint(t[2], t[0]);
      emit(e, {m1, t[2], m3}, true);
      emit(e, {t[0], m1, m3}, true);
      emit(e, {m1, t[1], m2}, true);
      emit(e, {t[2], m1, m2}, true);
    }
  }
  for (const EdgePair& bp : mesh.boundary) {
    auto it = mids.find(ekey(bp[0], bp[1]));
    if (it != mids.end()) {
      out.boundary.push_back({bp[0], it->second});
      out.boundary.push_back({it->second, bp[1]});
    } else {
      out.boundary.push_back(bp);
    }
  }
  return out;
}

}  // namespace

TriMesh trefine_nvb(const TriMesh& mesh, const MarkSet& marked,
                    RefineTrace* trace) {
  return refine_bisect(mesh, marked, /*use_red=*/false, trace);
}

TriMesh trefine_rgb(const TriMesh& mesh, const MarkSet& marked,
                    RefineTrace* trace) {
  return refine_bisect(mesh, marked, /*use_red=*/true, trace);
}

}  // namespace mesh2d
