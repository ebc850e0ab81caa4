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

#include "mesh2d/mesh.hpp"

namespace mesh2d {

// Optional provenance of a refinement call: for every output element, the
// input element it came from and whether it is a freshly created child.
// Used by tests to maintain an explicit refinement history tree.
struct RefineTrace {
  std::vector<int> origin;
  std::vector<char> is_child;
};

// Red (quadrisection) refinement of 1-irregular meshes. Children are inserted
// at the parent's position; new coordinates are appended. The closure enforces
// 1-irregularity, plus the 2-Neighbor Rule (triangles, optional) or the
// 3-Neighbor Rule (quadrilaterals, always).
TriMesh trefine_r(const TriMesh& mesh, const MarkSet& marked,
                  bool two_neighbor_rule = false, RefineTrace* trace = nullptr);
QuadMesh qrefine_r(const QuadMesh& mesh, const MarkSet& marked,
                   RefineTrace* trace = nullptr);

// Bisection-based strategies on conforming meshes. The reference edge of an
// element (a, b, c) is (a, b); c is its newest vertex. Marked elements have
// all their edges refined; closure propagates reference-edge marking.
TriMesh trefine_nvb(const TriMesh& mesh, const MarkSet& marked,
                    RefineTrace* trace = nullptr);
TriMesh trefine_rgb(const TriMesh& mesh, const MarkSet& marked,
                    RefineTrace* trace = nullptr);

// Regular strategies: recoarsen green/blue patterns, red-refine, regularize.
TriMesh trefine_rg(const TriMesh& mesh, const MarkSet& marked);
MixedMesh qrefine_rg(const MixedMesh& mesh, const MarkSet& marked);
QuadMesh qrefine_rb(const QuadMesh& mesh, const MarkSet& marked);

}  // namespace mesh2d
