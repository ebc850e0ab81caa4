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

#include "mesh2d/coarsen_red.hpp"
#include "mesh2d/mesh.hpp"

namespace mesh2d {

// Recoarsening replaces all green/blue patterns by their parents, turning a
// conforming mesh back into the 1-irregular red mesh it regularized. A
// pattern midpoint survives as a hanging node when it is still a corner of a
// surviving element; otherwise it is deleted (pattern centers always are).
// Marks on pattern children transfer to the parent.

struct RecoarsenTriResult {
  TriMesh mesh;
  MarkSet marked;
};

struct RecoarsenQuadResult {
  QuadMesh mesh;
  MarkSet marked;
};

RecoarsenTriResult recoarsen_green_tri(const TriMesh& mesh,
                                       const MarkSet& marked);
RecoarsenQuadResult recoarsen_green_quad(const MixedMesh& mesh,
                                         const MarkSet& marked);
RecoarsenQuadResult recoarsen_blue(const QuadMesh& mesh, const MarkSet& marked);

// Regularization closes every hanging node of a 1-irregular red mesh with
// green patterns (trailing blocks) or, for Q-RB, blue patterns plus the red
// closure refinements that configuration may force.
TriMesh regularize_green_tri(const TriMesh& mesh);
MixedMesh regularize_green_quad(const QuadMesh& mesh);
QuadMesh regularize_blue(const QuadMesh& mesh);

// Recoarsen -> coarsen_r -> regularize.
TriMesh coarsen_rg_tri(const TriMesh& mesh, const MarkSet& marked,
                       MarkPolicy policy = MarkPolicy::AnyOf);
MixedMesh coarsen_rg_quad(const MixedMesh& mesh, const MarkSet& marked,
                          MarkPolicy policy = MarkPolicy::AnyOf);
QuadMesh coarsen_rb(const QuadMesh& mesh, const MarkSet& marked,
                    MarkPolicy policy = MarkPolicy::AnyOf);

}  // namespace mesh2d
