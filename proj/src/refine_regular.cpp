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

#include "mesh2d/coarsen_regular.hpp"
#include "mesh2d/refine.hpp"

namespace mesh2d {

// The regular strategies treat the conforming mesh as a regularized red mesh:
// undo the green/blue closure (marks transfer to the pattern parents),
// red-refine, and close the new hanging nodes again.

TriMesh trefine_rg(const TriMesh& mesh, const MarkSet& marked) {
  RecoarsenTriResult rec = recoarsen_green_tri(mesh, marked);
  TriMesh red = trefine_r(rec.mesh, rec.marked, /*two_neighbor_rule=*/true);
  return regularize_green_tri(red);
}

MixedMesh qrefine_rg(const MixedMesh& mesh, const MarkSet& marked) {
  RecoarsenQuadResult rec = recoarsen_green_quad(mesh, marked);
  QuadMesh red = qrefine_r(rec.mesh, rec.marked);
  return regularize_green_quad(red);
}

QuadMesh qrefine_rb(const QuadMesh& mesh, const MarkSet& marked) {
  RecoarsenQuadResult rec = recoarsen_blue(mesh, marked);
  QuadMesh red = qrefine_r(rec.mesh, rec.marked);
  return regularize_blue(red);
}

}  // namespace mesh2d
