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

// History-free coarsening of bisection-refined meshes. Elements are stored
// with their reference edge at positions one/two and their newest node at
// position three, so sibling pairs (and, for the red/green/blue strategy,
// red quartets) can be recognized positionally and merged back into their
// parents. Nodes below `n0` (defaulting to mesh.n0) are never eliminated.
//
// Newest-vertex bisection: a newest node shared by two or four adjacent
// elements that all hold it at position three is eliminated and the sibling
// pairs are merged; any other configuration blocks the node.
//
// Red/green/blue: red quartets are recognized through their middle element
// and are returned to the parent, or to an intermediate green or blue
// pattern when only some of their edge midpoints may go; blue patterns shed
// their newest node first and finish as green pairs on a later pass.
TriMesh coarsen_nvb(const TriMesh& mesh, const MarkSet& marked, int n0 = -1);
TriMesh coarsen_rgb(const TriMesh& mesh, const MarkSet& marked, int n0 = -1);

}  // namespace mesh2d
