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

// Quartets of same-parent sibling elements eligible for merging, recovered
// without any stored refinement history.
// Quads: the four elements are sorted counterclockwise around the middle
// node, which each of them holds at position three; `middle` is that node.
// Triangles: the outer three elements are stored counterclockwise and the
// middle element at the end; `middle` is the middle element id.
struct AdmissibleSet {
  std::vector<std::array<int, 4>> quartets;
  std::vector<int> middle;

  std::size_t size() const { return quartets.size(); }
};

enum class MarkPolicy { AnyOf, AllOf };

// The `geom` arguments must be derived from the same mesh with virtual
// elements included (the default of provide_geometric_data).
AdmissibleSet q_admissible(const QuadMesh& mesh, const GeomData& geom);
AdmissibleSet t_admissible(const TriMesh& mesh, const GeomData& geom);

AdmissibleSet mark_filter(const AdmissibleSet& adm, const MarkSet& marked,
                          MarkPolicy policy = MarkPolicy::AnyOf);

AdmissibleSet q_closure(const QuadMesh& mesh, const GeomData& geom,
                        AdmissibleSet adm);
AdmissibleSet t_closure(const TriMesh& mesh, const GeomData& geom,
                        AdmissibleSet adm, bool two_neighbor_rule);

QuadMesh update_mesh(const QuadMesh& mesh, const GeomData& geom,
                     const AdmissibleSet& adm);
TriMesh update_mesh(const TriMesh& mesh, const GeomData& geom,
                    const AdmissibleSet& adm);

// Admissible -> Mark -> Closure -> Update.
QuadMesh coarsen_r(const QuadMesh& mesh, const MarkSet& marked,
                   MarkPolicy policy = MarkPolicy::AnyOf);
TriMesh coarsen_r(const TriMesh& mesh, const MarkSet& marked,
                  MarkPolicy policy = MarkPolicy::AnyOf,
                  bool two_neighbor_rule = false);

}  // namespace mesh2d
