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

#include <cstddef>
#include <string>
#include <vector>

#include "mesh2d/coarsen_red.hpp"
#include "mesh2d/io.hpp"

namespace mesh2d {

// Strategy-generic drivers over MeshFile, shared by the demos and the CLI.

// The unit-square starting mesh of a strategy: two triangles with the
// diagonal as their common reference edge, or a single quadrilateral.
MeshFile initial_mesh(Strategy strategy);

std::size_t node_count(const MeshFile& file);
std::size_t element_count(const MeshFile& file);

// One refinement / coarsening call of the file's strategy, in place.
void refine_in_place(MeshFile& file, const MarkSet& marked);
void coarsen_in_place(MeshFile& file, const MarkSet& marked,
                      MarkPolicy policy = MarkPolicy::AnyOf);

// Elements cut by the circle line (some corner inside, some outside) — the
// refinement marker — and elements whose centroid lies inside the disk — the
// local-coarsening marker.
MarkSet mark_circle_band(const MeshFile& file, double cx, double cy, double r);
MarkSet mark_circle_inside(const MeshFile& file, double cx, double cy,
                           double r);

struct StepRecord {
  std::string phase;  // "refine" or "coarsen"
  std::size_t nodes = 0;
  std::size_t elements = 0;
  double seconds = 0.0;
};

struct DemoResult {
  MeshFile mesh;
  std::vector<StepRecord> steps;
  int refine_steps = 0;
  int coarsen_steps = 0;
};

// Refine along a circle moving across the unit square for `steps` rounds,
// then coarsen with everything marked until nothing changes. When
// `svg_prefix` is nonempty, writes <prefix>NNN.svg per step.
DemoResult demo_circle(Strategy strategy, int steps,
                       const std::string& svg_prefix = "");

// Refine uniformly, then coarsen only inside a circular region; writes the
// resulting mesh to `svg_path` when nonempty.
DemoResult demo_local_coarsening(Strategy strategy,
                                 const std::string& svg_path = "");

struct BenchRow {
  int step = 0;           // coarsening step index, starting at 1
  std::size_t nodes = 0;  // node count before the step
  double seconds = 0.0;   // median wall-clock time of the step
};

// Refine uniformly `max_level` times, then time every all-marked coarsening
// step down to the fixpoint (median over `reps` runs each).
std::vector<BenchRow> bench_scaling(Strategy strategy, int max_level,
                                    int reps = 5);

}  // namespace mesh2d
