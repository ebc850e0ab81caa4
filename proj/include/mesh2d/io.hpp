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

#include <string>
#include <variant>

#include "mesh2d/mesh.hpp"

namespace mesh2d {

// The seven refinement/coarsening strategy pairs. The tag spelling is used
// by the CLI and in mesh files.
enum class Strategy { TR, TRG, TRGB, TNVB, QR, QRG, QRB };

Strategy strategy_from_tag(const std::string& tag);  // throws on unknown tag
std::string strategy_tag(Strategy s);

// Which mesh representation a strategy works on: triangles (t-*),
// quadrilaterals (q-r, q-rb), or the mixed mesh of q-rg.
bool is_triangular(Strategy s);

// A mesh together with the strategy it belongs to, as stored on disk. The
// file format is line based with sections COORDINATES (x y), ELEMENTS3 /
// ELEMENTS4 (1-based node indices), IRREGULAR, BOUNDARY, and META (n0,
// strategy, block counters). Indices are 1-based in files, 0-based in
// memory; save followed by load reproduces the mesh exactly.
struct MeshFile {
  std::variant<TriMesh, QuadMesh, MixedMesh> mesh;
  Strategy strategy = Strategy::TR;
};

MeshFile load_mesh(const std::string& path);
void save_mesh(const MeshFile& file, const std::string& path);

struct SvgOptions {
  bool show_hanging = true;  // hanging nodes as filled dots
  bool fill_blocks = true;   // tint green/blue pattern blocks
  double width = 800.0;      // image width in pixels
};

void export_svg(const TriMesh& mesh, const std::string& path,
                const SvgOptions& options = {});
void export_svg(const QuadMesh& mesh, const std::string& path,
                const SvgOptions& options = {});
void export_svg(const MixedMesh& mesh, const std::string& path,
                const SvgOptions& options = {});
void export_svg(const MeshFile& file, const std::string& path,
                const SvgOptions& options = {});

}  // namespace mesh2d
