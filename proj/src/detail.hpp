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

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mesh2d/mesh.hpp"

namespace mesh2d::detail {

inline std::int64_t ekey(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

// Delete flagged nodes and renumber the rest, preserving relative order so
// the node-age ordering survives.
template <typename MeshT>
void compact_nodes(MeshT& mesh, const std::vector<char>& eliminate, int n0) {
  std::vector<int> remap(eliminate.size(), -1);
  std::vector<Point> coords;
  coords.reserve(mesh.coordinates.size());
  for (std::size_t i = 0; i < eliminate.size(); ++i) {
    if (eliminate[i]) {
      if (static_cast<int>(i) < n0)
        throw std::runtime_error("attempt to delete an initial node");
      continue;
    }
    remap[i] = static_cast<int>(coords.size());
    coords.push_back(mesh.coordinates[i]);
  }
  mesh.coordinates = std::move(coords);
  auto apply = [&remap](auto& list) {
    for (auto& item : list)
      for (int& v : item) {
        v = remap[v];
        if (v < 0) throw std::runtime_error("reference to deleted node");
      }
  };
  if constexpr (requires { mesh.elements3; }) apply(mesh.elements3);
  if constexpr (requires { mesh.elements4; }) apply(mesh.elements4);
  if constexpr (requires { mesh.irregular; }) apply(mesh.irregular);
  apply(mesh.boundary);
}

// Contract boundary chains across eliminated nodes: the consecutive pieces
// (a, m), (m, b) of an eliminated midpoint m merge back into (a, b).
// Boundary pairs are consistently oriented, so each node has one successor.
inline std::vector<EdgePair> contract_boundary(
    const std::vector<EdgePair>& boundary, const std::vector<char>& elim) {
  std::unordered_map<int, int> succ;
  for (const EdgePair& bp : boundary) succ[bp[0]] = bp[1];
  std::vector<EdgePair> out;
  for (const EdgePair& bp : boundary) {
    if (elim[bp[0]]) continue;
    int b = bp[1];
    while (elim[b]) {
      auto it = succ.find(b);
      if (it == succ.end())
        throw std::runtime_error("eliminated node on an open boundary chain");
      b = it->second;
    }
    out.push_back({bp[0], b});
  }
  return out;
}

}  // namespace mesh2d::detail
