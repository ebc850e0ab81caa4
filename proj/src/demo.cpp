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
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "mesh2d/demo.hpp"

#include "mesh2d/coarsen_bisect.hpp"
#include "mesh2d/coarsen_regular.hpp"
#include "mesh2d/refine.hpp"

namespace mesh2d {

namespace {

double now_elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Element ids enumerate quadrilaterals before triangles (relevant for the
// mixed meshes of q-rg); `fn` receives the id and the node cycle.
void visit_elements(const MeshFile& file,
                    const std::function<void(int, const int*, int)>& fn) {
  std::visit(
    [&](const auto& m) {
      int id = 0;
      if constexpr (requires { m.elements4; })
        for (const Quad& q : m.elements4) fn(id++, q.data(), 4);
      if constexpr (requires { m.elements3; })
        for (const Tri& t : m.elements3) fn(id++, t.data(), 3);
    },
    file.mesh);
}

const std::vector<Point>& coordinates_of(const MeshFile& file) {
  return std::visit(
      [](const auto& m) -> const std::vector<Point>& { return m.coordinates; },
      file.mesh);
}

}  // namespace

MeshFile initial_mesh(Strategy strategy) {
  MeshFile file;
  file.strategy = strategy;
  std::vector<Point> coords = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  std::vector<EdgePair> boundary = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  if (strategy == Strategy::QRG) {
    MixedMesh m;
    m.coordinates = coords;
    m.elements4 = {{0, 1, 2, 3}};
    m.boundary = boundary;
    m.n0 = 4;
    file.mesh = std::move(m);
  } else if (!is_triangular(strategy)) {
    QuadMesh m;
    m.coordinates = coords;
    m.elements4 = {{0, 1, 2, 3}};
    m.boundary = boundary;
    m.n0 = 4;
    file.mesh = std::move(m);
  } else {
    TriMesh m;
    m.coordinates = coords;
    // The diagonal is the common reference edge of both triangles, so the
    // bisection strategies start from a compatible configuration.
    m.elements3 = {{2, 0, 1}, {0, 2, 3}};
    m.boundary = boundary;
    m.n0 = 4;
    file.mesh = std::move(m);
  }
  return file;
}

std::size_t node_count(const MeshFile& file) {
  return coordinates_of(file).size();
}

std::size_t element_count(const MeshFile& file) {
  std::size_t n = 0;
  visit_elements(file, [&n](int, const int*, int) { ++n; });
  return n;
}

void refine_in_place(MeshFile& file, const MarkSet& marked) {
  switch (file.strategy) {
    case Strategy::TR:
      file.mesh = trefine_r(std::get<TriMesh>(file.mesh), marked);
      break;
    case Strategy::TRG:
      file.mesh = trefine_rg(std::get<TriMesh>(file.mesh), marked);
      break;
    case Strategy::TRGB:
      file.mesh = trefine_rgb(std::get<TriMesh>(file.mesh), marked);
      break;
    case Strategy::TNVB:
      file.mesh = trefine_nvb(std::get<TriMesh>(file.mesh), marked);
      break;
    case Strategy::QR:
      file.mesh = qrefine_r(std::get<QuadMesh>(file.mesh), marked);
      break;
    case Strategy::QRG:
      file.mesh = qrefine_rg(std::get<MixedMesh>(file.mesh), marked);
      break;
    case Strategy::QRB:
      file.mesh = qrefine_rb(std::get<QuadMesh>(file.mesh), marked);
      break;
  }
}

void coarsen_in_place(MeshFile& file, const MarkSet& marked,
                      MarkPolicy policy) {
  switch (file.strategy) {
    case Strategy::TR:
      file.mesh = coarsen_r(std::get<TriMesh>(file.mesh), marked, policy);
      break;
    case Strategy::TRG:
      file.mesh = coarsen_rg_tri(std::get<TriMesh>(file.mesh), marked, policy);
      break;
    case Strategy::TRGB:
      file.mesh = coarsen_rgb(std::get<TriMesh>(file.mesh), marked);
      break;
    case Strategy::TNVB:
      file.mesh = coarsen_nvb(std::get<TriMesh>(file.mesh), marked);
      break;
    case Strategy::QR:
      file.mesh = coarsen_r(std::get<QuadMesh>(file.mesh), marked, policy);
      break;
    case Strategy::QRG:
      file.mesh =
          coarsen_rg_quad(std::get<MixedMesh>(file.mesh), marked, policy);
      break;
    case Strategy::QRB:
      file.mesh = coarsen_rb(std::get<QuadMesh>(file.mesh), marked, policy);
      break;
  }
}

MarkSet mark_circle_band(const MeshFile& file, double cx, double cy,
                         double r) {
  const auto& coords = coordinates_of(file);
  MarkSet marked;
  visit_elements(file, [&](int id, const int* nodes, int n) {
    double dmin = 1e300, dmax = 0;
    for (int k = 0; k < n; ++k) {
      double d = std::hypot(coords[nodes[k]].x - cx, coords[nodes[k]].y - cy);
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
    if (dmin < r && r < dmax) marked.push_back(id);
  });
  return marked;
}

MarkSet mark_circle_inside(const MeshFile& file, double cx, double cy,
                           double r) {
  const auto& coords = coordinates_of(file);
  MarkSet marked;
  visit_elements(file, [&](int id, const int* nodes, int n) {
    double x = 0, y = 0;
    for (int k = 0; k < n; ++k) {
      x += coords[nodes[k]].x;
      y += coords[nodes[k]].y;
    }
    if (std::hypot(x / n - cx, y / n - cy) < r) marked.push_back(id);
  });
  return marked;
}

namespace {

MarkSet mark_all(const MeshFile& file) {
  MarkSet all(element_count(file));
  std::iota(all.begin(), all.end(), 0);
  return all;
}

void maybe_frame(const std::string& prefix, int index, const MeshFile& file) {
  if (prefix.empty()) return;
  char name[32];
  std::snprintf(name, sizeof name, "%03d.svg", index);
  export_svg(file, prefix + name);
}

}  // namespace

DemoResult demo_circle(Strategy strategy, int steps,
                       const std::string& svg_prefix) {
  DemoResult res;
  res.mesh = initial_mesh(strategy);
  int frame = 0;
  maybe_frame(svg_prefix, frame++, res.mesh);
  const double r = 0.25;
  for (int k = 0; k < steps; ++k) {
    double s = steps > 1 ? static_cast<double>(k) / (steps - 1) : 0.0;
    double cx = 0.3 + 0.4 * s, cy = 0.3 + 0.4 * s;
    MarkSet marked = mark_circle_band(res.mesh, cx, cy, r);
    if (marked.empty()) marked = mark_all(res.mesh);  // still too coarse
    auto t0 = std::chrono::steady_clock::now();
    refine_in_place(res.mesh, marked);
    res.steps.push_back({"refine", node_count(res.mesh),
                         element_count(res.mesh), now_elapsed(t0)});
    ++res.refine_steps;
    maybe_frame(svg_prefix, frame++, res.mesh);
  }
  if (steps > 0) {
    for (;;) {
      std::size_t nodes = node_count(res.mesh);
      std::size_t els = element_count(res.mesh);
      auto t0 = std::chrono::steady_clock::now();
      coarsen_in_place(res.mesh, mark_all(res.mesh));
      double dt = now_elapsed(t0);
      if (node_count(res.mesh) == nodes && element_count(res.mesh) == els)
        break;
      res.steps.push_back(
          {"coarsen", node_count(res.mesh), element_count(res.mesh), dt});
      ++res.coarsen_steps;
      maybe_frame(svg_prefix, frame++, res.mesh);
    }
  }
  return res;
}

DemoResult demo_local_coarsening(Strategy strategy,
                                 const std::string& svg_path) {
  DemoResult res;
  res.mesh = initial_mesh(strategy);
  for (int k = 0; k < 4; ++k) {
    refine_in_place(res.mesh, mark_all(res.mesh));
    ++res.refine_steps;
    res.steps.push_back(
        {"refine", node_count(res.mesh), element_count(res.mesh), 0.0});
  }
  for (int k = 0; k < 2; ++k) {
    MarkSet marked = mark_circle_inside(res.mesh, 0.5, 0.5, 0.3);
    coarsen_in_place(res.mesh, marked);
    ++res.coarsen_steps;
    res.steps.push_back(
        {"coarsen", node_count(res.mesh), element_count(res.mesh), 0.0});
  }
  if (!svg_path.empty()) export_svg(res.mesh, svg_path);
  return res;
}

std::vector<BenchRow> bench_scaling(Strategy strategy, int max_level,
                                    int reps) {
  MeshFile mesh = initial_mesh(strategy);
  for (int k = 0; k < max_level; ++k)
    refine_in_place(mesh, mark_all(mesh));

  std::vector<BenchRow> rows;
  for (int step = 1;; ++step) {
    MeshFile next = mesh;
    coarsen_in_place(next, mark_all(next));
    if (node_count(next) == node_count(mesh) &&
        element_count(next) == element_count(mesh))
      break;
    std::vector<double> times;
    for (int i = 0; i < std::max(1, reps); ++i) {
      MeshFile copy = mesh;
      auto t0 = std::chrono::steady_clock::now();
      coarsen_in_place(copy, mark_all(copy));
      times.push_back(now_elapsed(t0));
    }
    std::sort(times.begin(), times.end());
    rows.push_back({step, node_count(mesh), times[times.size() / 2]});
    mesh = std::move(next);
  }
  return rows;
}

}  // namespace mesh2d
