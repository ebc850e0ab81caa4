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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <variant>

#include "mesh2d/coarsen_bisect.hpp"
#include "mesh2d/coarsen_red.hpp"
#include "mesh2d/coarsen_regular.hpp"
#include "mesh2d/demo.hpp"
#include "mesh2d/io.hpp"
#include "mesh2d/mesh.hpp"
#include "mesh2d/refine.hpp"

namespace py = pybind11;
using namespace mesh2d;

namespace {

// Coordinates travel as lists of (x, y) tuples.
std::vector<std::pair<double, double>> coords_out(
    const std::vector<Point>& pts) {
  std::vector<std::pair<double, double>> out;
  out.reserve(pts.size());
  for (const Point& p : pts) out.emplace_back(p.x, p.y);
  return out;
}

std::vector<Point> coords_in(
    const std::vector<std::pair<double, double>>& pts) {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const auto& [x, y] : pts) out.push_back({x, y});
  return out;
}

template <typename ClassT, typename MeshT>
void bind_common(ClassT& cls) {
  cls.def(py::init<>())
      .def_property(
          "coordinates",
          [](const MeshT& m) { return coords_out(m.coordinates); },
          [](MeshT& m, const std::vector<std::pair<double, double>>& c) {
            m.coordinates = coords_in(c);
          })
      .def_readwrite("irregular", &MeshT::irregular)
      .def_readwrite("boundary", &MeshT::boundary)
      .def_readwrite("n0", &MeshT::n0)
      .def("total_area", [](const MeshT& m) { return total_area(m); })
      .def("is_conforming", [](const MeshT& m) { return check_conforming(m); })
      .def("is_1_irregular",
           [](const MeshT& m) { return check_1_irregular(m).ok; });
}

}  // namespace

PYBIND11_MODULE(_mesh2d, m) {
  m.doc() =
      "Adaptive refinement and history-free coarsening of 2D triangular and "
      "quadrilateral meshes";

  py::class_<TriMesh> tri(m, "TriMesh");
  bind_common<py::class_<TriMesh>, TriMesh>(tri);
  tri.def_readwrite("elements3", &TriMesh::elements3)
      .def_readwrite("n_green", &TriMesh::n_green)
      .def("__len__", [](const TriMesh& t) { return t.elements3.size(); });

  py::class_<QuadMesh> quad(m, "QuadMesh");
  bind_common<py::class_<QuadMesh>, QuadMesh>(quad);
  quad.def_readwrite("elements4", &QuadMesh::elements4)
      .def_readwrite("n_blue", &QuadMesh::n_blue)
      .def("__len__", [](const QuadMesh& q) { return q.elements4.size(); });

  py::class_<MixedMesh> mixed(m, "MixedMesh");
  mixed.def(py::init<>())
      .def_property(
          "coordinates",
          [](const MixedMesh& m_) { return coords_out(m_.coordinates); },
          [](MixedMesh& m_, const std::vector<std::pair<double, double>>& c) {
            m_.coordinates = coords_in(c);
          })
      .def_readwrite("elements3", &MixedMesh::elements3)
      .def_readwrite("elements4", &MixedMesh::elements4)
      .def_readwrite("boundary", &MixedMesh::boundary)
      .def_readwrite("n0", &MixedMesh::n0)
      .def_readwrite("n_green4", &MixedMesh::n_green4)
      .def("total_area", [](const MixedMesh& m_) { return total_area(m_); })
      .def("is_conforming",
           [](const MixedMesh& m_) { return check_conforming(m_); })
      .def("__len__", [](const MixedMesh& m_) {
        return m_.elements3.size() + m_.elements4.size();
      });

  // Refinement.
  m.def("trefine_r",
        [](const TriMesh& t, const MarkSet& marked, bool two_neighbor_rule) {
          return trefine_r(t, marked, two_neighbor_rule);
        },
        py::arg("mesh"), py::arg("marked"), py::arg("two_neighbor_rule") = false);
  m.def("qrefine_r",
        [](const QuadMesh& q, const MarkSet& marked) {
          return qrefine_r(q, marked);
        },
        py::arg("mesh"), py::arg("marked"));
  m.def("trefine_rg", &trefine_rg, py::arg("mesh"), py::arg("marked"));
  m.def("qrefine_rg", &qrefine_rg, py::arg("mesh"), py::arg("marked"));
  m.def("qrefine_rb", &qrefine_rb, py::arg("mesh"), py::arg("marked"));
  m.def("trefine_nvb",
        [](const TriMesh& t, const MarkSet& marked) {
          return trefine_nvb(t, marked);
        },
        py::arg("mesh"), py::arg("marked"));
  m.def("trefine_rgb",
        [](const TriMesh& t, const MarkSet& marked) {
          return trefine_rgb(t, marked);
        },
        py::arg("mesh"), py::arg("marked"));

  // Coarsening.
  m.def("tcoarsen_r",
        [](const TriMesh& t, const MarkSet& marked, bool two_neighbor_rule) {
          return coarsen_r(t, marked, MarkPolicy::AnyOf, two_neighbor_rule);
        },
        py::arg("mesh"), py::arg("marked"), py::arg("two_neighbor_rule") = false);
  m.def("qcoarsen_r",
        [](const QuadMesh& q, const MarkSet& marked) {
          return coarsen_r(q, marked);
        },
        py::arg("mesh"), py::arg("marked"));
  m.def("coarsen_rg_tri",
        [](const TriMesh& t, const MarkSet& marked) {
          return coarsen_rg_tri(t, marked);
        },
        py::arg("mesh"), py::arg("marked"));
  m.def("coarsen_rg_quad",
        [](const MixedMesh& g, const MarkSet& marked) {
          return coarsen_rg_quad(g, marked);
        },
        py::arg("mesh"), py::arg("marked"));
  m.def("coarsen_rb",
        [](const QuadMesh& q, const MarkSet& marked) {
          return coarsen_rb(q, marked);
        },
        py::arg("mesh"), py::arg("marked"));
  m.def("coarsen_nvb",
        [](const TriMesh& t, const MarkSet& marked) {
          return coarsen_nvb(t, marked);
        },
        py::arg("mesh"), py::arg("marked"));
  m.def("coarsen_rgb",
        [](const TriMesh& t, const MarkSet& marked) {
          return coarsen_rgb(t, marked);
        },
        py::arg("mesh"), py::arg("marked"));

  // Files and plots. A loaded mesh is returned together with its strategy
  // tag; save takes the tag alongside the mesh.
  m.def("load_mesh", [](const std::string& path) {
    MeshFile f = load_mesh(path);
    py::object mesh = std::visit(
        [](const auto& m_) { return py::cast(m_); }, f.mesh);
    return py::make_tuple(mesh, strategy_tag(f.strategy));
  });
  m.def("save_mesh",
        [](py::object mesh, const std::string& strategy,
           const std::string& path) {
          MeshFile f;
          f.strategy = strategy_from_tag(strategy);
          if (py::isinstance<TriMesh>(mesh))
            f.mesh = mesh.cast<TriMesh>();
          else if (py::isinstance<QuadMesh>(mesh))
            f.mesh = mesh.cast<QuadMesh>();
          else
            f.mesh = mesh.cast<MixedMesh>();
          save_mesh(f, path);
        },
        py::arg("mesh"), py::arg("strategy"), py::arg("path"));
  m.def("export_svg",
        [](py::object mesh, const std::string& path) {
          if (py::isinstance<TriMesh>(mesh))
            export_svg(mesh.cast<TriMesh>(), path);
          else if (py::isinstance<QuadMesh>(mesh))
            export_svg(mesh.cast<QuadMesh>(), path);
          else
            export_svg(mesh.cast<MixedMesh>(), path);
        },
        py::arg("mesh"), py::arg("path"));

  m.def("strategies", [] {
    std::vector<std::string> tags;
    for (Strategy s : {Strategy::TR, Strategy::TRG, Strategy::TRGB,
                       Strategy::TNVB, Strategy::QR, Strategy::QRG,
                       Strategy::QRB})
      tags.push_back(strategy_tag(s));
    return tags;
  });
  m.def("initial_mesh", [](const std::string& strategy) {
    MeshFile f = initial_mesh(strategy_from_tag(strategy));
    return std::visit([](const auto& m_) { return py::cast(m_); }, f.mesh);
  });
}
