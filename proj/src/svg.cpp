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
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mesh2d/io.hpp"

namespace mesh2d {

namespace {

class SvgWriter {
 public:
  SvgWriter(const std::vector<Point>& coords, const std::string& path,
            double width)
      : coords_(coords), out_(path) {
    if (!out_) throw std::runtime_error("cannot write '" + path + "'");
    double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const Point& p : coords) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
    if (coords.empty()) xmin = ymin = 0, xmax = ymax = 1;
    double w = std::max(xmax - xmin, 1e-12);
    double h = std::max(ymax - ymin, 1e-12);
    scale_ = (width - 2 * kPad) / w;
    x0_ = xmin;
    y1_ = ymax;
    width_ = width;
    height_ = h * scale_ + 2 * kPad;
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_
         << "\" height=\"" << height_ << "\" viewBox=\"0 0 " << width_ << " "
         << height_ << "\">\n";
  }

  ~SvgWriter() { out_ << "</svg>\n"; }

  template <typename ElementT>
  void polygon(const ElementT& el, const std::string& fill) {
    out_ << "  <polygon points=\"";
    for (std::size_t k = 0; k < el.size(); ++k) {
      const Point& p = coords_[el[k]];
      out_ << (k ? " " : "") << px(p.x) << "," << py(p.y);
    }
    out_ << "\" fill=\"" << fill
         << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }

  void dot(int node) {
    const Point& p = coords_[node];
    out_ << "  <circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y)
         << "\" r=\"3.5\" fill=\"crimson\"/>\n";
  }

 private:
  static constexpr double kPad = 10.0;
  double px(double x) const { return kPad + (x - x0_) * scale_; }
  double py(double y) const { return kPad + (y1_ - y) * scale_; }

  const std::vector<Point>& coords_;
  std::ofstream out_;
  double scale_ = 1, x0_ = 0, y1_ = 1, width_ = 0, height_ = 0;
};

constexpr const char* kPlain = "white";
constexpr const char* kGreen = "#c8e6c9";
constexpr const char* kBlue = "#bbdefb";

}  // namespace

void export_svg(const TriMesh& mesh, const std::string& path,
                const SvgOptions& options) {
  SvgWriter svg(mesh.coordinates, path, options.width);
  const std::size_t n_plain = mesh.elements3.size() - mesh.n_green;
  for (std::size_t el = 0; el < mesh.elements3.size(); ++el)
    svg.polygon(mesh.elements3[el],
                options.fill_blocks && el >= n_plain ? kGreen : kPlain);
  if (options.show_hanging)
    for (const Tri& e : mesh.irregular) svg.dot(e[2]);
}

void export_svg(const QuadMesh& mesh, const std::string& path,
                const SvgOptions& options) {
  SvgWriter svg(mesh.coordinates, path, options.width);
  const std::size_t n_plain = mesh.elements4.size() - mesh.n_blue;
  for (std::size_t el = 0; el < mesh.elements4.size(); ++el)
    svg.polygon(mesh.elements4[el],
                options.fill_blocks && el >= n_plain ? kBlue : kPlain);
  if (options.show_hanging)
    for (const Tri& e : mesh.irregular) svg.dot(e[2]);
}

void export_svg(const MixedMesh& mesh, const std::string& path,
                const SvgOptions& options) {
  SvgWriter svg(mesh.coordinates, path, options.width);
  const std::size_t n_plain = mesh.elements4.size() - mesh.n_green4;
  for (std::size_t el = 0; el < mesh.elements4.size(); ++el)
    svg.polygon(mesh.elements4[el],
                options.fill_blocks && el >= n_plain ? kGreen : kPlain);
  for (const Tri& t : mesh.elements3)
    svg.polygon(t, options.fill_blocks ? kGreen : kPlain);
}

void export_svg(const MeshFile& file, const std::string& path,
                const SvgOptions& options) {
  std::visit([&](const auto& m) { export_svg(m, path, options); }, file.mesh);
}

}  // namespace mesh2d
