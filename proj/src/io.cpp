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

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mesh2d/io.hpp"

namespace mesh2d {

namespace {

const std::array<std::pair<Strategy, const char*>, 7> kTags = {{
    {Strategy::TR, "t-r"},
    {Strategy::TRG, "t-rg"},
    {Strategy::TRGB, "t-rgb"},
    {Strategy::TNVB, "t-nvb"},
    {Strategy::QR, "q-r"},
    {Strategy::QRG, "q-rg"},
    {Strategy::QRB, "q-rb"},
}};

}  // namespace

Strategy strategy_from_tag(const std::string& tag) {
  for (const auto& [s, t] : kTags)
    if (tag == t) return s;
  throw std::runtime_error("unknown strategy '" + tag +
                           "' (expected one of t-r t-rg t-rgb t-nvb q-r q-rg "
                           "q-rb)");
}

std::string strategy_tag(Strategy s) {
  for (const auto& [k, t] : kTags)
    if (k == s) return t;
  return "?";
}

bool is_triangular(Strategy s) {
  return s == Strategy::TR || s == Strategy::TRG || s == Strategy::TRGB ||
         s == Strategy::TNVB;
}

namespace {

struct RawFile {
  std::vector<Point> coordinates;
  std::vector<Tri> elements3;
  std::vector<Quad> elements4;
  std::vector<Tri> irregular;
  std::vector<EdgePair> boundary;
  int n0 = -1;
  int n_green = 0, n_blue = 0, n_green4 = 0;
  std::string strategy;
};

[[noreturn]] void fail(const std::string& path, int line,
                       const std::string& msg) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + msg);
}

RawFile parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  RawFile raw;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank
    if (first == "META" || first == "COORDINATES" || first == "ELEMENTS3" ||
        first == "ELEMENTS4" || first == "IRREGULAR" || first == "BOUNDARY") {
      section = first;
      continue;
    }
    auto read_ints = [&](int n, auto& dest) {
      std::array<long, 4> v{};
      std::istringstream is(line);
      for (int k = 0; k < n; ++k)
        if (!(is >> v[k])) fail(path, lineno, "expected " + std::to_string(n) +
                                                  " indices");
      std::string extra;
      if (is >> extra) fail(path, lineno, "trailing data");
      typename std::remove_reference_t<decltype(dest)>::value_type item{};
      for (int k = 0; k < n; ++k) item[k] = static_cast<int>(v[k]);
      dest.push_back(item);
    };
    if (section == "META") {
      std::istringstream is(line);
      std::string key;
      is >> key;
      if (key == "strategy") {
        if (!(is >> raw.strategy)) fail(path, lineno, "missing strategy tag");
      } else if (key == "n0" || key == "n_green" || key == "n_blue" ||
                 key == "n_green4") {
        int value = 0;
        if (!(is >> value) || value < 0)
          fail(path, lineno, "expected a non-negative integer for " + key);
        (key == "n0"        ? raw.n0
         : key == "n_green" ? raw.n_green
         : key == "n_blue"  ? raw.n_blue
                            : raw.n_green4) = value;
      } else {
        fail(path, lineno, "unknown META key '" + key + "'");
      }
    } else if (section == "COORDINATES") {
      Point p;
      std::istringstream is(line);
      if (!(is >> p.x >> p.y)) fail(path, lineno, "expected two coordinates");
      raw.coordinates.push_back(p);
    } else if (section == "ELEMENTS3") {
      read_ints(3, raw.elements3);
    } else if (section == "ELEMENTS4") {
      read_ints(4, raw.elements4);
    } else if (section == "IRREGULAR") {
      read_ints(3, raw.irregular);
    } else if (section == "BOUNDARY") {
      read_ints(2, raw.boundary);
    } else {
      fail(path, lineno, "data before any section header");
    }
  }
  if (raw.strategy.empty())
    throw std::runtime_error(path + ": META section must name a strategy");
  if (raw.n0 < 0) throw std::runtime_error(path + ": META section must set n0");
  return raw;
}

// Translate 1-based file indices to 0-based and bounds-check.
template <typename ListT>
void to_zero_based(ListT& list, int n_nodes, const std::string& path,
                   const char* what) {
  for (auto& item : list)
    for (int& v : item) {
      if (v < 1 || v > n_nodes)
        throw std::runtime_error(path + ": " + what + " index " +
                                 std::to_string(v) + " out of range 1.." +
                                 std::to_string(n_nodes));
      --v;
    }
}

template <typename ListT>
void to_one_based(ListT list, std::ofstream& out, const char* header) {
  if (list.empty()) return;
  out << header << "\n";
  for (const auto& item : list) {
    for (std::size_t k = 0; k < item.size(); ++k)
      out << (k ? " " : "") << item[k] + 1;
    out << "\n";
  }
}

}  // namespace

MeshFile load_mesh(const std::string& path) {
  RawFile raw = parse_file(path);
  MeshFile file;
  file.strategy = strategy_from_tag(raw.strategy);
  const int n_nodes = static_cast<int>(raw.coordinates.size());
  if (raw.n0 > n_nodes)
    throw std::runtime_error(path + ": n0 exceeds the coordinate count");
  to_zero_based(raw.elements3, n_nodes, path, "element");
  to_zero_based(raw.elements4, n_nodes, path, "element");
  to_zero_based(raw.irregular, n_nodes, path, "irregular");
  to_zero_based(raw.boundary, n_nodes, path, "boundary");

  if (file.strategy == Strategy::QRG) {
    MixedMesh m;
    m.coordinates = std::move(raw.coordinates);
    m.elements3 = std::move(raw.elements3);
    m.elements4 = std::move(raw.elements4);
    m.boundary = std::move(raw.boundary);
    m.n0 = raw.n0;
    m.n_green4 = raw.n_green4;
    if (!raw.irregular.empty())
      throw std::runtime_error(path +
                               ": q-rg meshes are conforming, IRREGULAR "
                               "must be empty");
    if (m.n_green4 > static_cast<int>(m.elements4.size()))
      throw std::runtime_error(path + ": n_green4 exceeds ELEMENTS4");
    file.mesh = std::move(m);
  } else if (is_triangular(file.strategy)) {
    TriMesh m;
    m.coordinates = std::move(raw.coordinates);
    m.elements3 = std::move(raw.elements3);
    m.irregular = std::move(raw.irregular);
    m.boundary = std::move(raw.boundary);
    m.n0 = raw.n0;
    m.n_green = raw.n_green;
    if (!raw.elements4.empty())
      throw std::runtime_error(path + ": triangular mesh with ELEMENTS4");
    if (m.n_green > static_cast<int>(m.elements3.size()))
      throw std::runtime_error(path + ": n_green exceeds ELEMENTS3");
    file.mesh = std::move(m);
  } else {
    QuadMesh m;
    m.coordinates = std::move(raw.coordinates);
    m.elements4 = std::move(raw.elements4);
    m.irregular = std::move(raw.irregular);
    m.boundary = std::move(raw.boundary);
    m.n0 = raw.n0;
    m.n_blue = raw.n_blue;
    if (!raw.elements3.empty())
      throw std::runtime_error(path + ": quadrilateral mesh with ELEMENTS3");
    if (m.n_blue > static_cast<int>(m.elements4.size()))
      throw std::runtime_error(path + ": n_blue exceeds ELEMENTS4");
    file.mesh = std::move(m);
  }
  return file;
}

namespace {

void write_coordinates(std::ofstream& out, const std::vector<Point>& coords) {
  out << "COORDINATES\n";
  char buf[64];
  for (const Point& p : coords) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
    out << buf;
  }
}

}  // namespace

void save_mesh(const MeshFile& file, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "META\n";
  out << "strategy " << strategy_tag(file.strategy) << "\n";
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        out << "n0 " << m.n0 << "\n";
        if constexpr (std::is_same_v<T, TriMesh>) {
          if (m.n_green) out << "n_green " << m.n_green << "\n";
          write_coordinates(out, m.coordinates);
          to_one_based(m.elements3, out, "ELEMENTS3");
          to_one_based(m.irregular, out, "IRREGULAR");
          to_one_based(m.boundary, out, "BOUNDARY");
        } else if constexpr (std::is_same_v<T, QuadMesh>) {
          if (m.n_blue) out << "n_blue " << m.n_blue << "\n";
          write_coordinates(out, m.coordinates);
          to_one_based(m.elements4, out, "ELEMENTS4");
          to_one_based(m.irregular, out, "IRREGULAR");
          to_one_based(m.boundary, out, "BOUNDARY");
        } else {
          if (m.n_green4) out << "n_green4 " << m.n_green4 << "\n";
          write_coordinates(out, m.coordinates);
          to_one_based(m.elements3, out, "ELEMENTS3");
          to_one_based(m.elements4, out, "ELEMENTS4");
          to_one_based(m.boundary, out, "BOUNDARY");
        }
      },
      file.mesh);
  if (!out) throw std::runtime_error("error while writing '" + path + "'");
}

}  // namespace mesh2d
