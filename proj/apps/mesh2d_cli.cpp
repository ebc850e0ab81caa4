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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mesh2d/demo.hpp"
#include "mesh2d/io.hpp"

namespace {

using namespace mesh2d;

// --marked accepts: "all", a list of zero-based element ids, or
// "circle cx cy r" (elements cut by the circle line).
MarkSet parse_marked(const std::vector<std::string>& tokens,
                     const MeshFile& file) {
  if (tokens.empty() || tokens[0] == "all") {
    MarkSet all(element_count(file));
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return all;
  }
  if (tokens[0] == "circle") {
    if (tokens.size() != 4)
      throw std::runtime_error("--marked circle needs cx cy r");
    return mark_circle_band(file, std::stod(tokens[1]), std::stod(tokens[2]),
                            std::stod(tokens[3]));
  }
  MarkSet ids;
  for (const std::string& t : tokens) ids.push_back(std::stoi(t));
  return ids;
}

MeshFile load_checked(const std::string& input, const std::string& strategy) {
  MeshFile file = load_mesh(input);
  if (!strategy.empty() && strategy_from_tag(strategy) != file.strategy)
    throw std::runtime_error("--strategy " + strategy +
                             " does not match the input file (" +
                             strategy_tag(file.strategy) + ")");
  return file;
}

void print_summary(const MeshFile& file) {
  std::cout << strategy_tag(file.strategy) << ": " << node_count(file)
            << " nodes, " << element_count(file) << " elements\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive refinement and history-free coarsening of "
               "triangular and quadrilateral meshes"};
  app.require_subcommand(1);

  std::string input, output, strategy, policy = "any", out_prefix;
  std::vector<std::string> marked_tokens;
  bool iterate = false, no_hanging = false, no_fill = false;
  int steps = 6, max_level = 6;

  auto add_mesh_opts = [&](CLI::App* cmd, bool needs_out) {
    cmd->add_option("--input", input, "input mesh file")->required();
    cmd->add_option("--strategy", strategy,
                    "strategy tag, must match the input file");
    cmd->add_option("--marked", marked_tokens,
                    "all | zero-based ids | circle cx cy r")
        ->expected(-1);
    auto* out = cmd->add_option("--out", output, "output mesh file");
    if (needs_out) out->required();
  };

  auto* refine = app.add_subcommand("refine", "one refinement call");
  add_mesh_opts(refine, true);

  auto* coarsen = app.add_subcommand("coarsen", "one or more coarsening calls");
  add_mesh_opts(coarsen, true);
  coarsen->add_option("--policy", policy, "any | all (marked quartet policy)")
      ->check(CLI::IsMember({"any", "all"}));
  coarsen->add_flag("--iterate", iterate,
                    "repeat until the mesh stops changing");

  auto* demo = app.add_subcommand("demo", "built-in demonstrations");
  demo->require_subcommand(1);
  auto* demo_c = demo->add_subcommand("circle", "refine along a moving circle,"
                                                " then coarsen to fixpoint");
  demo_c->add_option("--strategy", strategy, "strategy tag")->required();
  demo_c->add_option("--steps", steps, "refinement rounds");
  demo_c->add_option("--out-prefix", out_prefix, "write <prefix>NNN.svg frames");
  auto* demo_l = demo->add_subcommand("local", "uniform refinement, circular"
                                               " local coarsening");
  demo_l->add_option("--strategy", strategy, "strategy tag")->required();
  demo_l->add_option("--out", output, "output SVG file");

  auto* bench = app.add_subcommand("bench", "benchmarks");
  bench->require_subcommand(1);
  auto* bench_s = bench->add_subcommand(
      "scaling", "per-step coarsening times after uniform refinement");
  bench_s->add_option("--strategy", strategy, "strategy tag")->required();
  bench_s->add_option("--max-level", max_level, "uniform refinement rounds");
  bench_s->add_option("--out", output, "CSV output file (default stdout)");

  auto* svg = app.add_subcommand("export-svg", "render a mesh file as SVG");
  svg->add_option("--input", input, "input mesh file")->required();
  svg->add_option("--out", output, "output SVG file")->required();
  svg->add_flag("--no-hanging", no_hanging, "omit hanging-node dots");
  svg->add_flag("--no-fill", no_fill, "omit green/blue block tinting");

  CLI11_PARSE(app, argc, argv);

  try {
    if (refine->parsed()) {
      MeshFile file = load_checked(input, strategy);
      refine_in_place(file, parse_marked(marked_tokens, file));
      save_mesh(file, output);
      print_summary(file);
    } else if (coarsen->parsed()) {
      MeshFile file = load_checked(input, strategy);
      MarkPolicy pol = policy == "all" ? MarkPolicy::AllOf : MarkPolicy::AnyOf;
      for (;;) {
        std::size_t nodes = node_count(file), els = element_count(file);
        coarsen_in_place(file, parse_marked(marked_tokens, file), pol);
        if (!iterate ||
            (node_count(file) == nodes && element_count(file) == els))
          break;
      }
      save_mesh(file, output);
      print_summary(file);
    } else if (demo_c->parsed()) {
      DemoResult res =
          demo_circle(strategy_from_tag(strategy), steps, out_prefix);
      for (const StepRecord& s : res.steps)
        std::printf("%-8s %8zu nodes %8zu elements %10.6f s\n",
                    s.phase.c_str(), s.nodes, s.elements, s.seconds);
      std::printf("refine steps: %d, coarsen steps: %d\n", res.refine_steps,
                  res.coarsen_steps);
    } else if (demo_l->parsed()) {
      DemoResult res =
          demo_local_coarsening(strategy_from_tag(strategy), output);
      for (const StepRecord& s : res.steps)
        std::printf("%-8s %8zu nodes %8zu elements\n", s.phase.c_str(),
                    s.nodes, s.elements);
    } else if (bench_s->parsed()) {
      auto rows = bench_scaling(strategy_from_tag(strategy), max_level);
      std::ostream* os = &std::cout;
      std::ofstream fout;
      if (!output.empty()) {
        fout.open(output);
        if (!fout) throw std::runtime_error("cannot write '" + output + "'");
        os = &fout;
      }
      *os << "step,nodes,seconds\n";
      for (const BenchRow& r : rows)
        *os << r.step << "," << r.nodes << "," << r.seconds << "\n";
    } else if (svg->parsed()) {
      SvgOptions options;
      options.show_hanging = !no_hanging;
      options.fill_blocks = !no_fill;
      export_svg(load_mesh(input), output, options);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
