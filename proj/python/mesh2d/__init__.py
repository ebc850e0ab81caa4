# Copyright 2026 The mesh2d Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Adaptive refinement and history-free coarsening of 2D meshes."""

from _mesh2d import (  # noqa: F401
    MixedMesh,
    QuadMesh,
    TriMesh,
    coarsen_nvb,
    coarsen_rb,
    coarsen_rg_quad,
    coarsen_rg_tri,
    coarsen_rgb,
    export_svg,
    initial_mesh,
    load_mesh,
    qcoarsen_r,
    qrefine_r,
    qrefine_rb,
    qrefine_rg,
    save_mesh,
    strategies,
    tcoarsen_r,
    trefine_nvb,
    trefine_r,
    trefine_rg,
    trefine_rgb,
)

__all__ = [
    "MixedMesh",
    "QuadMesh",
    "TriMesh",
    "coarsen_nvb",
    "coarsen_rb",
    "coarsen_rg_quad",
    "coarsen_rg_tri",
    "coarsen_rgb",
    "export_svg",
    "initial_mesh",
    "load_mesh",
    "qcoarsen_r",
    "qrefine_r",
    "qrefine_rb",
    "qrefine_rg",
    "save_mesh",
    "strategies",
    "tcoarsen_r",
    "trefine_nvb",
    "trefine_r",
    "trefine_rg",
    "trefine_rgb",
]
