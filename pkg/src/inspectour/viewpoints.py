"""Viewpoint generation: camera footprint math and per-surface grids.

The camera footprint is treated as a square of side ``a_fov``; each surface
is decomposed into a grid of cells of side ``p`` (footprint shrunk by the
overlap fraction) and one viewpoint is placed over each cell center at the
working distance, looking along the negated surface normal.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleViewpointError
from .scene import CameraSpec, Scene


def field_of_view(camera: CameraSpec) -> float:
    """Footprint side length that still resolves the smallest feature."""
    return 0.5 * camera.resolution_px * camera.smallest_feature


def primitive_size(a_fov: float, overlap: float) -> float:
    """Grid cell size after shrinking the footprint by the overlap fraction."""
    return (1.0 - overlap) * a_fov


def working_distance(a_fov: float, camera: CameraSpec) -> float:
    """Camera standoff making the projected footprint match ``a_fov``."""
    return a_fov * camera.focal_length / camera.sensor_size


@dataclass(frozen=True)
class Viewpoint:
    id: int
    position: np.ndarray
    orientation: np.ndarray  # camera look direction (= -surface normal)
    surface_index: int
    cell_row: int
    cell_col: int


@dataclass(frozen=True)
class CoveragePlan:
    viewpoints: tuple[Viewpoint, ...]
    fov: float
    primitive: float
    working_distance: float
    cells_per_surface: tuple[tuple[int, int], ...]  # (rows, cols) per surface


def _cell_centers(extent: float, cell: float) -> list[float]:
    """1D cell centers covering [0, extent]; the last center is pulled inward
    so footprints never extend past the far edge by more than half a cell."""
    k = max(1, math.ceil(extent / cell - 1e-9))
    if k == 1:
        return [extent / 2.0]
    centers = [(i + 0.5) * cell for i in range(k - 1)]
    centers.append(extent - cell / 2.0)
    return centers


def _point_in_inflated_box(p: np.ndarray, lo: np.ndarray, hi: np.ndarray,
                           margin: float) -> bool:
    d = np.maximum(np.maximum(lo - p, p - hi), 0.0)
    return float(np.linalg.norm(d)) <= margin


def generate_viewpoints(scene: Scene) -> CoveragePlan:
    """Build the full viewpoint set for a scene.

    Raises InfeasibleViewpointError if any viewpoint falls outside the
    workspace or within the vehicle radius of an obstacle: dropping it would
    leave its cell uncovered, so the scene is rejected instead.
    """
    a_fov = field_of_view(scene.camera)
    cell = primitive_size(a_fov, scene.camera.overlap)
    dist = working_distance(a_fov, scene.camera)

    viewpoints: list[Viewpoint] = []
    cells: list[tuple[int, int]] = []
    next_id = 0
    for si, surf in enumerate(scene.surfaces):
        row_centers = _cell_centers(surf.height, cell)
        col_centers = _cell_centers(surf.width, cell)
        cells.append((len(row_centers), len(col_centers)))
        look = -surf.normal
        for r, cv in enumerate(row_centers):
            for c, cu in enumerate(col_centers):
                pos = (surf.origin + cu * surf.u_axis + cv * surf.v_axis
                       + dist * surf.normal)
                if not (np.all(pos >= scene.workspace_min - 1e-9)
                        and np.all(pos <= scene.workspace_max + 1e-9)):
                    raise InfeasibleViewpointError(
                        f"viewpoint {next_id} (surface {si}, cell {r},{c}) "
                        f"lies outside the workspace at distance {dist:.3g}")
                for oi, obs in enumerate(scene.obstacles):
                    if _point_in_inflated_box(pos, obs.min_corner,
                                              obs.max_corner,
                                              scene.vehicle_radius):
                        raise InfeasibleViewpointError(
                            f"viewpoint {next_id} (surface {si}, cell {r},{c})"
                            f" collides with obstacle {oi}")
                pos = pos.copy()
                pos.setflags(write=False)
                viewpoints.append(Viewpoint(
                    id=next_id, position=pos, orientation=look,
                    surface_index=si, cell_row=r, cell_col=c))
                next_id += 1

    return CoveragePlan(
        viewpoints=tuple(viewpoints), fov=a_fov, primitive=cell,
        working_distance=dist, cells_per_surface=tuple(cells))


def _serpentine_rows(rows: int, cols: int) -> list[tuple[int, int]]:
    out = []
    for r in range(rows):
        cs = range(cols) if r % 2 == 0 else range(cols - 1, -1, -1)
        out.extend((r, c) for c in cs)
    return out


def _closed_cycle(rows: int, cols: int) -> list[tuple[int, int]]:
    # Down column 0, then serpentine the remaining columns row by row from
    # the bottom. With an even row count this ends at (0, 1), one step from
    # the start; with both dimensions odd (no closed unit-step walk exists)
    # it ends at (0, cols-1), the cheapest closing the parity bound allows.
    out = [(r, 0) for r in range(rows)]
    for i, r in enumerate(range(rows - 1, -1, -1)):
        cs = range(1, cols) if i % 2 == 0 else range(cols - 1, 0, -1)
        out.extend((r, c) for c in cs)
    return out


def grid_serpentine(rows: int, cols: int) -> list[int]:
    """Back-and-forth visiting order of an rows x cols cell grid (row-major
    cell indices), oriented so the closing leg back to cell 0 stays short."""
    if rows == 1 or cols == 1 or rows == 2:
        order = _serpentine_rows(rows, cols)
    elif rows % 2 == 0 or (cols % 2 == 1 and cols <= rows):
        order = _closed_cycle(rows, cols)
    else:
        order = [(r, c) for c, r in _closed_cycle(cols, rows)]
    return [r * cols + c for r, c in order]


def boustrophedon_tour(plan: CoveragePlan) -> list[int]:
    """Deterministic back-and-forth seed tour over all surfaces, closed."""
    seq: list[int] = []
    base = 0
    for rows, cols in plan.cells_per_surface:
        seq.extend(base + i for i in grid_serpentine(rows, cols))
        base += rows * cols
    seq.append(seq[0])
    return seq


def plan_to_dict(plan: CoveragePlan) -> dict:
    return {
        "fov": plan.fov,
        "primitive": plan.primitive,
        "working_distance": plan.working_distance,
        "cells_per_surface": [list(rc) for rc in plan.cells_per_surface],
        "viewpoints": [
            {
                "id": vp.id,
                "position": list(vp.position),
                "orientation": list(vp.orientation),
                "surface_index": vp.surface_index,
                "cell_row": vp.cell_row,
                "cell_col": vp.cell_col,
            }
            for vp in plan.viewpoints
        ],
    }


def save_plan(plan: CoveragePlan, path) -> None:
    with open(path, "w") as fh:
        json.dump(plan_to_dict(plan), fh, indent=2)
        fh.write("\n")
