"""Voxelized workspace and obstacle-aware shortest paths.

The workspace box is divided into cubic voxels; obstacle boxes are
rasterized and then inflated by the vehicle radius (Euclidean, voxel-center
to voxel-center) so the vehicle can be treated as a point. Paths run on the
26-connected voxel graph with per-axis weighted step costs.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import OccupiedEndpointError, ResourceLimitError
from .scene import Scene

Index = tuple[int, int, int]

DEFAULT_VOXEL_BUDGET = 10**8

# All 26 neighbor offsets, fixed order for deterministic expansion.
NEIGHBOR_STEPS: tuple[Index, ...] = tuple(
    (a, b, c)
    for a in (-1, 0, 1) for b in (-1, 0, 1) for c in (-1, 0, 1)
    if (a, b, c) != (0, 0, 0)
)


def step_cost(alpha: int, beta: int, gamma: int,
              weights: tuple[float, float, float]) -> float:
    """Cost of one voxel move (alpha, beta, gamma), components in {-1,0,1}."""
    if (alpha, beta, gamma) == (0, 0, 0):
        raise ValueError("step must move to a neighboring voxel")
    a1, a2, a3 = weights
    return a1 * alpha * alpha + a2 * beta * beta + a3 * gamma * gamma


@dataclass(frozen=True)
class VoxelGrid:
    dims: tuple[int, int, int]
    origin: np.ndarray
    voxel_size: float
    occupancy: np.ndarray  # bool, shape == dims

    def center(self, idx: Index) -> np.ndarray:
        return self.origin + (np.asarray(idx, dtype=float) + 0.5) * self.voxel_size

    def point_to_voxel(self, point) -> Index:
        """Nearest voxel (containing cell, clipped to the grid)."""
        rel = (np.asarray(point, dtype=float) - self.origin) / self.voxel_size
        idx = np.clip(np.floor(rel).astype(int), 0,
                      np.asarray(self.dims) - 1)
        return (int(idx[0]), int(idx[1]), int(idx[2]))

    def is_free(self, idx: Index) -> bool:
        return not bool(self.occupancy[idx])


@dataclass(frozen=True)
class VoxelPath:
    waypoints: tuple[Index, ...]
    motion_cost: float


def build_grid(scene: Scene, max_voxels: int = DEFAULT_VOXEL_BUDGET) -> VoxelGrid:
    """Rasterize the scene into an occupancy grid, inflated by vehicle_radius."""
    span = scene.workspace_max - scene.workspace_min
    dims = tuple(int(max(1, math.ceil(s / scene.voxel_size - 1e-9)))
                 for s in span)
    n_total = dims[0] * dims[1] * dims[2]
    if n_total > max_voxels:
        raise ResourceLimitError(
            f"grid of {dims} = {n_total} voxels exceeds budget {max_voxels}")

    occ = np.zeros(dims, dtype=bool)
    for obs in scene.obstacles:
        lo = np.floor((obs.min_corner - scene.workspace_min)
                      / scene.voxel_size + 1e-9).astype(int)
        hi = np.ceil((obs.max_corner - scene.workspace_min)
                     / scene.voxel_size - 1e-9).astype(int)
        lo = np.clip(lo, 0, np.asarray(dims))
        hi = np.clip(hi, 0, np.asarray(dims))
        occ[lo[0]:hi[0], lo[1]:hi[1], lo[2]:hi[2]] = True

    if scene.vehicle_radius > 0 and occ.any():
        dist = ndimage.distance_transform_edt(
            ~occ, sampling=scene.voxel_size)
        occ = occ | (dist <= scene.vehicle_radius + 1e-9)

    occ.setflags(write=False)
    origin = scene.workspace_min.copy()
    origin.setflags(write=False)
    return VoxelGrid(dims=dims, origin=origin,
                     voxel_size=scene.voxel_size, occupancy=occ)


def _admissible_heuristic(idx: Index, goal: Index,
                          weights: tuple[float, float, float]) -> float:
    # Each axis i needs at least |d_i| steps touching it, each paying w_i,
    # so max_i w_i*|d_i| is a lower bound on the remaining cost.
    return max(weights[i] * abs(idx[i] - goal[i]) for i in range(3))


def _paper_heuristic(idx: Index, goal: Index, weights) -> float:
    # Squared Euclidean remaining distance in voxel units; can overestimate.
    return float(sum((idx[i] - goal[i]) ** 2 for i in range(3)))


def shortest_path(grid: VoxelGrid, start: Index, goal: Index,
                  weights: tuple[float, float, float],
                  heuristic_mode: str = "admissible") -> VoxelPath | None:
    """A* on the 26-connected free-voxel graph; None means blocked.

    ``admissible`` mode is exact (matches Dijkstra); ``paper`` mode uses the
    squared-distance priority, kept for fidelity experiments, and may return
    a suboptimal path.
    """
    for name, idx in (("start", start), ("goal", goal)):
        if not grid.is_free(idx):
            raise OccupiedEndpointError(f"{name} voxel {idx} is occupied")
    if heuristic_mode == "admissible":
        h = _admissible_heuristic
    elif heuristic_mode == "paper":
        h = _paper_heuristic
    else:
        raise ValueError(f"unknown heuristic_mode {heuristic_mode!r}")

    start = tuple(start)
    goal = tuple(goal)
    if start == goal:
        return VoxelPath(waypoints=(start,), motion_cost=0.0)

    occ = grid.occupancy
    nx, ny, nz = grid.dims
    step_costs = [step_cost(*d, weights) for d in NEIGHBOR_STEPS]

    g_score: dict[Index, float] = {start: 0.0}
    came: dict[Index, Index] = {}
    # Heap entries ordered by (f, g, voxel index): cheaper accumulated cost
    # first, then lexicographic index, for deterministic results.
    frontier = [(h(start, goal, weights), 0.0, start)]
    closed: set[Index] = set()

    while frontier:
        f, g, cur = heapq.heappop(frontier)
        if cur in closed:
            continue
        if cur == goal:
            path = [cur]
            while cur != start:
                cur = came[cur]
                path.append(cur)
            path.reverse()
            return VoxelPath(waypoints=tuple(path), motion_cost=g)
        closed.add(cur)
        cx, cy, cz = cur
        for (dx, dy, dz), sc in zip(NEIGHBOR_STEPS, step_costs):
            x, y, z = cx + dx, cy + dy, cz + dz
            if not (0 <= x < nx and 0 <= y < ny and 0 <= z < nz):
                continue
            if occ[x, y, z]:
                continue
            nxt = (x, y, z)
            ng = g + sc
            if ng < g_score.get(nxt, math.inf):
                g_score[nxt] = ng
                came[nxt] = cur
                heapq.heappush(frontier, (ng + h(nxt, goal, weights), ng, nxt))
    return None
