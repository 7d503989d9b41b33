"""Complete weighted tour graph over viewpoints.

Edge costs are obstacle-aware shortest-path costs between viewpoint voxels;
pairs with no free path get a virtual edge whose cost dominates any tour
built from real edges, so the optimizer prefers real connectivity whenever
it exists.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleViewpointError, InvalidTourError
from .viewpoints import CoveragePlan
from .voxel import VoxelGrid, VoxelPath, shortest_path

VIRTUAL_SCALE = 1e3
_FALLBACK_VIRTUAL = 1e6  # when no finite edge exists to scale from


@dataclass(frozen=True)
class TourGraph:
    n_nodes: int
    cost: np.ndarray  # (n, n) symmetric, zero diagonal
    legs: dict  # (i, j) with i < j -> VoxelPath; absent for virtual edges
    virtual: np.ndarray  # (n, n) bool
    virtual_cost: float

    def leg(self, i: int, j: int) -> VoxelPath | None:
        if i == j:
            return None
        key = (i, j) if i < j else (j, i)
        path = self.legs.get(key)
        if path is not None and i > j:
            return VoxelPath(waypoints=tuple(reversed(path.waypoints)),
                             motion_cost=path.motion_cost)
        return path


def build_graph(plan: CoveragePlan, grid: VoxelGrid,
                weights: tuple[float, float, float],
                heuristic_mode: str = "admissible") -> TourGraph:
    """All-pairs shortest-path graph over the plan's viewpoints."""
    n = len(plan.viewpoints)
    voxels = []
    for vp in plan.viewpoints:
        idx = grid.point_to_voxel(vp.position)
        if not grid.is_free(idx):
            raise InfeasibleViewpointError(
                f"viewpoint {vp.id} maps to occupied voxel {idx}")
        voxels.append(idx)

    cost = np.zeros((n, n), dtype=float)
    virtual = np.zeros((n, n), dtype=bool)
    legs: dict[tuple[int, int], VoxelPath] = {}
    blocked_pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            path = shortest_path(grid, voxels[i], voxels[j], weights,
                                 heuristic_mode=heuristic_mode)
            if path is None:
                blocked_pairs.append((i, j))
            else:
                cost[i, j] = cost[j, i] = path.motion_cost
                legs[(i, j)] = path

    max_finite = float(cost.max()) if n > 1 else 0.0
    virtual_cost = (VIRTUAL_SCALE * n * max_finite
                    if max_finite > 0 else _FALLBACK_VIRTUAL)
    for i, j in blocked_pairs:
        cost[i, j] = cost[j, i] = virtual_cost
        virtual[i, j] = virtual[j, i] = True

    cost.setflags(write=False)
    virtual.setflags(write=False)
    return TourGraph(n_nodes=n, cost=cost, legs=legs, virtual=virtual,
                     virtual_cost=virtual_cost)


def validate_tour(sequence, n_nodes: int) -> None:
    """Raise InvalidTourError unless sequence is a closed tour over 0..n-1."""
    seq = list(sequence)
    if len(seq) != n_nodes + 1:
        raise InvalidTourError(
            f"tour must have {n_nodes + 1} entries, got {len(seq)}")
    if seq[0] != seq[-1]:
        raise InvalidTourError("tour is an open loop: first != last node")
    body = seq[:-1]
    seen = set(body)
    if len(seen) != n_nodes:
        dup = next(x for x in body if body.count(x) > 1)
        raise InvalidTourError(f"node {dup} appears more than once")
    if seen != set(range(n_nodes)):
        missing = sorted(set(range(n_nodes)) - seen)
        raise InvalidTourError(f"missing or unknown nodes: {missing[:5]}")


def tour_length(graph: TourGraph, sequence) -> float:
    """Total cost of a closed tour; validates the sequence first."""
    validate_tour(sequence, graph.n_nodes)
    seq = np.asarray(sequence, dtype=int)
    return float(graph.cost[seq[:-1], seq[1:]].sum())


def canonical_tour(sequence) -> tuple[int, ...]:
    """Canonical representative of a closed tour's rotation/reflection class:
    rotate node 0 to the front, then pick the direction with the smaller
    second element."""
    body = list(sequence[:-1])
    k = body.index(0)
    body = body[k:] + body[:k]
    if len(body) > 2 and body[-1] < body[1]:
        body = [body[0]] + body[:0:-1]
    return tuple(body + [0])


def uses_virtual_edge(graph: TourGraph, sequence) -> bool:
    seq = np.asarray(sequence, dtype=int)
    return bool(graph.virtual[seq[:-1], seq[1:]].any())


def save_cost_matrix(path, cost: np.ndarray) -> None:
    """Plain-text matrix: header line with n, then n rows of n numbers."""
    n = cost.shape[0]
    with open(path, "w") as fh:
        fh.write(f"{n}\n")
        for row in cost:
            fh.write(" ".join(repr(float(x)) for x in row))
            fh.write("\n")


def load_cost_matrix(path) -> np.ndarray:
    with open(path) as fh:
        tokens = fh.read().split()
    if not tokens:
        raise ValueError(f"empty cost matrix file {path}")
    n = int(tokens[0])
    vals = [float(t) for t in tokens[1:]]
    if len(vals) != n * n:
        raise ValueError(
            f"cost matrix {path}: expected {n * n} entries, got {len(vals)}")
    return np.asarray(vals, dtype=float).reshape(n, n)
