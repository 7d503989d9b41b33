"""Reference solvers and oracles: exhaustive TSP, exact DP, nearest-neighbor
plus 2-opt, plain (unaugmented) DPSO, and a uniform-cost search oracle for
voxel path costs."""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .solver import DiscreteSwarmSolver, SolveReport, _best_exchange
from .voxel import NEIGHBOR_STEPS, VoxelGrid, step_cost

BRUTE_FORCE_LIMIT = 12


@dataclass(frozen=True)
class BenchResult:
    algorithm: str
    instance: str
    seed: int
    cost: float
    wall_time: float
    effort: int  # generations or node expansions


def brute_force_tsp(cost: np.ndarray, limit: int = BRUTE_FORCE_LIMIT):
    """Exhaustive optimum over (n-1)!/2 distinct cyclic tours.

    Returns (closed tour, cost). Guarded by a node limit.
    """
    n = cost.shape[0]
    if n > limit:
        raise ValueError(f"brute force limited to {limit} nodes, got {n}")
    if n == 1:
        return (0, 0), 0.0
    if n == 2:
        return (0, 1, 0), float(cost[0, 1] + cost[1, 0])
    best_cost = math.inf
    best = None
    rows = cost.tolist()
    for perm in itertools.permutations(range(1, n)):
        if perm[0] > perm[-1]:  # skip mirror images
            continue
        total = rows[0][perm[0]] + rows[perm[-1]][0]
        prev = perm[0]
        for node in perm[1:]:
            total += rows[prev][node]
            prev = node
        if total < best_cost:
            best_cost = total
            best = perm
    return (0,) + best + (0,), float(best_cost)


def held_karp_tsp(cost: np.ndarray, limit: int = 16):
    """Exact dynamic-programming optimum (Held-Karp); usable up to ~16 nodes.

    Independent of the brute-force enumerator; returns (closed tour, cost).
    """
    n = cost.shape[0]
    if n > limit:
        raise ValueError(f"held_karp limited to {limit} nodes, got {n}")
    if n == 1:
        return (0, 0), 0.0
    rows = cost.tolist()
    m = n - 1  # nodes 1..n-1, bitmask over them
    size = 1 << m
    INF = math.inf
    dp = [[INF] * m for _ in range(size)]
    parent = [[-1] * m for _ in range(size)]
    for j in range(m):
        dp[1 << j][j] = rows[0][j + 1]
    for mask in range(1, size):
        row = dp[mask]
        for j in range(m):
            cur = row[j]
            if cur == INF or not (mask >> j) & 1:
                continue
            cj = rows[j + 1]
            for k in range(m):
                if (mask >> k) & 1:
                    continue
                nm = mask | (1 << k)
                nc = cur + cj[k + 1]
                if nc < dp[nm][k]:
                    dp[nm][k] = nc
                    parent[nm][k] = j
    full = size - 1
    best_cost, best_j = min(
        (dp[full][j] + rows[j + 1][0], j) for j in range(m))
    seq = []
    mask, j = full, best_j
    while j != -1:
        seq.append(j + 1)
        mask, j = mask ^ (1 << j), parent[mask][j]
    seq.reverse()
    return (0,) + tuple(seq) + (0,), float(best_cost)


def nearest_neighbor_two_opt(cost: np.ndarray):
    """Nearest-neighbor construction from node 0, then 2-opt to a fixed
    point (best-improvement). Returns (closed tour, cost)."""
    n = cost.shape[0]
    if n == 1:
        return (0, 0), 0.0
    rows = cost.tolist()
    unvisited = set(range(1, n))
    body = [0]
    while unvisited:
        cur = body[-1]
        nxt = min(unvisited, key=lambda j: (rows[cur][j], j))
        unvisited.remove(nxt)
        body.append(nxt)
    total = sum(rows[a][b] for a, b in zip(body, body[1:] + body[:1]))
    while True:
        body, delta = _best_exchange(body, cost)
        if delta == 0.0:
            break
        total += delta
    return tuple(body) + (0,), float(total)


def plain_dpso(cost, **params) -> SolveReport:
    """Unaugmented DPSO baseline: random init, no mutation, no 2-opt."""
    params = dict(params)
    params.update(seed_tour=None, seed_fraction=0.0,
                  use_mutation=False, use_edge_exchange=False)
    solver = DiscreteSwarmSolver(**params)
    solver.fit(cost)
    return solver.report_


def dijkstra_oracle(grid: VoxelGrid, start, goal,
                    weights) -> float | None:
    """Exact minimal motion cost by uniform-cost search; None if blocked."""
    start, goal = tuple(start), tuple(goal)
    if not grid.is_free(start) or not grid.is_free(goal):
        raise ValueError("start and goal must be free voxels")
    if start == goal:
        return 0.0
    occ = grid.occupancy
    nx, ny, nz = grid.dims
    step_costs = [step_cost(*d, weights) for d in NEIGHBOR_STEPS]
    dist = {start: 0.0}
    frontier = [(0.0, start)]
    done = set()
    while frontier:
        g, cur = heapq.heappop(frontier)
        if cur in done:
            continue
        if cur == goal:
            return g
        done.add(cur)
        cx, cy, cz = cur
        for (dx, dy, dz), sc in zip(NEIGHBOR_STEPS, step_costs):
            x, y, z = cx + dx, cy + dy, cz + dz
            if not (0 <= x < nx and 0 <= y < ny and 0 <= z < nz):
                continue
            if occ[x, y, z]:
                continue
            nxt = (x, y, z)
            ng = g + sc
            if ng < dist.get(nxt, math.inf):
                dist[nxt] = ng
                heapq.heappush(frontier, (ng, nxt))
    return None
