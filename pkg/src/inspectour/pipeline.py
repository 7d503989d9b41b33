"""End-to-end planning: scene -> viewpoints -> voxel graph -> optimized tour."""
from __future__ import annotations

from dataclasses import dataclass

from .graph import TourGraph, build_graph, tour_length, validate_tour
from .scene import Scene
from .solver import DiscreteSwarmSolver, SolveReport
from .viewpoints import CoveragePlan, boustrophedon_tour, generate_viewpoints
from .voxel import VoxelGrid, build_grid


@dataclass
class PlanResult:
    scene: Scene
    plan: CoveragePlan
    grid: VoxelGrid
    graph: TourGraph
    report: SolveReport
    tour: tuple[int, ...]  # possibly rotated to a requested start node


def rotate_tour(sequence, start: int) -> tuple[int, ...]:
    """Rotate a closed tour so it starts (and ends) at the given node."""
    body = list(sequence[:-1])
    if start not in body:
        raise ValueError(f"start node {start} is not in the tour")
    k = body.index(start)
    body = body[k:] + body[:k]
    return tuple(body) + (body[0],)


def plan_inspection(scene: Scene, *, heuristic_mode: str = "admissible",
                    start_node: int | None = None,
                    max_voxels: int | None = None,
                    **solver_params) -> PlanResult:
    """Run the full pipeline on a validated scene.

    ``solver_params`` are forwarded to DiscreteSwarmSolver; the deterministic
    back-and-forth seed tour is injected unless the caller disables it by
    passing ``seed_tour=None`` explicitly.
    """
    plan = generate_viewpoints(scene)
    grid = (build_grid(scene, max_voxels=max_voxels) if max_voxels
            else build_grid(scene))
    graph = build_graph(plan, grid, scene.axis_weights,
                        heuristic_mode=heuristic_mode)
    if "seed_tour" not in solver_params:
        solver_params["seed_tour"] = boustrophedon_tour(plan)
    solver = DiscreteSwarmSolver(**solver_params)
    solver.fit(graph.cost)
    tour = solver.best_tour_
    validate_tour(tour, graph.n_nodes)
    assert abs(tour_length(graph, tour) - solver.best_fitness_) < 1e-9
    if start_node is not None:
        tour = rotate_tour(tour, start_node)
    return PlanResult(scene=scene, plan=plan, grid=grid, graph=graph,
                      report=solver.report_, tour=tour)
