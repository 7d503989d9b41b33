"""Coverage inspection tour planning with an enhanced discrete PSO solver."""

from .errors import (InfeasibleViewpointError, InvalidTourError,
                     OccupiedEndpointError, PlanningError, ResourceLimitError,
                     SceneParseError, SceneValidationError)
from .graph import (TourGraph, build_graph, canonical_tour, load_cost_matrix,
                    save_cost_matrix, tour_length, validate_tour)
from .operators import (add_position_velocity, add_velocities, scale_velocity,
                        subtract_positions)
from .pipeline import PlanResult, plan_inspection, rotate_tour
from .scene import (CameraSpec, Obstacle, PlanarSurface, Scene, load_scene,
                    save_scene, validate_scene)
from .solver import DiscreteSwarmSolver, SolveReport, solve_matrix
from .viewpoints import (CoveragePlan, Viewpoint, boustrophedon_tour,
                         field_of_view, generate_viewpoints, primitive_size,
                         working_distance)
from .voxel import VoxelGrid, VoxelPath, build_grid, shortest_path, step_cost

__version__ = "0.1.0"

__all__ = [
    "CameraSpec", "CoveragePlan", "DiscreteSwarmSolver", "Obstacle",
    "PlanResult", "PlanarSurface", "Scene", "SolveReport", "TourGraph",
    "Viewpoint", "VoxelGrid", "VoxelPath",
    "add_position_velocity", "add_velocities", "boustrophedon_tour",
    "build_graph", "build_grid", "canonical_tour", "field_of_view",
    "generate_viewpoints", "load_cost_matrix", "load_scene",
    "plan_inspection", "primitive_size", "rotate_tour", "save_cost_matrix",
    "save_scene", "scale_velocity", "shortest_path", "solve_matrix",
    "step_cost", "subtract_positions", "tour_length", "validate_scene",
    "validate_tour", "working_distance",
    "PlanningError", "SceneParseError", "SceneValidationError",
    "InfeasibleViewpointError", "OccupiedEndpointError",
    "ResourceLimitError", "InvalidTourError",
]
