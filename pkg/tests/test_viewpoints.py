import numpy as np
import pytest

from conftest import make_scene
from inspectour.errors import InfeasibleViewpointError
from inspectour.scene import CameraSpec, scene_from_dict
from inspectour.viewpoints import (boustrophedon_tour, field_of_view,
                                   generate_viewpoints, grid_serpentine,
                                   primitive_size, working_distance)


def camera(r_c=2000, s_f=0.001, o_p=0.2, f=0.035, s_s=0.025):
    return CameraSpec(resolution_px=r_c, smallest_feature=s_f, overlap=o_p,
                      focal_length=f, sensor_size=s_s)


class TestFootprintMath:
    @pytest.mark.parametrize("r_c,s_f,expected", [
        (2000, 0.001, 1.0), (4000, 0.0005, 1.0), (1, 2.0, 1.0)])
    def test_field_of_view(self, r_c, s_f, expected):
        assert field_of_view(camera(r_c=r_c, s_f=s_f)) == pytest.approx(expected)

    @pytest.mark.parametrize("a,o,expected", [
        (1.0, 0.2, 0.8), (1.0, 0.0, 1.0), (2.5, 0.5, 1.25)])
    def test_primitive_size(self, a, o, expected):
        assert primitive_size(a, o) == pytest.approx(expected)

    @pytest.mark.parametrize("a,f,s_s,expected", [
        (1.0, 0.035, 0.025, 1.4), (1.0, 0.02, 0.02, 1.0),
        (0.8, 0.05, 0.02, 2.0)])
    def test_working_distance(self, a, f, s_s, expected):
        assert working_distance(a, camera(f=f, s_s=s_s)) == pytest.approx(expected)

    def test_resolution_scaling(self):
        c1 = camera(r_c=2000)
        c2 = camera(r_c=4000)
        a1, a2 = field_of_view(c1), field_of_view(c2)
        assert a2 == 2 * a1
        assert primitive_size(a2, 0.2) == 2 * primitive_size(a1, 0.2)
        assert working_distance(a2, c2) == 2 * working_distance(a1, c1)


class TestGenerateViewpoints:
    def test_grid_shape_and_positions(self):
        # 4 m x 2 m surface with 1 m cells: 2 rows x 4 cols.
        scene = make_scene(rows=2, cols=4, overlap=0.0)
        plan = generate_viewpoints(scene)
        assert plan.cells_per_surface == ((2, 4),)
        assert len(plan.viewpoints) == 8
        surf = scene.surfaces[0]
        d = plan.working_distance
        # Independent reconstruction of every expected position.
        for vp in plan.viewpoints:
            cu = (vp.cell_col + 0.5) * plan.primitive
            cv = (vp.cell_row + 0.5) * plan.primitive
            cu = min(cu, surf.width - plan.primitive / 2)
            cv = min(cv, surf.height - plan.primitive / 2)
            expected = (surf.origin + cu * surf.u_axis + cv * surf.v_axis
                        + d * surf.normal)
            assert np.linalg.norm(vp.position - expected) < 1e-9

    def test_single_cell_surface(self):
        scene = scene_from_dict({
            "camera": {"resolution_px": 2000, "smallest_feature": 0.001,
                       "overlap": 0.0, "focal_length": 0.035,
                       "sensor_size": 0.025},
            "surfaces": [{"origin": [3, 5, 2], "u_axis": [1, 0, 0],
                          "v_axis": [0, 0, 1], "width": 0.5, "height": 0.5,
                          "normal": [0, -1, 0]}],
            "obstacles": [],
            "workspace": {"min": [0, 0, 0], "max": [10, 10, 6]},
            "voxel_size": 0.5, "vehicle_radius": 0.0,
            "axis_weights": [1, 1, 1]})
        plan = generate_viewpoints(scene)
        assert len(plan.viewpoints) == 1
        vp = plan.viewpoints[0]
        center = np.array([3.25, 5.0, 2.25])
        expected = center + plan.working_distance * np.array([0, -1, 0])
        assert np.linalg.norm(vp.position - expected) < 1e-9

    def test_ids_surface_major_then_row_major(self, wall_scene):
        plan = generate_viewpoints(wall_scene)
        for i, vp in enumerate(plan.viewpoints):
            assert vp.id == i
        rows, cols = plan.cells_per_surface[0]
        for vp in plan.viewpoints:
            assert vp.id == vp.cell_row * cols + vp.cell_col

    def test_orientation_antiparallel_to_normal(self, wall_scene):
        plan = generate_viewpoints(wall_scene)
        normal = wall_scene.surfaces[0].normal
        for vp in plan.viewpoints:
            assert abs(np.dot(vp.orientation, normal) + 1.0) < 1e-12
            assert abs(np.linalg.norm(vp.orientation) - 1.0) < 1e-12

    def test_coverage_with_overlap(self):
        scene = make_scene(rows=3, cols=5, overlap=0.2)
        plan = generate_viewpoints(scene)
        surf = scene.surfaces[0]
        half = plan.fov / 2
        cols = sorted({round(float(np.dot(vp.position - surf.origin,
                                          surf.u_axis)), 9)
                       for vp in plan.viewpoints})
        # Footprint intervals must cover [0, width] and adjacent intervals
        # must overlap by at least overlap * fov.
        assert cols[0] - half <= 1e-9
        assert cols[-1] + half >= surf.width - 1e-9
        for a, b in zip(cols, cols[1:]):
            assert (a + half) - (b - half) >= 0.2 * plan.fov - 1e-9

    def test_infeasible_when_standoff_leaves_workspace(self):
        scene = scene_from_dict({
            "camera": {"resolution_px": 2000, "smallest_feature": 0.001,
                       "overlap": 0.2, "focal_length": 0.035,
                       "sensor_size": 0.025},
            "surfaces": [{"origin": [1, 1, 1], "u_axis": [1, 0, 0],
                          "v_axis": [0, 0, 1], "width": 2.0, "height": 1.0,
                          "normal": [0, -1, 0]}],
            "obstacles": [],
            "workspace": {"min": [0, 0, 0], "max": [10, 10, 6]},
            "voxel_size": 0.5, "vehicle_radius": 0.0,
            "axis_weights": [1, 1, 1]})
        # Standoff is 1.4 m but only 1 m of clearance before the boundary.
        with pytest.raises(InfeasibleViewpointError, match="workspace"):
            generate_viewpoints(scene)

    def test_infeasible_when_viewpoint_hits_obstacle(self):
        scene = make_scene(obstacles=[((2.0, 6.0, 0.0), (3.0, 7.0, 3.0))])
        with pytest.raises(InfeasibleViewpointError, match="obstacle"):
            generate_viewpoints(scene)


class TestSeedTour:
    def test_2x3_serpentine_matches_reference(self):
        scene = make_scene(rows=2, cols=3)
        plan = generate_viewpoints(scene)
        assert boustrophedon_tour(plan) == [0, 1, 2, 5, 4, 3, 0]

    def test_single_viewpoint(self):
        scene = make_scene(rows=1, cols=1)
        plan = generate_viewpoints(scene)
        assert boustrophedon_tour(plan) == [0, 0]

    @pytest.mark.parametrize("rows,cols", [(1, 4), (3, 1), (2, 2), (3, 3),
                                           (4, 3), (3, 4), (4, 4), (5, 5)])
    def test_serpentine_is_a_tour(self, rows, cols):
        seq = grid_serpentine(rows, cols)
        assert sorted(seq) == list(range(rows * cols))

    @pytest.mark.parametrize("rows,cols", [(2, 3), (4, 4), (4, 2), (2, 6)])
    def test_even_grids_close_with_unit_step(self, rows, cols):
        seq = grid_serpentine(rows, cols)
        cells = [(i // cols, i % cols) for i in seq]
        steps = list(zip(cells, cells[1:] + cells[:1]))
        assert all(abs(a[0] - b[0]) <= 1 and abs(a[1] - b[1]) <= 1
                   for a, b in steps)
