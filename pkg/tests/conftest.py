import numpy as np
import pytest

from inspectour.scene import scene_from_dict


def make_scene(rows=2, cols=3, obstacles=(), voxel_size=0.4,
               vehicle_radius=0.0, overlap=0.2):
    """Single-wall scene whose surface decomposes into a rows x cols grid."""
    p = (1 - overlap) * 1.0  # a_fov is 1.0 m with this camera
    return scene_from_dict({
        "camera": {"resolution_px": 2000, "smallest_feature": 0.001,
                   "overlap": overlap, "focal_length": 0.035,
                   "sensor_size": 0.025},
        "surfaces": [{"origin": [1.0, 8.0, 0.5], "u_axis": [1, 0, 0],
                      "v_axis": [0, 0, 1], "width": cols * p,
                      "height": rows * p, "normal": [0, -1, 0]}],
        "obstacles": [{"min": list(lo), "max": list(hi)}
                      for lo, hi in obstacles],
        "workspace": {"min": [0, 0, 0], "max": [8, 10, 6]},
        "voxel_size": voxel_size,
        "vehicle_radius": vehicle_radius,
        "axis_weights": [1.0, 1.0, 1.0],
    })


def random_euclidean_matrix(n, rng):
    pts = rng.random((n, 2)) * 10.0
    c = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
    np.fill_diagonal(c, 0.0)
    return c


@pytest.fixture
def wall_scene():
    return make_scene()
