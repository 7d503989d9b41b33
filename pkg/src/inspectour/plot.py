"""Minimal SVG rendering of a planned tour: orthographic projection made by
dropping one axis. Batch output only; no interactive display."""
from __future__ import annotations

import numpy as np

_AXES = {"x": (1, 2), "y": (0, 2), "z": (0, 1)}


def _project(points, drop_axis: str):
    i, j = _AXES[drop_axis]
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    return pts[:, [i, j]]


def render_svg(result, drop_axis: str = "y", size: int = 800) -> str:
    """Render surfaces, obstacles, viewpoints and the tour path to SVG."""
    if drop_axis not in _AXES:
        raise ValueError(f"drop_axis must be one of {sorted(_AXES)}")
    scene = result.scene
    lo = _project(scene.workspace_min, drop_axis)[0]
    hi = _project(scene.workspace_max, drop_axis)[0]
    span = np.maximum(hi - lo, 1e-9)
    scale = (size - 40) / float(span.max())

    def to_px(pts):
        pts = _project(pts, drop_axis)
        xy = (pts - lo) * scale + 20.0
        xy[:, 1] = size - xy[:, 1]  # flip so +axis points up
        return xy

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
           f'height="{size}" viewBox="0 0 {size} {size}">',
           f'<rect width="{size}" height="{size}" fill="white"/>']

    def poly(points, stroke, fill, width=1.5):
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in to_px(points))
        out.append(f'<polygon points="{pts}" fill="{fill}" '
                   f'stroke="{stroke}" stroke-width="{width}"/>')

    for surf in scene.surfaces:
        poly(surf.corners(), "#2266aa", "#cfe3f5")
    for obs in scene.obstacles:
        mn, mx = obs.min_corner, obs.max_corner
        corners = [
            [mn[0], mn[1], mn[2]], [mx[0], mn[1], mn[2]],
            [mx[0], mx[1], mx[2]], [mn[0], mx[1], mx[2]],
        ]
        poly(corners, "#883322", "#e8b9ae")

    # Concatenated voxel legs of the tour.
    path_pts = []
    tour = result.tour
    for a, b in zip(tour[:-1], tour[1:]):
        leg = result.graph.leg(a, b)
        if leg is None:
            continue
        centers = [result.grid.center(w) for w in leg.waypoints]
        path_pts.extend(centers)
    if path_pts:
        pix = to_px(path_pts)
        d = "M " + " L ".join(f"{x:.2f} {y:.2f}" for x, y in pix)
        out.append(f'<path d="{d}" fill="none" stroke="#cc4400" '
                   'stroke-width="1.2"/>')

    for vp in result.plan.viewpoints:
        x, y = to_px(vp.position)[0]
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="#117733"/>')

    out.append("</svg>")
    return "\n".join(out) + "\n"


def save_svg(result, path, drop_axis: str = "y", size: int = 800) -> None:
    with open(path, "w") as fh:
        fh.write(render_svg(result, drop_axis=drop_axis, size=size))
