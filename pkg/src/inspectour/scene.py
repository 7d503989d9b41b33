"""Scene description model: camera, planar surfaces, box obstacles, workspace.

Scenes are loaded from JSON files with a fixed schema (see README); unknown
keys are rejected so typos fail loudly. All lengths are meters in one global
frame. Instances are immutable after construction and safe to share.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SceneParseError, SceneValidationError

_UNIT_TOL = 1e-9
_RENORM_TOL = 1e-6
_CONTAIN_TOL = 1e-9


def _vec3(value, name: str) -> np.ndarray:
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SceneParseError(f"{name}: expected three numbers") from exc
    if arr.shape != (3,):
        raise SceneParseError(f"{name}: expected three numbers, got {value!r}")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


def _maybe_renormalize(v: np.ndarray, name: str) -> np.ndarray:
    """Re-normalize a direction vector if it is within 1e-6 of unit length."""
    n = float(np.linalg.norm(v))
    if n == 0.0:
        return v
    if abs(n - 1.0) <= _RENORM_TOL and abs(n - 1.0) > 0.0:
        out = (np.asarray(v) / n).copy()
        out.setflags(write=False)
        return out
    return v


@dataclass(frozen=True)
class CameraSpec:
    """Inspection camera parameters driving viewpoint geometry."""

    resolution_px: int
    smallest_feature: float
    overlap: float
    focal_length: float
    sensor_size: float

    def violations(self) -> list[str]:
        out = []
        if not self.resolution_px > 0:
            out.append("camera.resolution_px must be > 0")
        if not self.smallest_feature > 0:
            out.append("camera.smallest_feature must be > 0")
        if not self.focal_length > 0:
            out.append("camera.focal_length must be > 0")
        if not self.sensor_size > 0:
            out.append("camera.sensor_size must be > 0")
        if not 0.0 <= self.overlap:
            out.append("camera.overlap must be >= 0")
        elif not self.overlap < 1.0:
            out.append("camera.overlap must be < 1")
        return out


@dataclass(frozen=True)
class PlanarSurface:
    """Rectangle in 3D: origin corner, two in-plane axes, outward normal."""

    origin: np.ndarray
    u_axis: np.ndarray
    v_axis: np.ndarray
    width: float
    height: float
    normal: np.ndarray

    def corners(self) -> np.ndarray:
        o, u, v = self.origin, self.u_axis, self.v_axis
        return np.array([
            o,
            o + self.width * u,
            o + self.width * u + self.height * v,
            o + self.height * v,
        ])

    def violations(self, idx: int = 0) -> list[str]:
        tag = f"surfaces[{idx}]"
        out = []
        for name, vec in (("u_axis", self.u_axis), ("v_axis", self.v_axis),
                          ("normal", self.normal)):
            if abs(float(np.linalg.norm(vec)) - 1.0) >= _UNIT_TOL:
                out.append(f"{tag}.{name} must be a unit vector")
        for a, b in (("u_axis", "v_axis"), ("u_axis", "normal"),
                     ("v_axis", "normal")):
            d = abs(float(np.dot(getattr(self, a), getattr(self, b))))
            if d >= 1e-9:
                out.append(f"{tag}.{a} and {tag}.{b} must be orthogonal")
        if not self.width > 0:
            out.append(f"{tag}.width must be > 0")
        if not self.height > 0:
            out.append(f"{tag}.height must be > 0")
        return out


@dataclass(frozen=True)
class Obstacle:
    """Axis-aligned box given by two opposite corners."""

    min_corner: np.ndarray
    max_corner: np.ndarray

    def violations(self, idx: int = 0) -> list[str]:
        if not np.all(self.min_corner < self.max_corner):
            return [f"obstacles[{idx}]: min corner must be strictly below max"]
        return []


@dataclass(frozen=True)
class Scene:
    """Full inspection scene; immutable once built."""

    camera: CameraSpec
    surfaces: tuple[PlanarSurface, ...]
    obstacles: tuple[Obstacle, ...]
    workspace_min: np.ndarray
    workspace_max: np.ndarray
    voxel_size: float
    vehicle_radius: float
    axis_weights: tuple[float, float, float] = (1.0, 1.0, 1.0)


def validate_scene(scene: Scene) -> list[str]:
    """Return all invariant violations; empty list means the scene is valid."""
    out = list(scene.camera.violations())
    if not np.all(scene.workspace_min < scene.workspace_max):
        out.append("workspace.min must be strictly below workspace.max")
    if not scene.voxel_size > 0:
        out.append("voxel_size must be > 0")
    if not scene.vehicle_radius >= 0:
        out.append("vehicle_radius must be >= 0")
    if len(scene.axis_weights) != 3 or any(w < 0 for w in scene.axis_weights):
        out.append("axis_weights must be three nonnegative numbers")
    elif not any(w > 0 for w in scene.axis_weights):
        out.append("axis_weights must have at least one positive entry")

    lo = scene.workspace_min - _CONTAIN_TOL
    hi = scene.workspace_max + _CONTAIN_TOL
    for i, surf in enumerate(scene.surfaces):
        out.extend(surf.violations(i))
        for c in surf.corners():
            if not (np.all(c >= lo) and np.all(c <= hi)):
                out.append(f"surfaces[{i}] extends outside the workspace box")
                break
    for i, obs in enumerate(scene.obstacles):
        out.extend(obs.violations(i))
        if not (np.all(obs.min_corner >= lo) and np.all(obs.max_corner <= hi)):
            out.append(f"obstacles[{i}] extends outside the workspace box")
    return out


_TOP_KEYS = {"camera", "surfaces", "obstacles", "workspace", "voxel_size",
             "vehicle_radius", "axis_weights"}
_CAMERA_KEYS = {"resolution_px", "smallest_feature", "overlap",
                "focal_length", "sensor_size"}
_SURFACE_KEYS = {"origin", "u_axis", "v_axis", "width", "height", "normal"}
_OBSTACLE_KEYS = {"min", "max"}
_WORKSPACE_KEYS = {"min", "max"}


def _reject_unknown(mapping: dict, allowed: set, where: str) -> None:
    unknown = set(mapping) - allowed
    if unknown:
        raise SceneParseError(f"{where}: unknown key(s) {sorted(unknown)}")


def scene_from_dict(data: dict) -> Scene:
    """Build a Scene from a parsed scene document; raises on any violation."""
    if not isinstance(data, dict):
        raise SceneParseError("scene document must be an object")
    _reject_unknown(data, _TOP_KEYS, "scene")
    for key in ("camera", "workspace", "voxel_size", "vehicle_radius"):
        if key not in data:
            raise SceneParseError(f"scene: missing required key {key!r}")

    cam = data["camera"]
    if not isinstance(cam, dict):
        raise SceneParseError("camera must be an object")
    _reject_unknown(cam, _CAMERA_KEYS, "camera")
    try:
        camera = CameraSpec(
            resolution_px=int(cam["resolution_px"]),
            smallest_feature=float(cam["smallest_feature"]),
            overlap=float(cam["overlap"]),
            focal_length=float(cam["focal_length"]),
            sensor_size=float(cam["sensor_size"]),
        )
    except KeyError as exc:
        raise SceneParseError(f"camera: missing key {exc.args[0]!r}") from exc

    surfaces = []
    for i, s in enumerate(data.get("surfaces", [])):
        _reject_unknown(s, _SURFACE_KEYS, f"surfaces[{i}]")
        try:
            surfaces.append(PlanarSurface(
                origin=_vec3(s["origin"], f"surfaces[{i}].origin"),
                u_axis=_maybe_renormalize(
                    _vec3(s["u_axis"], f"surfaces[{i}].u_axis"), "u_axis"),
                v_axis=_maybe_renormalize(
                    _vec3(s["v_axis"], f"surfaces[{i}].v_axis"), "v_axis"),
                width=float(s["width"]),
                height=float(s["height"]),
                normal=_maybe_renormalize(
                    _vec3(s["normal"], f"surfaces[{i}].normal"), "normal"),
            ))
        except KeyError as exc:
            raise SceneParseError(
                f"surfaces[{i}]: missing key {exc.args[0]!r}") from exc

    obstacles = []
    for i, o in enumerate(data.get("obstacles", [])):
        _reject_unknown(o, _OBSTACLE_KEYS, f"obstacles[{i}]")
        try:
            obstacles.append(Obstacle(
                min_corner=_vec3(o["min"], f"obstacles[{i}].min"),
                max_corner=_vec3(o["max"], f"obstacles[{i}].max"),
            ))
        except KeyError as exc:
            raise SceneParseError(
                f"obstacles[{i}]: missing key {exc.args[0]!r}") from exc

    ws = data["workspace"]
    if not isinstance(ws, dict):
        raise SceneParseError("workspace must be an object")
    _reject_unknown(ws, _WORKSPACE_KEYS, "workspace")
    try:
        ws_min = _vec3(ws["min"], "workspace.min")
        ws_max = _vec3(ws["max"], "workspace.max")
    except KeyError as exc:
        raise SceneParseError(
            f"workspace: missing key {exc.args[0]!r}") from exc

    weights = data.get("axis_weights", (1.0, 1.0, 1.0))
    try:
        weights = tuple(float(w) for w in weights)
    except (TypeError, ValueError) as exc:
        raise SceneParseError("axis_weights must be three numbers") from exc

    scene = Scene(
        camera=camera,
        surfaces=tuple(surfaces),
        obstacles=tuple(obstacles),
        workspace_min=ws_min,
        workspace_max=ws_max,
        voxel_size=float(data["voxel_size"]),
        vehicle_radius=float(data["vehicle_radius"]),
        axis_weights=weights,
    )
    problems = validate_scene(scene)
    if problems:
        raise SceneValidationError(problems[0])
    return scene


def load_scene(path) -> Scene:
    """Load and validate a scene file; raises SceneParseError or
    SceneValidationError naming the first problem found."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SceneParseError(f"cannot read scene file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SceneParseError(f"malformed scene file {path}: {exc}") from exc
    return scene_from_dict(data)


def scene_to_dict(scene: Scene) -> dict:
    return {
        "camera": {
            "resolution_px": scene.camera.resolution_px,
            "smallest_feature": scene.camera.smallest_feature,
            "overlap": scene.camera.overlap,
            "focal_length": scene.camera.focal_length,
            "sensor_size": scene.camera.sensor_size,
        },
        "surfaces": [
            {
                "origin": list(s.origin),
                "u_axis": list(s.u_axis),
                "v_axis": list(s.v_axis),
                "width": s.width,
                "height": s.height,
                "normal": list(s.normal),
            }
            for s in scene.surfaces
        ],
        "obstacles": [
            {"min": list(o.min_corner), "max": list(o.max_corner)}
            for o in scene.obstacles
        ],
        "workspace": {"min": list(scene.workspace_min),
                      "max": list(scene.workspace_max)},
        "voxel_size": scene.voxel_size,
        "vehicle_radius": scene.vehicle_radius,
        "axis_weights": list(scene.axis_weights),
    }


def save_scene(scene: Scene, path) -> None:
    with open(path, "w") as fh:
        json.dump(scene_to_dict(scene), fh, indent=2)
        fh.write("\n")
