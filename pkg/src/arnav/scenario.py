"""Scenario files: one JSON document wiring a scene to all runtime settings.

A scenario names the scene manifest, the grid layout, discovery / lidar /
agent parameters, the robot's home pose, an optional scripted observer
trajectory (tick-stamped keyframes, linearly interpolated), optional
scripted commands, the tick rate, and the master seed. Relative paths are
resolved against the scenario file's directory.

Example:

    {
      "name": "museum_hall",
      "scene_manifest": "scene/manifest.txt",
      "grid": {"origin": [0, 0, 0], "cell_size": 0.25, "width": 48, "height": 32},
      "footprint": {"radius": 0.35, "clearance_height": 1.2},
      "slope_max_deg": 30,
      "discovery": {"range": 5.0, "p_detect_opaque": 1.0, "p_detect_transparent": 0.0},
      "lidar": {"beam_count": 360, "max_range": 8.0, "scan_height": 0.3,
                "rotation_period": 120},
      "agent": {"speed": 0.6, "turn_rate": 3.141592653589793, "goal_tolerance": 0.15},
      "home_pose": {"x": 3.0, "z": 2.0, "heading": 0.0},
      "observer_path": [{"tick": 0, "x": 1, "y": 1.6, "z": 1, "yaw": 0.0}],
      "commands": [{"tick": 40, "kind": "Trigger",
                    "origin": [1, 1.6, 1], "direction": [0.6, -0.64, 0.48]}],
      "tick_rate": 30,
      "seed": 7
    }
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .agent import AgentParams, Pose2D
from .discovery import DiscoveryParams
from .geometry import Vec3
from .lidar import LidarParams
from .traversability import GridSpec, RobotFootprint

DEFAULT_POINTER_RANGE = 20.0


class ScenarioError(Exception):
    pass


@dataclass(frozen=True)
class ObserverKeyframe:
    tick: int
    x: float
    y: float
    z: float
    yaw: float


@dataclass
class Scenario:
    name: str
    scene_manifest: str  # absolute path after loading
    grid_spec: GridSpec
    footprint: RobotFootprint
    slope_max: float  # radians
    discovery: DiscoveryParams
    lidar: LidarParams
    agent: AgentParams
    home_pose: Pose2D
    observer_path: List[ObserverKeyframe] = field(default_factory=list)
    commands: List[Dict[str, Any]] = field(default_factory=list)
    tick_rate: float = 30.0
    seed: int = 0
    pointer_range: float = DEFAULT_POINTER_RANGE
    fov: float = math.radians(90.0)


def observer_pose_at(path: List[ObserverKeyframe], tick: int) -> Optional[Tuple[Vec3, float]]:
    """Interpolated (position, yaw) at a tick; clamped at both ends.

    Yaw interpolates along the shortest arc. None when no keyframes exist.
    """
    if not path:
        return None
    if tick <= path[0].tick:
        k = path[0]
        return Vec3(k.x, k.y, k.z), k.yaw
    if tick >= path[-1].tick:
        k = path[-1]
        return Vec3(k.x, k.y, k.z), k.yaw
    for a, b in zip(path, path[1:]):
        if a.tick <= tick <= b.tick:
            span = b.tick - a.tick
            t = 0.0 if span == 0 else (tick - a.tick) / span
            pos = Vec3(
                a.x + (b.x - a.x) * t,
                a.y + (b.y - a.y) * t,
                a.z + (b.z - a.z) * t,
            )
            # shortest-arc yaw blend
            d = math.remainder(b.yaw - a.yaw, 2.0 * math.pi)
            return pos, a.yaw + d * t
    k = path[-1]
    return Vec3(k.x, k.y, k.z), k.yaw


def _require(obj: Dict[str, Any], key: str, where: str) -> Any:
    if key not in obj:
        raise ScenarioError(f"{where}: missing required field {key!r}")
    return obj[key]


def _vec3(v: Any, where: str) -> Vec3:
    if not (isinstance(v, (list, tuple)) and len(v) == 3):
        raise ScenarioError(f"{where}: expected [x, y, z]")
    try:
        return Vec3(float(v[0]), float(v[1]), float(v[2]))
    except (TypeError, ValueError) as e:
        raise ScenarioError(f"{where}: bad vector: {e}") from e


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise ScenarioError(f"cannot open scenario {path!r}: {e}") from e
    except json.JSONDecodeError as e:
        raise ScenarioError(f"{path}: invalid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise ScenarioError(f"{path}: scenario must be a JSON object")

    base = os.path.dirname(os.path.abspath(path))
    try:
        manifest = _require(doc, "scene_manifest", path)
        manifest_path = manifest if os.path.isabs(manifest) else os.path.join(base, manifest)
        if not os.path.exists(manifest_path):
            raise ScenarioError(f"{path}: scene manifest {manifest_path!r} does not exist")

        g = _require(doc, "grid", path)
        grid_spec = GridSpec(
            origin=_vec3(_require(g, "origin", "grid"), "grid.origin"),
            cell_size=float(_require(g, "cell_size", "grid")),
            width=int(_require(g, "width", "grid")),
            height=int(_require(g, "height", "grid")),
        )

        fp = doc.get("footprint", {})
        footprint = RobotFootprint(
            radius=float(fp.get("radius", 0.35)),
            clearance_height=float(fp.get("clearance_height", 1.2)),
        )

        seed = int(doc.get("seed", 0))
        d = doc.get("discovery", {})
        discovery = DiscoveryParams(
            range=float(d.get("range", 5.0)),
            p_detect_opaque=float(d.get("p_detect_opaque", 1.0)),
            p_detect_transparent=float(d.get("p_detect_transparent", 0.0)),
            seed=int(d.get("seed", seed)),
        )

        li = doc.get("lidar", {})
        lidar = LidarParams(
            beam_count=int(li.get("beam_count", 360)),
            max_range=float(li.get("max_range", 8.0)),
            scan_height=float(li.get("scan_height", 0.3)),
            rotation_period=int(li.get("rotation_period", 120)),
        )

        a = doc.get("agent", {})
        agent = AgentParams(
            speed=float(a.get("speed", 0.6)),
            turn_rate=float(a.get("turn_rate", math.pi)),
            goal_tolerance=float(a.get("goal_tolerance", 0.15)),
        )

        hp = _require(doc, "home_pose", path)
        home = Pose2D(
            x=float(_require(hp, "x", "home_pose")),
            z=float(_require(hp, "z", "home_pose")),
            heading=float(hp.get("heading", 0.0)),
            ground_y=float(hp.get("ground_y", 0.0)),
        )

        frames: List[ObserverKeyframe] = []
        for i, kf in enumerate(doc.get("observer_path", [])):
            frames.append(
                ObserverKeyframe(
                    tick=int(_require(kf, "tick", f"observer_path[{i}]")),
                    x=float(_require(kf, "x", f"observer_path[{i}]")),
                    y=float(_require(kf, "y", f"observer_path[{i}]")),
                    z=float(_require(kf, "z", f"observer_path[{i}]")),
                    yaw=float(kf.get("yaw", 0.0)),
                )
            )
        if any(b.tick < a.tick for a, b in zip(frames, frames[1:])):
            raise ScenarioError(f"{path}: observer_path ticks must be non-decreasing")

        commands: List[Dict[str, Any]] = []
        for i, cmd in enumerate(doc.get("commands", [])):
            if "tick" not in cmd or "kind" not in cmd:
                raise ScenarioError(f"{path}: commands[{i}] needs 'tick' and 'kind'")
            commands.append(dict(cmd))
        commands.sort(key=lambda c: int(c["tick"]))

        tick_rate = float(doc.get("tick_rate", 30.0))
        if tick_rate <= 0:
            raise ScenarioError(f"{path}: tick_rate must be positive")

        return Scenario(
            name=str(doc.get("name", os.path.splitext(os.path.basename(path))[0])),
            scene_manifest=manifest_path,
            grid_spec=grid_spec,
            footprint=footprint,
            slope_max=math.radians(float(doc.get("slope_max_deg", 30.0))),
            discovery=discovery,
            lidar=lidar,
            agent=agent,
            home_pose=home,
            observer_path=frames,
            commands=commands,
            tick_rate=tick_rate,
            seed=seed,
            pointer_range=float(doc.get("pointer_range", DEFAULT_POINTER_RANGE)),
            fov=math.radians(float(doc.get("observer_fov_deg", 90.0))),
        )
    except ScenarioError:
        raise
    except (TypeError, ValueError, KeyError) as e:
        raise ScenarioError(f"{path}: invalid scenario: {e}") from e
