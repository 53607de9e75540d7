"""Session: the fixed-timestep simulation loop and everything around it.

One Session owns all mutable state (worlds, grid, agent, visualization
flags) and advances it tick by tick. The per-tick order is a determinism
contract, not an implementation detail:

    apply queued commands -> step discovery -> update grid cells
    -> agent tick -> lidar scan -> assemble snapshot

Snapshots are plain JSON-ready dictionaries; serialized canonically they
make replays byte-comparable (see protocol.canonical_dumps).

Threading: the tick loop is the single writer. Network code (server.py)
only ever enqueues validated commands and reads finished snapshots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .agent import Agent, Mode, Pose2D
from .discovery import ObserverPose, step_discovery
from .geometry import Vec3
from .lidar import LidarFrame, scan
from .planner import GoalNotNavigable, NoPath
from .scene import load_scene
from .scenario import Scenario, ScenarioError, observer_pose_at
from .traversability import TraversabilityGrid
from .world import WorldModel

AUDIO_STUB_DURATION = 30.0  # seconds; narration content is out of scope
LIDAR_MODE_DIM = 0.8


class CommandError(Exception):
    """Raised for malformed command objects (bad kind, missing fields)."""


class VisualizationMode(Enum):
    STANDARD = "Standard"
    LIDAR = "LidarMode"
    TRAVERSABLE = "TraversableOverlay"


LANGUAGES = ("DE", "EN")

COMMAND_KINDS = (
    "MenuToggle", "Trigger", "SetMode", "SetLanguage", "Reset", "PlayAudio",
    "MoveObserver",
)


def validate_command(cmd: Any) -> Dict[str, Any]:
    """Normalize a raw command object; raises CommandError when malformed."""
    if not isinstance(cmd, dict):
        raise CommandError("command must be an object")
    kind = cmd.get("kind")
    if kind not in COMMAND_KINDS:
        raise CommandError(f"unknown command kind {kind!r}")
    out: Dict[str, Any] = {"kind": kind}
    if kind == "Trigger":
        try:
            origin = [float(v) for v in cmd["origin"]]
            direction = [float(v) for v in cmd["direction"]]
        except (KeyError, TypeError, ValueError) as e:
            raise CommandError(f"Trigger needs numeric origin and direction: {e}") from e
        if len(origin) != 3 or len(direction) != 3:
            raise CommandError("Trigger origin/direction must have 3 components")
        norm = math.sqrt(sum(v * v for v in direction))
        if norm <= 0 or not math.isfinite(norm):
            raise CommandError("Trigger direction must be a nonzero vector")
        # renormalize: JSON round trips can nudge a unit vector slightly
        out["origin"] = origin
        out["direction"] = [v / norm for v in direction]
    elif kind == "SetMode":
        mode = cmd.get("mode")
        if mode not in tuple(m.value for m in VisualizationMode):
            raise CommandError(f"unknown visualization mode {mode!r}")
        out["mode"] = mode
    elif kind == "SetLanguage":
        lang = cmd.get("language")
        if lang not in LANGUAGES:
            raise CommandError(f"unknown language {lang!r}")
        out["language"] = lang
    elif kind == "MoveObserver":
        try:
            for k in ("x", "y", "z", "yaw"):
                out[k] = float(cmd[k])
        except (KeyError, TypeError, ValueError) as e:
            raise CommandError(f"MoveObserver needs numeric x, y, z, yaw: {e}") from e
    return out


@dataclass
class SessionSnapshot:
    tick: int
    robot: Dict[str, Any]
    path: Optional[Dict[str, Any]]
    lidar: Dict[str, Any]
    grid: Dict[str, Any]
    discovered_chunk_ids: List[str]
    mode: str
    dim_level: float
    language: str
    menu_open: bool
    observer: Dict[str, float]
    pointer: Optional[Dict[str, Any]]
    events: List[Dict[str, Any]]

    def to_wire(self) -> Dict[str, Any]:
        return {
            "type": "Snapshot",
            "tick": self.tick,
            "robot": self.robot,
            "path": self.path,
            "lidar": self.lidar,
            "grid": self.grid,
            "discovered_chunk_ids": self.discovered_chunk_ids,
            "mode": self.mode,
            "dim_level": self.dim_level,
            "language": self.language,
            "menu_open": self.menu_open,
            "observer": self.observer,
            "pointer": self.pointer,
            "events": self.events,
        }


def occlusion_mask(world: WorldModel, viewpoint: Vec3, points: Sequence[Vec3]) -> List[bool]:
    """hidden[i] is True when geometry crosses the open segment viewpoint->point.

    A point coinciding with the viewpoint is always visible.
    """
    return [world.segment_blocked(viewpoint, p) for p in points]


class Session:
    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.truth = load_scene(scenario.scene_manifest)
        self.discovered = WorldModel()
        self.grid = TraversabilityGrid(
            scenario.grid_spec, scenario.footprint, scenario.slope_max
        )
        self.agent = Agent(scenario.home_pose, scenario.agent)
        self.tick = 0
        self.dt = 1.0 / scenario.tick_rate
        self.mode = VisualizationMode.STANDARD
        self.language = "DE"
        self.menu_open = False
        self.observer_pos = Vec3(scenario.home_pose.x, 1.6, scenario.home_pose.z)
        self.observer_yaw = 0.0
        self._manual_observer = False
        self._queue: List[Dict[str, Any]] = []
        self._scripted: Dict[int, List[Dict[str, Any]]] = {}
        for cmd in scenario.commands:
            try:
                norm = validate_command(cmd)
            except CommandError as e:
                # scripted commands are part of the scenario file; fail early
                raise ScenarioError(f"scenario command at tick {cmd.get('tick')}: {e}") from e
            self._scripted.setdefault(int(cmd["tick"]), []).append(norm)
        self._events: List[Dict[str, Any]] = []
        self._pointer: Optional[Dict[str, Any]] = None
        self.last_snapshot: Optional[SessionSnapshot] = None
        kf = observer_pose_at(scenario.observer_path, 0)
        if kf is not None:
            self.observer_pos, self.observer_yaw = kf

    # ------------------------------------------------------------------
    # command plumbing

    def queue_command(self, cmd: Dict[str, Any]) -> None:
        """Enqueue an already-validated command for the next tick."""
        self._queue.append(cmd)

    def _apply_command(self, cmd: Dict[str, Any]) -> None:
        kind = cmd["kind"]
        if kind == "MenuToggle":
            self.menu_open = not self.menu_open
        elif kind == "SetMode":
            self.mode = VisualizationMode(cmd["mode"])
        elif kind == "SetLanguage":
            self.language = cmd["language"]
        elif kind == "Reset":
            self.agent.reset()
            self._events.append({"kind": "Reset"})
        elif kind == "PlayAudio":
            self._events.append({
                "kind": "AudioStarted",
                "asset": f"exhibit_history_{self.language.lower()}",
                "duration": AUDIO_STUB_DURATION,
            })
        elif kind == "MoveObserver":
            self.observer_pos = Vec3(cmd["x"], cmd["y"], cmd["z"])
            self.observer_yaw = cmd["yaw"]
            self._manual_observer = True
        elif kind == "Trigger":
            o = cmd["origin"]
            d = cmd["direction"]
            self.handle_trigger(Vec3(o[0], o[1], o[2]), Vec3(d[0], d[1], d[2]))

    def handle_trigger(self, origin: Vec3, direction: Vec3) -> Dict[str, Any]:
        """Pointer click: try to place a navigation goal at the pointed spot.

        The pointer ray is cast against discovered geometry only; you
        cannot send the robot to a place the system has not meshed yet.
        Returns the resulting event (also recorded for the snapshot).
        """
        hit = self.discovered.raycast(origin, direction, self.scenario.pointer_range)
        pointer: Dict[str, Any] = {
            "origin": [origin.x, origin.y, origin.z],
            "direction": [direction.x, direction.y, direction.z],
            "hit": None,
            "accepted": False,
        }
        if hit is None:
            event = {"kind": "GoalRejected", "reason": "no_hit", "hit": None}
        else:
            pointer["hit"] = [hit.point.x, hit.point.y, hit.point.z]
            try:
                self.agent.set_goal(self.grid, hit.point)
                goal = self.agent.state.goal
                event = {"kind": "GoalAccepted", "cell": [goal.ix, goal.iy]}
                pointer["accepted"] = True
            except GoalNotNavigable:
                event = {
                    "kind": "GoalRejected",
                    "reason": "not_navigable",
                    "hit": pointer["hit"],
                }
            except NoPath:
                event = {
                    "kind": "GoalRejected",
                    "reason": "no_path",
                    "hit": pointer["hit"],
                }
                self._events.append({"kind": "Blocked"})
        self._events.append(event)
        self._pointer = pointer
        return event

    # ------------------------------------------------------------------
    # the loop

    def run_tick(self) -> SessionSnapshot:
        tick = self.tick
        self._events = []
        self._pointer = None

        # 1) commands: scripted first, then anything clients queued
        for cmd in self._scripted.get(tick, []):
            self._apply_command(cmd)
        queued, self._queue = self._queue, []
        for cmd in queued:
            self._apply_command(cmd)

        # 2) observer follows the script unless a client took over
        if not self._manual_observer:
            kf = observer_pose_at(self.scenario.observer_path, tick)
            if kf is not None:
                self.observer_pos, self.observer_yaw = kf

        # 3) discovery and grid maintenance
        pose = ObserverPose(self.observer_pos, self.observer_yaw, self.scenario.fov)
        revealed = step_discovery(
            self.truth, self.discovered, pose, self.scenario.discovery, tick
        )
        if revealed:
            self.grid.update_cells(self.discovered, revealed)

        # 4) robot
        self.agent.tick(self.grid, self.dt)
        for flag in self.agent.state.events:
            self._events.append({"kind": {
                "recovered": "Recovered",
                "replanned": "Replanned",
                "blocked": "Blocked",
            }[flag]})

        # 5) lidar
        frame = scan(self.discovered, self.agent.state.pose, self.scenario.lidar, tick)

        snapshot = self._assemble(tick, frame)
        self.last_snapshot = snapshot
        self.tick += 1
        return snapshot

    # ------------------------------------------------------------------

    def _assemble(self, tick: int, frame: LidarFrame) -> SessionSnapshot:
        st = self.agent.state
        robot = {
            "x": st.pose.x,
            "z": st.pose.z,
            "heading": st.pose.heading,
            "ground_y": st.pose.ground_y,
            "mode": st.mode.value,
        }

        path_obj: Optional[Dict[str, Any]] = None
        if st.current_path is not None:
            wps = st.current_path.waypoints
            hidden = occlusion_mask(self.discovered, self.observer_pos, wps)
            path_obj = {
                "cells": [[c.ix, c.iy] for c in st.current_path.cells],
                "waypoints": [[w.x, w.y, w.z] for w in wps],
                "cost": st.current_path.cost,
                "progress": [st.path_progress[0], st.path_progress[1]],
                "hidden": hidden,
            }

        hit_hidden = occlusion_mask(self.discovered, self.observer_pos, frame.hit_points)
        lidar_obj = {
            "ranges": list(frame.ranges),
            "hit_points": [[p.x, p.y, p.z] for p in frame.hit_points],
            "hit_hidden": hit_hidden,
            "highlighted_beam": frame.highlighted_beam,
        }

        spec = self.grid.spec
        grid_obj = {
            "origin": [spec.origin.x, spec.origin.y, spec.origin.z],
            "cell_size": spec.cell_size,
            "width": spec.width,
            "height": spec.height,
            "rows": self.grid.rle_rows(),
        }

        return SessionSnapshot(
            tick=tick,
            robot=robot,
            path=path_obj,
            lidar=lidar_obj,
            grid=grid_obj,
            discovered_chunk_ids=sorted(self.discovered.chunks.keys()),
            mode=self.mode.value,
            dim_level=LIDAR_MODE_DIM if self.mode is VisualizationMode.LIDAR else 0.0,
            language=self.language,
            menu_open=self.menu_open,
            observer={
                "x": self.observer_pos.x,
                "y": self.observer_pos.y,
                "z": self.observer_pos.z,
                "yaw": self.observer_yaw,
            },
            pointer=self._pointer,
            events=list(self._events),
        )
