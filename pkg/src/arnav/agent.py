"""Kinematic robot agent.

The robot is a point on the traversability grid with a heading. It follows
planned paths by arc length along the waypoint polyline, replans whenever
the map invalidates the current path, and applies the exhibit's robustness
rule: if newly discovered geometry lands on the robot's own cell, the robot
teleports to the nearest free cell instead of colliding or tipping over.

There is no physics here on purpose. Robust behavior beats strict realism
for a museum exhibit, so motion is rotate-then-drive with a heading gate
and the failure modes are all handled by state transitions.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional, Tuple

from .geometry import Vec3, ang_diff, normalize_angle
from .planner import (
    Cell,
    GoalNotNavigable,
    NoPath,
    PlannedPath,
    StartNotNavigable,
    plan,
    validate,
)
from .traversability import CellState, TraversabilityGrid

HEADING_GATE = math.radians(30.0)  # drive only when roughly facing the waypoint


@dataclass(frozen=True)
class Pose2D:
    x: float
    z: float
    heading: float  # radians in (-pi, pi], 0 along +x
    ground_y: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "heading", normalize_angle(self.heading))


class Mode(Enum):
    IDLE = "Idle"
    NAVIGATING = "Navigating"
    BLOCKED = "Blocked"
    RECOVERED = "Recovered"


@dataclass(frozen=True)
class AgentParams:
    speed: float = 0.6          # m/s
    turn_rate: float = math.pi  # rad/s
    goal_tolerance: float = 0.15  # m

    def __post_init__(self):
        if self.speed <= 0 or self.turn_rate <= 0 or self.goal_tolerance <= 0:
            raise ValueError("agent parameters must be positive")


@dataclass
class RobotState:
    pose: Pose2D
    mode: Mode = Mode.IDLE
    current_path: Optional[PlannedPath] = None
    goal: Optional[Cell] = None
    # index of the polyline segment being followed plus fraction along it
    path_progress: Tuple[int, float] = (0, 0.0)
    # the line actually followed: current position spliced onto the path
    follow_line: List[Vec3] = field(default_factory=list)
    # event flags for the session layer, reset every tick
    events: List[str] = field(default_factory=list)


def bfs_nearest_free(grid: TraversabilityGrid, start: Cell) -> Optional[Cell]:
    """Nearest Free cell by 4-connected BFS, deterministic neighbor order.

    Neighbor order is N, E, S, W with N meaning +z. Returns None when the
    grid contains no Free cell reachable in bounds (BFS crosses Blocked and
    Unknown cells; it searches positions, not paths).
    """
    w, h = grid.spec.width, grid.spec.height
    if not (0 <= start.ix < w and 0 <= start.iy < h):
        return None
    seen = {(start.ix, start.iy)}
    queue = deque([(start.ix, start.iy)])
    while queue:
        ix, iy = queue.popleft()
        if grid.state_at(ix, iy) is CellState.FREE:
            return Cell(ix, iy)
        for dx, dy in ((0, 1), (1, 0), (0, -1), (-1, 0)):  # N, E, S, W
            nx, ny = ix + dx, iy + dy
            if 0 <= nx < w and 0 <= ny < h and (nx, ny) not in seen:
                seen.add((nx, ny))
                queue.append((nx, ny))
    return None


class Agent:
    """Owns a RobotState and advances it one fixed timestep at a time."""

    def __init__(self, home_pose: Pose2D, params: Optional[AgentParams] = None):
        self.home_pose = home_pose
        self.params = params or AgentParams()
        self.state = RobotState(pose=home_pose)

    # ------------------------------------------------------------------

    def current_cell(self, grid: TraversabilityGrid) -> Cell:
        ix, iy = grid.cell_of(self.state.pose.x, self.state.pose.z)
        return Cell(ix, iy)

    def set_goal(self, grid: TraversabilityGrid, goal_point: Vec3) -> None:
        """Plan toward a world-space goal point.

        Raises GoalNotNavigable (state untouched) when the point is not on
        a Free cell, or NoPath (mode Blocked, goal dropped) when no route
        exists. On success the robot is Navigating on a fresh path.
        """
        if not grid.is_navigable(goal_point):
            raise GoalNotNavigable(f"goal point {goal_point} is not on a Free cell")
        goal = Cell(*grid.cell_of(goal_point.x, goal_point.z))
        start = self.current_cell(grid)
        try:
            path = plan(grid, start, goal)
        except GoalNotNavigable:
            raise
        except (NoPath, StartNotNavigable) as e:
            # a robot marooned on a non-Free cell cannot plan either; both
            # cases surface as "no route" to the caller
            self.state.mode = Mode.BLOCKED
            self.state.goal = None
            self.state.current_path = None
            self.state.follow_line = []
            raise NoPath(str(e)) from e
        self._adopt_path(path, goal)

    def reset(self) -> None:
        self.state = RobotState(pose=self.home_pose)

    def tick(self, grid: TraversabilityGrid, dt: float) -> None:
        """Advance one timestep: recover, replan, move, arrive."""
        if dt <= 0:
            raise ValueError("dt must be positive")
        st = self.state
        st.events = []

        # Recovered lasts exactly one tick; fall back to Idle here and let
        # the motion phase upgrade to Navigating when a path is active
        if st.mode is Mode.RECOVERED:
            st.mode = Mode.IDLE

        # 1) recovery: newly discovered geometry on our own cell
        recovered = False
        cell = self.current_cell(grid)
        if grid.state_at(cell.ix, cell.iy) is CellState.BLOCKED:
            target = bfs_nearest_free(grid, cell)
            if target is None:
                # nowhere free to go; hold position and report
                st.mode = Mode.BLOCKED
                st.current_path = None
                st.follow_line = []
                st.events.append("blocked")
                return
            cx, cz = grid.cell_center(target.ix, target.iy)
            gy = grid.ground_height_at(target.ix, target.iy)
            st.pose = Pose2D(cx, cz, st.pose.heading, gy if gy is not None else st.pose.ground_y)
            st.events.append("recovered")
            recovered = True

        # 2) keep the path honest against the current grid
        if st.goal is not None:
            needs_replan = recovered or st.current_path is None
            if not needs_replan and st.current_path is not None:
                needs_replan = validate(st.current_path, grid) is not None
            if needs_replan:
                try:
                    path = plan(grid, self.current_cell(grid), st.goal)
                except (NoPath, StartNotNavigable, GoalNotNavigable):
                    st.mode = Mode.BLOCKED
                    st.goal = None
                    st.current_path = None
                    st.follow_line = []
                    st.events.append("blocked")
                    return
                self._adopt_path(path, st.goal)
                st.events.append("replanned")

        if recovered:
            # hold for this tick so observers see the teleport; motion
            # resumes next tick
            st.mode = Mode.RECOVERED
            return

        # 3) motion along the follow line
        if st.current_path is None or not st.follow_line:
            return
        st.mode = Mode.NAVIGATING
        self._advance(grid, dt)

        # 4) arrival
        final = st.current_path.waypoints[-1]
        if math.hypot(st.pose.x - final.x, st.pose.z - final.z) <= self.params.goal_tolerance:
            st.mode = Mode.IDLE
            st.current_path = None
            st.goal = None
            st.follow_line = []
            st.path_progress = (0, 0.0)

    # ------------------------------------------------------------------

    def _adopt_path(self, path: PlannedPath, goal: Cell) -> None:
        st = self.state
        st.current_path = path
        st.goal = goal
        st.mode = Mode.NAVIGATING
        pos = Vec3(st.pose.x, st.pose.ground_y, st.pose.z)
        if len(path.waypoints) > 1:
            # join the path at its second waypoint; waypoint 0 is just the
            # center of the cell we are already standing in
            st.follow_line = [pos] + list(path.waypoints[1:])
        else:
            st.follow_line = [pos, path.waypoints[0]]
        st.path_progress = (0, 0.0)

    def _advance(self, grid: TraversabilityGrid, dt: float) -> None:
        st = self.state
        seg, frac = st.path_progress
        line = st.follow_line
        budget = self.params.speed * dt
        turn_budget = self.params.turn_rate * dt

        while seg < len(line) - 1:
            a = line[seg]
            b = line[seg + 1]
            seg_len = math.hypot(b.x - a.x, b.z - a.z)
            if seg_len <= 1e-12:
                seg += 1
                frac = 0.0
                continue
            # face the current target waypoint; rotation shares one per-tick
            # budget across segment changes
            bearing = math.atan2(b.z - st.pose.z, b.x - st.pose.x)
            err = ang_diff(bearing, st.pose.heading)
            turn = max(-turn_budget, min(turn_budget, err))
            turn_budget -= abs(turn)
            heading = normalize_angle(st.pose.heading + turn)
            st.pose = replace(st.pose, heading=heading)
            if abs(ang_diff(bearing, heading)) >= HEADING_GATE:
                break  # keep turning, drive next tick
            remaining = (1.0 - frac) * seg_len
            step = min(budget, remaining)
            frac += step / seg_len
            budget -= step
            x = a.x + (b.x - a.x) * frac
            z = a.z + (b.z - a.z) * frac
            gy = self._ground_at(grid, x, z)
            st.pose = Pose2D(x, z, heading, gy)
            if frac >= 1.0 - 1e-12:
                seg += 1
                frac = 0.0
            if budget <= 1e-12:
                break
        st.path_progress = (seg, frac)

    def _ground_at(self, grid: TraversabilityGrid, x: float, z: float) -> float:
        ix, iy = grid.cell_of(x, z)
        gy = grid.ground_height_at(ix, iy)
        return gy if gy is not None else self.state.pose.ground_y
