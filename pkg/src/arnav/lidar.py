"""Simulated rotating 2D LiDAR.

Beams are horizontal rays cast from a fixed height above the robot base,
evenly spread over a full turn starting at the robot's heading. The scan
runs against the discovered world only: geometry that was never meshed
(typically glass) simply is not there, and beams pass straight through
where the real surface would be.

For visualization one beam index is highlighted; it completes a full
revolution every rotation_period ticks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional

from .agent import Pose2D
from .geometry import Vec3, normalize_angle
from .world import WorldModel

TAU = 2.0 * math.pi


@dataclass(frozen=True)
class LidarParams:
    beam_count: int = 360
    max_range: float = 8.0
    scan_height: float = 0.3
    rotation_period: int = 120

    def __post_init__(self):
        if self.beam_count < 1:
            raise ValueError("beam_count must be >= 1")
        if self.max_range <= 0:
            raise ValueError("max_range must be positive")
        if self.rotation_period < 1:
            raise ValueError("rotation_period must be >= 1")


class LidarFrame(NamedTuple):
    ranges: List[Optional[float]]  # one entry per beam, None = no return
    hit_points: List[Vec3]         # endpoints of hitting beams, in beam order
    highlighted_beam: int


def highlighted_beam_index(tick: int, params: LidarParams) -> int:
    """Index of the rotating display beam at this tick (integer arithmetic)."""
    return ((tick % params.rotation_period) * params.beam_count) // params.rotation_period


def emitter_position(pose: Pose2D, params: LidarParams) -> Vec3:
    return Vec3(pose.x, pose.ground_y + params.scan_height, pose.z)


def scan(discovered: WorldModel, pose: Pose2D, params: LidarParams, tick: int) -> LidarFrame:
    origin = emitter_position(pose, params)
    ranges: List[Optional[float]] = []
    hit_points: List[Vec3] = []
    for i in range(params.beam_count):
        azimuth = normalize_angle(pose.heading + TAU * i / params.beam_count)
        direction = Vec3(math.cos(azimuth), 0.0, math.sin(azimuth))
        hit = discovered.raycast(origin, direction, params.max_range)
        if hit is None:
            ranges.append(None)
        else:
            ranges.append(hit.distance)
            hit_points.append(hit.point)
    return LidarFrame(ranges, hit_points, highlighted_beam_index(tick, params))
