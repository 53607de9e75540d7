"""Simulated AR environment meshing.

Chunks move from the ground-truth world into the discovered world when the
observer gets close enough and looks roughly their way. Detection is
probabilistic per material, which is how the classic transparent-surface
failure shows up: with p_detect_transparent = 0 a glass chunk is simply
never meshed, so the robot plans and scans as if the glass were not there.

Randomness is counter-based: each (seed, chunk_id, tick) triple hashes to
one uniform draw. Reveals therefore do not depend on chunk iteration order
and replays are exact.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import List

from .geometry import Vec3, ang_diff
from .world import Material, MeshChunk, WorldModel, chunk_centroid

TAU = 2.0 * math.pi


@dataclass(frozen=True)
class ObserverPose:
    position: Vec3
    yaw: float
    fov: float  # horizontal, radians

    def __post_init__(self):
        if not (0.0 < self.fov <= TAU):
            raise ValueError(f"fov must be in (0, 2*pi], got {self.fov}")


@dataclass(frozen=True)
class DiscoveryParams:
    range: float
    p_detect_opaque: float = 1.0
    p_detect_transparent: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.range <= 0:
            raise ValueError("range must be positive")
        for p in (self.p_detect_opaque, self.p_detect_transparent):
            if not (0.0 <= p <= 1.0):
                raise ValueError("detection probabilities must be in [0, 1]")

    def p_detect(self, material: Material) -> float:
        if material is Material.TRANSPARENT:
            return self.p_detect_transparent
        return self.p_detect_opaque


def detection_draw(seed: int, chunk_id: str, tick: int) -> float:
    """Deterministic uniform draw in [0, 1) for one (seed, chunk, tick)."""
    h = hashlib.blake2b(f"{seed}:{chunk_id}:{tick}".encode("utf-8"), digest_size=8)
    return int.from_bytes(h.digest(), "big") / 2.0**64


def chunk_visible(centroid: Vec3, pose: ObserverPose, sense_range: float) -> bool:
    """Range plus horizontal FOV wedge test against a chunk centroid."""
    d = centroid - pose.position
    if d.norm() > sense_range:
        return False
    if pose.fov >= TAU - 1e-12:
        return True
    azimuth = math.atan2(d.z, d.x)
    return abs(ang_diff(azimuth, pose.yaw)) <= pose.fov / 2.0 + 1e-12


def step_discovery(
    truth: WorldModel,
    discovered: WorldModel,
    pose: ObserverPose,
    params: DiscoveryParams,
    tick: int,
) -> List[str]:
    """Reveal eligible chunks for this tick; returns new chunk ids.

    Already-discovered chunks are left alone, so the discovered set only
    ever grows. Iteration goes in sorted chunk_id order, but the outcome
    would be the same in any order thanks to the counter-based draws.
    """
    revealed: List[str] = []
    for chunk_id in sorted(truth.chunks.keys()):
        if chunk_id in discovered.chunks:
            continue
        chunk = truth.chunks[chunk_id]
        if not chunk_visible(chunk_centroid(chunk), pose, params.range):
            continue
        p = params.p_detect(chunk.material)
        if detection_draw(params.seed, chunk_id, tick) < p:
            discovered.ingest_chunk(
                MeshChunk(chunk.chunk_id, chunk.triangles, chunk.material, revealed_at_tick=tick)
            )
            revealed.append(chunk_id)
    return revealed
