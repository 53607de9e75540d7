"""Triangle world model with a uniform-grid spatial index.

Two instances of WorldModel typically exist side by side: the ground-truth
scene and the discovered subset the sensors have revealed. All queries here
are exact; the spatial index is an accelerator whose results always match a
brute-force scan over every triangle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, NamedTuple, Optional, Set, Tuple

from .geometry import (
    AABB,
    DEGENERATE_AREA,
    Triangle,
    Vec3,
    aabb_of_triangle,
    aabb_union,
    ray_triangle,
    tri_area,
    tri_centroid,
    triangle_aabb_overlap,
)


class WorldError(Exception):
    pass


class EmptyChunk(WorldError):
    """Raised when a chunk has no usable (non-degenerate) triangles."""


class InvalidDirection(WorldError):
    """Raised when a raycast direction is not unit length."""


class Material(Enum):
    OPAQUE = "opaque"
    TRANSPARENT = "transparent"


@dataclass(frozen=True)
class MeshChunk:
    chunk_id: str
    triangles: Tuple[Triangle, ...]
    material: Material = Material.OPAQUE
    revealed_at_tick: int = 0


class IngestSummary(NamedTuple):
    added_triangles: int
    replaced: bool


class RayHit(NamedTuple):
    point: Vec3
    distance: float
    chunk_id: str
    triangle_index: int


def filter_degenerate(triangles: Iterable[Triangle]) -> Tuple[Triangle, ...]:
    return tuple(t for t in triangles if tri_area(t) > DEGENERATE_AREA)


def chunk_centroid(chunk: MeshChunk) -> Vec3:
    """Area-weighted centroid of the chunk's triangles."""
    ax = ay = az = 0.0
    total = 0.0
    for t in chunk.triangles:
        w = tri_area(t)
        c = tri_centroid(t)
        ax += w * c.x
        ay += w * c.y
        az += w * c.z
        total += w
    if total <= 0.0:
        raise EmptyChunk(f"chunk {chunk.chunk_id!r} has no area")
    return Vec3(ax / total, ay / total, az / total)


def chunk_aabb(chunk: MeshChunk) -> AABB:
    box = aabb_of_triangle(chunk.triangles[0])
    for t in chunk.triangles[1:]:
        box = aabb_union(box, aabb_of_triangle(t))
    return box


class WorldModel:
    """Chunked triangle soup plus a uniform hash-grid index.

    Mutations happen through ingest_chunk only and are atomic per chunk:
    re-ingesting an existing chunk_id replaces its geometry in both the
    chunk map and the index before any query can observe a half state
    (single-writer model, see module docstring in session.py).
    """

    def __init__(self, index_cell_size: float = 0.5):
        if index_cell_size <= 0:
            raise ValueError("index_cell_size must be positive")
        self.chunks: Dict[str, MeshChunk] = {}
        self._cell = index_cell_size
        # (i, j, k) -> list of (chunk_id, triangle_index)
        self._grid: Dict[Tuple[int, int, int], List[Tuple[str, int]]] = {}
        self._chunk_cells: Dict[str, List[Tuple[int, int, int]]] = {}
        self._bounds: Optional[AABB] = None

    # ------------------------------------------------------------------
    # mutation

    def ingest_chunk(self, chunk: MeshChunk) -> IngestSummary:
        tris = filter_degenerate(chunk.triangles)
        if not tris:
            raise EmptyChunk(f"chunk {chunk.chunk_id!r}: all triangles degenerate")
        clean = MeshChunk(chunk.chunk_id, tris, chunk.material, chunk.revealed_at_tick)
        replaced = clean.chunk_id in self.chunks
        if replaced:
            self._unindex_chunk(clean.chunk_id)
        self.chunks[clean.chunk_id] = clean
        self._index_chunk(clean)
        self._recompute_bounds()
        return IngestSummary(added_triangles=len(tris), replaced=replaced)

    def _cell_of(self, x: float, y: float, z: float) -> Tuple[int, int, int]:
        c = self._cell
        return (math.floor(x / c), math.floor(y / c), math.floor(z / c))

    def _index_chunk(self, chunk: MeshChunk) -> None:
        cells: List[Tuple[int, int, int]] = []
        for idx, tri in enumerate(chunk.triangles):
            box = aabb_of_triangle(tri)
            i0, j0, k0 = self._cell_of(box.lo.x, box.lo.y, box.lo.z)
            i1, j1, k1 = self._cell_of(box.hi.x, box.hi.y, box.hi.z)
            for i in range(i0, i1 + 1):
                for j in range(j0, j1 + 1):
                    for k in range(k0, k1 + 1):
                        key = (i, j, k)
                        self._grid.setdefault(key, []).append((chunk.chunk_id, idx))
                        cells.append(key)
        self._chunk_cells[chunk.chunk_id] = cells

    def _unindex_chunk(self, chunk_id: str) -> None:
        for key in self._chunk_cells.pop(chunk_id, []):
            bucket = self._grid.get(key)
            if bucket is None:
                continue
            bucket[:] = [e for e in bucket if e[0] != chunk_id]
            if not bucket:
                del self._grid[key]
        del self.chunks[chunk_id]

    def _recompute_bounds(self) -> None:
        box: Optional[AABB] = None
        for chunk in self.chunks.values():
            cb = chunk_aabb(chunk)
            box = cb if box is None else aabb_union(box, cb)
        self._bounds = box

    # ------------------------------------------------------------------
    # queries

    @property
    def bounds(self) -> Optional[AABB]:
        return self._bounds

    def triangle(self, chunk_id: str, index: int) -> Triangle:
        return self.chunks[chunk_id].triangles[index]

    def raycast(self, origin: Vec3, direction: Vec3, max_range: float) -> Optional[RayHit]:
        """Nearest triangle hit within max_range, or None.

        Equal-distance hits are broken by (distance, chunk_id,
        triangle_index) ascending, which makes shared-edge hits land on a
        single well-defined triangle.
        """
        norm = direction.norm()
        if abs(norm - 1.0) > 1e-6:
            raise InvalidDirection(f"|direction| = {norm}")
        if max_range <= 0:
            raise ValueError("max_range must be positive")
        if self._bounds is None:
            return None

        best: Optional[Tuple[float, str, int]] = None
        seen: Set[Tuple[str, int]] = set()

        for key, t_enter in self._walk_cells(origin, direction, max_range):
            if best is not None and t_enter > best[0] + 1e-12:
                break  # every remaining cell starts beyond the best hit
            for entry in self._grid.get(key, ()):
                if entry in seen:
                    continue
                seen.add(entry)
                tri = self.chunks[entry[0]].triangles[entry[1]]
                t = ray_triangle(origin, direction, tri)
                if t is None or t > max_range:
                    continue
                cand = (t, entry[0], entry[1])
                if best is None or cand < best:
                    best = cand
        if best is None:
            return None
        t, cid, idx = best
        return RayHit(origin + direction.scale(t), t, cid, idx)

    def _walk_cells(self, origin: Vec3, direction: Vec3, max_range: float):
        """3D DDA over index cells hit by the ray, yielding (cell, t_enter).

        The walk is clamped to the world bounds so unbounded rays terminate.
        """
        bounds = self._bounds.inflated(self._cell * 1e-9 + 1e-9)
        t0, t1 = _ray_aabb_span(origin, direction, bounds)
        if t0 is None:
            return
        t_start = max(t0, 0.0)
        t_end = min(t1, max_range)
        if t_start > t_end:
            return

        c = self._cell
        px = origin.x + direction.x * t_start
        py = origin.y + direction.y * t_start
        pz = origin.z + direction.z * t_start
        i, j, k = self._cell_of(px, py, pz)

        step_i = 1 if direction.x > 0 else (-1 if direction.x < 0 else 0)
        step_j = 1 if direction.y > 0 else (-1 if direction.y < 0 else 0)
        step_k = 1 if direction.z > 0 else (-1 if direction.z < 0 else 0)

        def boundary_t(idx: int, step: int, o: float, d: float) -> float:
            if step == 0:
                return math.inf
            edge = (idx + (1 if step > 0 else 0)) * c
            return (edge - o) / d

        t_max_i = boundary_t(i, step_i, origin.x, direction.x)
        t_max_j = boundary_t(j, step_j, origin.y, direction.y)
        t_max_k = boundary_t(k, step_k, origin.z, direction.z)
        d_i = abs(c / direction.x) if direction.x != 0 else math.inf
        d_j = abs(c / direction.y) if direction.y != 0 else math.inf
        d_k = abs(c / direction.z) if direction.z != 0 else math.inf

        t_enter = t_start
        # cap iterations defensively; the bounds clamp should end the walk first
        max_steps = 4 * (int(t_end / c) + 8)
        for _ in range(max_steps):
            yield (i, j, k), t_enter
            t_next = min(t_max_i, t_max_j, t_max_k)
            if t_next > t_end:
                return
            t_enter = t_next
            if t_max_i <= t_max_j and t_max_i <= t_max_k:
                i += step_i
                t_max_i += d_i
            elif t_max_j <= t_max_k:
                j += step_j
                t_max_j += d_j
            else:
                k += step_k
                t_max_k += d_k

    def triangles_in_box(self, box: AABB) -> List[Tuple[str, int]]:
        """Exactly the triangles that geometrically overlap the query box.

        Touching counts. Result is sorted by (chunk_id, triangle_index).
        """
        if box.lo.x > box.hi.x or box.lo.y > box.hi.y or box.lo.z > box.hi.z:
            raise ValueError("aabb min must be <= max componentwise")
        if self._bounds is None:
            return []
        # clamp the candidate cell range to the populated region
        b = self._bounds
        qlo = Vec3(max(box.lo.x, b.lo.x), max(box.lo.y, b.lo.y), max(box.lo.z, b.lo.z))
        qhi = Vec3(min(box.hi.x, b.hi.x), min(box.hi.y, b.hi.y), min(box.hi.z, b.hi.z))
        if qlo.x > qhi.x or qlo.y > qhi.y or qlo.z > qhi.z:
            return []
        i0, j0, k0 = self._cell_of(qlo.x, qlo.y, qlo.z)
        i1, j1, k1 = self._cell_of(qhi.x, qhi.y, qhi.z)
        out: List[Tuple[str, int]] = []
        seen: Set[Tuple[str, int]] = set()
        for i in range(i0, i1 + 1):
            for j in range(j0, j1 + 1):
                for k in range(k0, k1 + 1):
                    for entry in self._grid.get((i, j, k), ()):
                        if entry in seen:
                            continue
                        seen.add(entry)
                        tri = self.chunks[entry[0]].triangles[entry[1]]
                        if triangle_aabb_overlap(tri, box):
                            out.append(entry)
        out.sort()
        return out

    def segment_blocked(self, a: Vec3, b: Vec3, skin: float = 1e-6) -> bool:
        """True if any triangle crosses the open segment between a and b.

        Endpoints are excluded with a small skin so a segment ending exactly
        on a surface does not count as blocked by that surface. Zero-length
        segments are never blocked.
        """
        d = b - a
        length = d.norm()
        if length <= skin:
            return False
        direction = d.scale(1.0 / length)
        hit = self.raycast(a, direction, length - skin)
        return hit is not None and hit.distance > skin

    def index_cells(self) -> Dict[Tuple[int, int, int], List[Tuple[str, int]]]:
        """Sorted copy of the index contents, for tests and debugging."""
        return {k: sorted(v) for k, v in sorted(self._grid.items())}


def _ray_aabb_span(origin: Vec3, direction: Vec3, box: AABB):
    """Intersection parameter span [t0, t1] of a ray with a box, or (None, None)."""
    t0 = -math.inf
    t1 = math.inf
    for o, d, lo, hi in (
        (origin.x, direction.x, box.lo.x, box.hi.x),
        (origin.y, direction.y, box.lo.y, box.hi.y),
        (origin.z, direction.z, box.lo.z, box.hi.z),
    ):
        if d == 0.0:
            if o < lo or o > hi:
                return None, None
            continue
        ta = (lo - o) / d
        tb = (hi - o) / d
        if ta > tb:
            ta, tb = tb, ta
        t0 = max(t0, ta)
        t1 = min(t1, tb)
        if t0 > t1:
            return None, None
    return t0, t1
