"""Traversability mapping: which ground cells can the robot stand on.

Every cell of a fixed 2D grid over the xz plane is classified against the
discovered geometry:

  Unknown  no ground surface found under the cell center yet
  Blocked  ground found, but something intersects the robot's clearance
           volume above it
  Free     ground found and the clearance volume is empty

Ground means a discovered triangle whose normal is within slope_max of
vertical and whose xz projection contains the cell center; the walking
height is the highest such surface. The clearance volume is a vertical
cylinder of the robot's footprint radius, spanning from just above the
ground (a small skip keeps the floor from blocking its own cell) up to the
robot's clearance height.

The grid supports exact incremental updates: update_cells recomputes only
cells a changed chunk could affect and is guaranteed to land on the same
result as a full rebuild.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .geometry import (
    AABB,
    Triangle,
    Vec3,
    clip_polygon_y_slab,
    dist2d_point_polygon,
    plane_height_at,
    point_in_triangle_xz,
    tri_normal,
)
from .world import WorldModel, chunk_aabb

GROUND_SKIP = 0.05  # m above the ground surface where the obstacle volume starts
# tall query box half-height; scenes are rooms, not skyscrapers
BIG_Y = 1e6


class TraversabilityError(Exception):
    pass


class StaleSpec(TraversabilityError):
    """Grid asked to update against a different spec than it was built with."""


class CellState(IntEnum):
    UNKNOWN = 0
    FREE = 1
    BLOCKED = 2


@dataclass(frozen=True)
class GridSpec:
    origin: Vec3  # corner of cell (0, 0)
    cell_size: float
    width: int   # cells along x
    height: int  # cells along z

    def __post_init__(self):
        if self.cell_size <= 0:
            raise ValueError("cell_size must be positive")
        if self.width < 1 or self.height < 1:
            raise ValueError("grid needs at least one cell")


@dataclass(frozen=True)
class RobotFootprint:
    radius: float = 0.35
    clearance_height: float = 1.2

    def __post_init__(self):
        if self.radius <= 0 or self.clearance_height <= 0:
            raise ValueError("footprint dimensions must be positive")


class TraversabilityGrid:
    """Cell classification plus per-cell ground heights.

    cells is a height x width uint8 array of CellState values (row = iy,
    column = ix); ground is a float array with NaN where no ground exists.
    """

    def __init__(self, spec: GridSpec, footprint: RobotFootprint, slope_max: float):
        self.spec = spec
        self.footprint = footprint
        self.slope_max = slope_max
        self.cells = np.zeros((spec.height, spec.width), dtype=np.uint8)
        self.ground = np.full((spec.height, spec.width), np.nan, dtype=np.float64)
        # xz extent of each chunk as last incorporated, for incremental updates
        self._chunk_extent: Dict[str, Tuple[float, float, float, float]] = {}

    # ------------------------------------------------------------------
    # coordinate helpers

    def cell_of(self, x: float, z: float) -> Tuple[int, int]:
        s = self.spec
        return (
            math.floor((x - s.origin.x) / s.cell_size),
            math.floor((z - s.origin.z) / s.cell_size),
        )

    def in_bounds(self, ix: int, iy: int) -> bool:
        return 0 <= ix < self.spec.width and 0 <= iy < self.spec.height

    def cell_center(self, ix: int, iy: int) -> Tuple[float, float]:
        s = self.spec
        return (
            s.origin.x + (ix + 0.5) * s.cell_size,
            s.origin.z + (iy + 0.5) * s.cell_size,
        )

    def state_at(self, ix: int, iy: int) -> CellState:
        if not self.in_bounds(ix, iy):
            return CellState.UNKNOWN
        return CellState(int(self.cells[iy, ix]))

    def ground_height_at(self, ix: int, iy: int) -> Optional[float]:
        if not self.in_bounds(ix, iy):
            return None
        g = float(self.ground[iy, ix])
        return None if math.isnan(g) else g

    def is_navigable(self, point: Vec3) -> bool:
        ix, iy = self.cell_of(point.x, point.z)
        return self.in_bounds(ix, iy) and self.state_at(ix, iy) is CellState.FREE

    # ------------------------------------------------------------------
    # classification

    def _classify_cell(self, world: WorldModel, ix: int, iy: int) -> Tuple[CellState, float]:
        cx, cz = self.cell_center(ix, iy)
        r = self.footprint.radius
        box = AABB(Vec3(cx - r, -BIG_Y, cz - r), Vec3(cx + r, BIG_Y, cz + r))
        candidates = world.triangles_in_box(box)
        if not candidates:
            return CellState.UNKNOWN, math.nan

        cos_max = math.cos(self.slope_max)
        ground: Optional[float] = None
        tris: List[Triangle] = []
        for chunk_id, idx in candidates:
            tri = world.triangle(chunk_id, idx)
            tris.append(tri)
            n = tri_normal(tri)
            ln = n.norm()
            if ln <= 0.0:
                continue
            if abs(n.y) / ln + 1e-12 < cos_max:
                continue  # too steep to stand on
            if not point_in_triangle_xz(cx, cz, tri):
                continue
            h = plane_height_at(tri, cx, cz)
            if h is not None and (ground is None or h > ground):
                ground = h
        if ground is None:
            return CellState.UNKNOWN, math.nan

        lo = ground + GROUND_SKIP
        hi = ground + self.footprint.clearance_height
        for tri in tris:
            if _triangle_hits_cylinder(tri, cx, cz, r, lo, hi):
                return CellState.BLOCKED, ground
        return CellState.FREE, ground

    def rebuild_from(self, world: WorldModel) -> None:
        """Recompute every cell from scratch against the given world."""
        for iy in range(self.spec.height):
            for ix in range(self.spec.width):
                state, g = self._classify_cell(world, ix, iy)
                self.cells[iy, ix] = int(state)
                self.ground[iy, ix] = g
        self._chunk_extent = {
            cid: _xz_extent(chunk_aabb(c)) for cid, c in world.chunks.items()
        }

    def update_cells(
        self, world: WorldModel, changed_chunk_ids: Sequence[str]
    ) -> List[Tuple[int, int]]:
        """Recompute only cells the changed chunks can influence.

        Returns the coordinates of cells whose state or ground height
        actually changed. The result is always identical to a full rebuild;
        that equivalence is the module's core correctness property.
        """
        changed: List[Tuple[int, int]] = []
        dirty = set()
        for cid in changed_chunk_ids:
            old = self._chunk_extent.get(cid)
            if old is not None:
                dirty.update(self._cells_touching(old))
            chunk = world.chunks.get(cid)
            if chunk is not None:
                ext = _xz_extent(chunk_aabb(chunk))
                self._chunk_extent[cid] = ext
                dirty.update(self._cells_touching(ext))
            else:
                self._chunk_extent.pop(cid, None)
        for ix, iy in sorted(dirty):
            state, g = self._classify_cell(world, ix, iy)
            old_state = int(self.cells[iy, ix])
            old_g = float(self.ground[iy, ix])
            g_changed = (math.isnan(old_g) != math.isnan(g)) or (
                not math.isnan(old_g) and not math.isnan(g) and old_g != g
            )
            if old_state != int(state) or g_changed:
                changed.append((ix, iy))
            self.cells[iy, ix] = int(state)
            self.ground[iy, ix] = g
        return changed

    def check_spec(self, spec: GridSpec, footprint: RobotFootprint, slope_max: float) -> None:
        """Raise StaleSpec when this grid was built under different settings."""
        if spec != self.spec or footprint != self.footprint or slope_max != self.slope_max:
            raise StaleSpec("grid was built against a different spec")

    def _cells_touching(self, extent: Tuple[float, float, float, float]):
        """Cells whose center could see geometry within the xz extent."""
        x0, z0, x1, z1 = extent
        pad = self.footprint.radius + 1e-9
        i0, j0 = self.cell_of(x0 - pad, z0 - pad)
        i1, j1 = self.cell_of(x1 + pad, z1 + pad)
        for iy in range(max(0, j0), min(self.spec.height, j1 + 1)):
            for ix in range(max(0, i0), min(self.spec.width, i1 + 1)):
                yield (ix, iy)

    def copy(self) -> "TraversabilityGrid":
        g = TraversabilityGrid(self.spec, self.footprint, self.slope_max)
        g.cells = self.cells.copy()
        g.ground = self.ground.copy()
        g._chunk_extent = dict(self._chunk_extent)
        return g

    def equals(self, other: "TraversabilityGrid") -> bool:
        return (
            self.spec == other.spec
            and bool(np.array_equal(self.cells, other.cells))
            and bool(np.array_equal(self.ground, other.ground, equal_nan=True))
        )

    def rle_rows(self) -> List[List[List[int]]]:
        """Run-length encode each row as [state, count] pairs (wire format)."""
        rows: List[List[List[int]]] = []
        for iy in range(self.spec.height):
            row: List[List[int]] = []
            run_state = int(self.cells[iy, 0])
            run_len = 1
            for ix in range(1, self.spec.width):
                s = int(self.cells[iy, ix])
                if s == run_state:
                    run_len += 1
                else:
                    row.append([run_state, run_len])
                    run_state = s
                    run_len = 1
            row.append([run_state, run_len])
            rows.append(row)
        return rows


def rebuild(
    discovered: WorldModel,
    spec: GridSpec,
    footprint: RobotFootprint,
    slope_max: float = math.radians(30.0),
) -> TraversabilityGrid:
    """Build a fresh grid from the discovered world."""
    grid = TraversabilityGrid(spec, footprint, slope_max)
    grid.rebuild_from(discovered)
    return grid


def update_cells(
    grid: TraversabilityGrid,
    discovered: WorldModel,
    changed_chunk_ids: Sequence[str],
    spec: Optional[GridSpec] = None,
) -> List[Tuple[int, int]]:
    """Incrementally refresh a grid after chunk changes.

    Raises StaleSpec when the caller's spec disagrees with the grid's.
    """
    if spec is not None and spec != grid.spec:
        raise StaleSpec("grid was built against a different spec")
    return grid.update_cells(discovered, changed_chunk_ids)


def _xz_extent(box: AABB) -> Tuple[float, float, float, float]:
    return (box.lo.x, box.lo.z, box.hi.x, box.hi.z)


def _triangle_hits_cylinder(
    tri: Triangle, cx: float, cz: float, radius: float, y_lo: float, y_hi: float
) -> bool:
    """Exact test: does the triangle intersect the vertical cylinder?

    The triangle is clipped to the cylinder's y slab; the clipped polygon
    (if any) is then compared against the footprint disk in 2D.
    """
    poly = clip_polygon_y_slab((tri.a, tri.b, tri.c), y_lo, y_hi)
    if not poly:
        return False
    return dist2d_point_polygon(cx, cz, poly) <= radius + 1e-12
