"""Independent reference implementations used only by tests.

Everything here is deliberately written with different math than the
package: plane-plus-barycentric ray intersection instead of
Moller-Trumbore, polygon clipping instead of separating axes, Dijkstra
instead of A*, shapely for 2D distances, and a continued-fraction
incomplete beta for the t CDF. When implementation and oracle agree on
random inputs, a shared bug in copied arithmetic is unlikely.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

from arnav.geometry import Triangle, Vec3, cross, dot
from arnav.planner import Cell
from arnav.traversability import CellState, TraversabilityGrid
from arnav.world import WorldModel

SQRT2 = math.sqrt(2.0)


# ----------------------------------------------------------------------
# ray / triangle via plane intersection + barycentric coordinates


def ray_triangle_oracle(origin: Vec3, direction: Vec3, tri: Triangle) -> Optional[float]:
    e1 = tri.b - tri.a
    e2 = tri.c - tri.a
    n = cross(e1, e2)
    denom = dot(n, direction)
    if abs(denom) < 1e-14:
        return None
    t = dot(n, tri.a - origin) / denom
    if t < 0.0:
        return None
    p = origin + direction.scale(t)
    v2 = p - tri.a
    d00 = dot(e1, e1)
    d01 = dot(e1, e2)
    d11 = dot(e2, e2)
    d20 = dot(v2, e1)
    d21 = dot(v2, e2)
    den = d00 * d11 - d01 * d01
    if abs(den) < 1e-300:
        return None
    v = (d11 * d20 - d01 * d21) / den
    w = (d00 * d21 - d01 * d20) / den
    u = 1.0 - v - w
    eps = 1e-12
    if v < -eps or w < -eps or u < -eps:
        return None
    return t


def brute_raycast(world: WorldModel, origin: Vec3, direction: Vec3,
                  max_range: float) -> Optional[Tuple[float, str, int]]:
    best = None
    for cid in world.chunks:
        for idx, tri in enumerate(world.chunks[cid].triangles):
            t = ray_triangle_oracle(origin, direction, tri)
            if t is None or t > max_range:
                continue
            cand = (t, cid, idx)
            if best is None or cand < best:
                best = cand
    return best


# ----------------------------------------------------------------------
# triangle vs box via successive half-space clipping


def _clip_halfspace(poly: List[Vec3], axis: int, limit: float, keep_below: bool) -> List[Vec3]:
    out: List[Vec3] = []
    n = len(poly)
    for i in range(n):
        cur, nxt = poly[i], poly[(i + 1) % n]
        cv, nv = cur[axis], nxt[axis]
        cin = cv <= limit + 1e-12 if keep_below else cv >= limit - 1e-12
        nin = nv <= limit + 1e-12 if keep_below else nv >= limit - 1e-12
        if cin:
            out.append(cur)
        if cin != nin and abs(nv - cv) > 1e-300:
            f = (limit - cv) / (nv - cv)
            out.append(cur + (nxt - cur).scale(f))
    return out


def triangle_box_overlap_oracle(tri: Triangle, lo: Vec3, hi: Vec3) -> bool:
    poly = [tri.a, tri.b, tri.c]
    for axis in range(3):
        poly = _clip_halfspace(poly, axis, hi[axis], keep_below=True)
        if not poly:
            return False
        poly = _clip_halfspace(poly, axis, lo[axis], keep_below=False)
        if not poly:
            return False
    return True


def brute_triangles_in_box(world: WorldModel, lo: Vec3, hi: Vec3) -> List[Tuple[str, int]]:
    out = []
    for cid in world.chunks:
        for idx, tri in enumerate(world.chunks[cid].triangles):
            if triangle_box_overlap_oracle(tri, lo, hi):
                out.append((cid, idx))
    return sorted(out)


# ----------------------------------------------------------------------
# triangle vs vertical cylinder via shapely


def triangle_cylinder_overlap_oracle(tri: Triangle, cx: float, cz: float,
                                     radius: float, y_lo: float, y_hi: float) -> bool:
    from shapely.geometry import LineString, Point, Polygon

    poly = [tri.a, tri.b, tri.c]
    poly = _clip_halfspace(poly, 1, y_hi, keep_below=True)
    if not poly:
        return False
    poly = _clip_halfspace(poly, 1, y_lo, keep_below=False)
    if not poly:
        return False
    pts = [(p.x, p.z) for p in poly]
    center = Point(cx, cz)
    if len(pts) == 1:
        shape = Point(pts[0])
    elif len(pts) == 2:
        shape = LineString(pts)
    else:
        shape = Polygon(pts)
        if not shape.is_valid or shape.area < 1e-18:
            shape = LineString(pts + [pts[0]])
    return shape.distance(center) <= radius + 1e-12


# ----------------------------------------------------------------------
# plain Dijkstra with the same step costs and corner rule


def dijkstra_cost(grid: TraversabilityGrid, start: Cell, goal: Cell) -> Optional[float]:
    """Exact minimal path cost in meters, or None when unreachable.

    Uses integer (straight, diagonal) pairs like the planner so equal
    costs are equal floats, not merely close ones.
    """
    w, h = grid.spec.width, grid.spec.height

    def free(ix, iy):
        return 0 <= ix < w and 0 <= iy < h and grid.state_at(ix, iy) is CellState.FREE

    def blocked(ix, iy):
        return 0 <= ix < w and 0 <= iy < h and grid.state_at(ix, iy) is CellState.BLOCKED

    if not free(*start) or not free(*goal):
        return None
    dist: Dict[Tuple[int, int], Tuple[int, int]] = {tuple(start): (0, 0)}
    heap = [(0.0, tuple(start), (0, 0))]
    done = set()
    while heap:
        d, node, pair = heapq.heappop(heap)
        if node in done:
            continue
        if dist.get(node) != pair:
            continue
        done.add(node)
        if node == tuple(goal):
            return (pair[0] + pair[1] * SQRT2) * grid.spec.cell_size
        ix, iy = node
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                if dx == 0 and dy == 0:
                    continue
                nx, ny = ix + dx, iy + dy
                if not free(nx, ny):
                    continue
                diag = dx != 0 and dy != 0
                if diag and (blocked(ix, ny) or blocked(nx, iy)):
                    continue
                np_ = (pair[0], pair[1] + 1) if diag else (pair[0] + 1, pair[1])
                nd = np_[0] + np_[1] * SQRT2
                old = dist.get((nx, ny))
                if old is None or nd < old[0] + old[1] * SQRT2:
                    dist[(nx, ny)] = np_
                    heapq.heappush(heap, (nd, (nx, ny), np_))
    return None


# ----------------------------------------------------------------------
# BFS teleport target oracle


def bfs_free_cells_by_layer(grid: TraversabilityGrid, start: Cell) -> List[List[Cell]]:
    """Free cells grouped by 4-connected BFS depth from start (search
    crosses any in-bounds cell). Layer 0 is the start itself if Free."""
    w, h = grid.spec.width, grid.spec.height
    seen = {tuple(start)}
    layer = [tuple(start)]
    out: List[List[Cell]] = []
    while layer:
        frees = [Cell(ix, iy) for ix, iy in layer
                 if grid.state_at(ix, iy) is CellState.FREE]
        out.append(frees)
        nxt = []
        for ix, iy in layer:
            for dx, dy in ((0, 1), (1, 0), (0, -1), (-1, 0)):
                nx, ny = ix + dx, iy + dy
                if 0 <= nx < w and 0 <= ny < h and (nx, ny) not in seen:
                    seen.add((nx, ny))
                    nxt.append((nx, ny))
        layer = nxt
    return out


def nearest_free_candidates(grid: TraversabilityGrid, start: Cell) -> List[Cell]:
    """All Free cells at the minimal BFS depth (the teleport target must be
    one of these)."""
    for frees in bfs_free_cells_by_layer(grid, start):
        if frees:
            return frees
    return []


# ----------------------------------------------------------------------
# segment / occlusion


def segment_hits_world(world: WorldModel, a: Vec3, b: Vec3, skin: float = 1e-6) -> bool:
    d = b - a
    length = d.norm()
    if length <= skin:
        return False
    direction = d.scale(1.0 / length)
    for cid in world.chunks:
        for tri in world.chunks[cid].triangles:
            t = ray_triangle_oracle(a, direction, tri)
            if t is not None and skin < t < length - skin:
                return True
    return False


# ----------------------------------------------------------------------
# Student t two-sided p via continued-fraction incomplete beta


def _betacf(a: float, b: float, x: float) -> float:
    MAXIT, EPS, FPMIN = 200, 3e-16, 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < FPMIN:
        d = FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        de = d * c
        h *= de
        if abs(de - 1.0) < EPS:
            return h
    raise RuntimeError("betacf did not converge")


def _betai(a: float, b: float, x: float) -> float:
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_bt = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
             + a * math.log(x) + b * math.log(1.0 - x))
    bt = math.exp(ln_bt)
    if x < (a + 1.0) / (a + b + 2.0):
        return bt * _betacf(a, b, x) / a
    return 1.0 - bt * _betacf(b, a, 1.0 - x) / b


def t_two_sided_p_oracle(t: float, df: int) -> float:
    return _betai(df / 2.0, 0.5, df / (df + t * t))
