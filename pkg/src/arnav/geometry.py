"""Scalar geometry kernel: vectors, triangles, boxes, and the intersection
tests everything else is built on.

Conventions used across the package:
  * units are meters, y is up, the coordinate system is right-handed
  * the ground plane is xz; headings and azimuths are measured in the xz
    plane with 0 along +x and atan2(dz, dx) giving the angle
  * angles are normalized to (-pi, pi]

The kernel is deliberately scalar (no numpy) so that individual tests are
easy to reason about and tie-breaking stays deterministic. Batch work that
benefits from numpy lives in the grid modules instead.
"""

from __future__ import annotations

import math
from typing import List, NamedTuple, Optional, Sequence

TAU = 2.0 * math.pi

# Triangles with less area than this are treated as degenerate and dropped
# at ingestion time (they have no reliable normal).
DEGENERATE_AREA = 1e-12

# Slack used in inclusive containment/overlap tests. Kept tiny so it only
# rescues exact-touch cases from floating point noise.
EDGE_EPS = 1e-12


class Vec3(NamedTuple):
    x: float
    y: float
    z: float

    def __add__(self, o):  # type: ignore[override]
        return Vec3(self.x + o.x, self.y + o.y, self.z + o.z)

    def __sub__(self, o):
        return Vec3(self.x - o.x, self.y - o.y, self.z - o.z)

    def scale(self, s: float) -> "Vec3":
        return Vec3(self.x * s, self.y * s, self.z * s)

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def normalized(self) -> "Vec3":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize zero vector")
        return Vec3(self.x / n, self.y / n, self.z / n)

    def is_finite(self) -> bool:
        return math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)


def dot(a: Vec3, b: Vec3) -> float:
    return a.x * b.x + a.y * b.y + a.z * b.z


def cross(a: Vec3, b: Vec3) -> Vec3:
    return Vec3(
        a.y * b.z - a.z * b.y,
        a.z * b.x - a.x * b.z,
        a.x * b.y - a.y * b.x,
    )


class Triangle(NamedTuple):
    a: Vec3
    b: Vec3
    c: Vec3


def tri_normal(t: Triangle) -> Vec3:
    """Unnormalized triangle normal (length = 2 * area)."""
    return cross(t.b - t.a, t.c - t.a)


def tri_area(t: Triangle) -> float:
    return 0.5 * tri_normal(t).norm()


def tri_centroid(t: Triangle) -> Vec3:
    return Vec3(
        (t.a.x + t.b.x + t.c.x) / 3.0,
        (t.a.y + t.b.y + t.c.y) / 3.0,
        (t.a.z + t.b.z + t.c.z) / 3.0,
    )


class AABB(NamedTuple):
    lo: Vec3
    hi: Vec3

    def inflated(self, r: float) -> "AABB":
        return AABB(
            Vec3(self.lo.x - r, self.lo.y - r, self.lo.z - r),
            Vec3(self.hi.x + r, self.hi.y + r, self.hi.z + r),
        )

    def overlaps(self, o: "AABB") -> bool:
        return (
            self.lo.x <= o.hi.x and o.lo.x <= self.hi.x
            and self.lo.y <= o.hi.y and o.lo.y <= self.hi.y
            and self.lo.z <= o.hi.z and o.lo.z <= self.hi.z
        )

    def contains_point(self, p: Vec3) -> bool:
        return (
            self.lo.x <= p.x <= self.hi.x
            and self.lo.y <= p.y <= self.hi.y
            and self.lo.z <= p.z <= self.hi.z
        )


def aabb_of_triangle(t: Triangle) -> AABB:
    return AABB(
        Vec3(min(t.a.x, t.b.x, t.c.x), min(t.a.y, t.b.y, t.c.y), min(t.a.z, t.b.z, t.c.z)),
        Vec3(max(t.a.x, t.b.x, t.c.x), max(t.a.y, t.b.y, t.c.y), max(t.a.z, t.b.z, t.c.z)),
    )


def aabb_union(a: AABB, b: AABB) -> AABB:
    return AABB(
        Vec3(min(a.lo.x, b.lo.x), min(a.lo.y, b.lo.y), min(a.lo.z, b.lo.z)),
        Vec3(max(a.hi.x, b.hi.x), max(a.hi.y, b.hi.y), max(a.hi.z, b.hi.z)),
    )


def normalize_angle(a: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    r = math.remainder(a, TAU)
    if r <= -math.pi:
        r += TAU
    return r


def ang_diff(a: float, b: float) -> float:
    """Signed smallest rotation taking b to a, in (-pi, pi]."""
    return normalize_angle(a - b)


def ray_triangle(origin: Vec3, direction: Vec3, tri: Triangle) -> Optional[float]:
    """Moller-Trumbore ray/triangle intersection.

    Returns the ray parameter t (distance along a unit direction) of the
    intersection, or None. Edge and vertex hits count as hits; when two
    triangles share an edge the caller resolves the duplicate via its
    deterministic tie-break, which keeps meshes watertight in practice.
    """
    e1 = tri.b - tri.a
    e2 = tri.c - tri.a
    pvec = cross(direction, e2)
    det = dot(e1, pvec)
    if abs(det) < 1e-14:
        return None  # parallel or degenerate
    inv = 1.0 / det
    tvec = origin - tri.a
    u = dot(tvec, pvec) * inv
    if u < -EDGE_EPS or u > 1.0 + EDGE_EPS:
        return None
    qvec = cross(tvec, e1)
    v = dot(direction, qvec) * inv
    if v < -EDGE_EPS or u + v > 1.0 + EDGE_EPS:
        return None
    t = dot(e2, qvec) * inv
    if t < 0.0:
        return None
    return t


def triangle_aabb_overlap(tri: Triangle, box: AABB) -> bool:
    """Exact triangle vs axis-aligned box overlap (separating axis test).

    Touching counts as overlapping. Thirteen candidate axes: the three box
    axes, the triangle normal, and the nine edge cross products.
    """
    cx = 0.5 * (box.lo.x + box.hi.x)
    cy = 0.5 * (box.lo.y + box.hi.y)
    cz = 0.5 * (box.lo.z + box.hi.z)
    hx = 0.5 * (box.hi.x - box.lo.x)
    hy = 0.5 * (box.hi.y - box.lo.y)
    hz = 0.5 * (box.hi.z - box.lo.z)

    v0 = Vec3(tri.a.x - cx, tri.a.y - cy, tri.a.z - cz)
    v1 = Vec3(tri.b.x - cx, tri.b.y - cy, tri.b.z - cz)
    v2 = Vec3(tri.c.x - cx, tri.c.y - cy, tri.c.z - cz)

    # box axes
    if max(v0.x, v1.x, v2.x) < -hx - EDGE_EPS or min(v0.x, v1.x, v2.x) > hx + EDGE_EPS:
        return False
    if max(v0.y, v1.y, v2.y) < -hy - EDGE_EPS or min(v0.y, v1.y, v2.y) > hy + EDGE_EPS:
        return False
    if max(v0.z, v1.z, v2.z) < -hz - EDGE_EPS or min(v0.z, v1.z, v2.z) > hz + EDGE_EPS:
        return False

    e0 = v1 - v0
    e1 = v2 - v1
    e2 = v0 - v2

    # triangle normal axis
    n = cross(e0, e1)
    d = dot(n, v0)
    r = hx * abs(n.x) + hy * abs(n.y) + hz * abs(n.z)
    if abs(d) > r + EDGE_EPS:
        return False

    def axis_test(ax: float, ay: float, az: float) -> bool:
        p0 = ax * v0.x + ay * v0.y + az * v0.z
        p1 = ax * v1.x + ay * v1.y + az * v1.z
        p2 = ax * v2.x + ay * v2.y + az * v2.z
        rr = hx * abs(ax) + hy * abs(ay) + hz * abs(az)
        return min(p0, p1, p2) > rr + EDGE_EPS or max(p0, p1, p2) < -rr - EDGE_EPS

    for e in (e0, e1, e2):
        # cross products of the edge with the three box axes
        if axis_test(0.0, -e.z, e.y):
            return False
        if axis_test(e.z, 0.0, -e.x):
            return False
        if axis_test(-e.y, e.x, 0.0):
            return False
    return True


def point_in_triangle_xz(px: float, pz: float, tri: Triangle) -> bool:
    """Inclusive point-in-triangle test on the xz projection.

    Works for either winding. Degenerate projections (near-vertical
    triangles) return False; callers filter those out via the slope test
    before asking.
    """
    ax, az = tri.a.x, tri.a.z
    bx, bz = tri.b.x, tri.b.z
    cx, cz = tri.c.x, tri.c.z
    d1 = (px - bx) * (az - bz) - (ax - bx) * (pz - bz)
    d2 = (px - cx) * (bz - cz) - (bx - cx) * (pz - cz)
    d3 = (px - ax) * (cz - az) - (cx - ax) * (pz - az)
    has_neg = (d1 < -EDGE_EPS) or (d2 < -EDGE_EPS) or (d3 < -EDGE_EPS)
    has_pos = (d1 > EDGE_EPS) or (d2 > EDGE_EPS) or (d3 > EDGE_EPS)
    return not (has_neg and has_pos)


def plane_height_at(tri: Triangle, x: float, z: float) -> Optional[float]:
    """Height of the triangle's supporting plane at ground coordinates (x, z).

    None when the plane is vertical (no unique height).
    """
    n = tri_normal(tri)
    if abs(n.y) < 1e-12:
        return None
    return tri.a.y - (n.x * (x - tri.a.x) + n.z * (z - tri.a.z)) / n.y


def clip_polygon_y_slab(points: Sequence[Vec3], y_min: float, y_max: float) -> List[Vec3]:
    """Clip a convex 3D polygon to the horizontal slab y_min <= y <= y_max."""

    def clip(pts: List[Vec3], keep_above: bool, y: float) -> List[Vec3]:
        out: List[Vec3] = []
        n = len(pts)
        for i in range(n):
            cur = pts[i]
            nxt = pts[(i + 1) % n]
            cur_in = (cur.y >= y - EDGE_EPS) if keep_above else (cur.y <= y + EDGE_EPS)
            nxt_in = (nxt.y >= y - EDGE_EPS) if keep_above else (nxt.y <= y + EDGE_EPS)
            if cur_in:
                out.append(cur)
            if cur_in != nxt_in:
                denom = nxt.y - cur.y
                if abs(denom) > 1e-300:
                    t = (y - cur.y) / denom
                    out.append(cur + (nxt - cur).scale(t))
        return out

    poly = list(points)
    poly = clip(poly, True, y_min)
    if not poly:
        return []
    poly = clip(poly, False, y_max)
    return poly


def dist2d_point_polygon(px: float, pz: float, points: Sequence[Vec3]) -> float:
    """Distance in the xz plane from (px, pz) to a convex polygon.

    Zero when the point projects inside the polygon. Points are 3D; only
    x and z are used. Degenerate polygons (segments, single points) are
    handled as their lower-dimensional shapes.
    """
    n = len(points)
    if n == 0:
        return math.inf
    if n == 1:
        return math.hypot(px - points[0].x, pz - points[0].z)

    # inside test: point is inside iff it is not strictly outside any edge
    # for either consistent orientation
    best = math.inf
    sign_pos = False
    sign_neg = False
    for i in range(n):
        a = points[i]
        b = points[(i + 1) % n]
        ex = b.x - a.x
        ez = b.z - a.z
        rx = px - a.x
        rz = pz - a.z
        crossv = ex * rz - ez * rx
        if crossv > EDGE_EPS:
            sign_pos = True
        elif crossv < -EDGE_EPS:
            sign_neg = True
        # distance to the edge segment
        ll = ex * ex + ez * ez
        if ll > 0.0:
            t = (rx * ex + rz * ez) / ll
            t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
            qx = a.x + t * ex
            qz = a.z + t * ez
        else:
            qx, qz = a.x, a.z
        d = math.hypot(px - qx, pz - qz)
        if d < best:
            best = d
    if not (sign_pos and sign_neg):
        # all edge cross products on one side (or collinear): inside the hull
        # unless the polygon itself is degenerate, in which case the edge
        # distance already computed is correct
        area2 = 0.0
        for i in range(1, n - 1):
            area2 += abs(
                (points[i].x - points[0].x) * (points[i + 1].z - points[0].z)
                - (points[i + 1].x - points[0].x) * (points[i].z - points[0].z)
            )
        if area2 > EDGE_EPS:
            return 0.0
    return best
