import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arnav.geometry import (
    AABB,
    Triangle,
    Vec3,
    aabb_of_triangle,
    aabb_union,
    ang_diff,
    clip_polygon_y_slab,
    dist2d_point_polygon,
    normalize_angle,
    plane_height_at,
    point_in_triangle_xz,
    ray_triangle,
    tri_area,
    tri_centroid,
    tri_normal,
    triangle_aabb_overlap,
)

from _oracles import ray_triangle_oracle, triangle_box_overlap_oracle

finite = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False, allow_infinity=False)


def test_normalize_angle_known_values():
    assert normalize_angle(0.0) == 0.0
    assert normalize_angle(math.pi) == pytest.approx(math.pi)
    assert normalize_angle(-math.pi) == pytest.approx(math.pi)
    assert normalize_angle(3 * math.pi) == pytest.approx(math.pi)
    assert normalize_angle(2 * math.pi) == pytest.approx(0.0)
    assert normalize_angle(-3.5 * math.pi) == pytest.approx(0.5 * math.pi)


@given(st.floats(min_value=-1000.0, max_value=1000.0, allow_nan=False))
def test_normalize_angle_range_and_identity(a):
    r = normalize_angle(a)
    assert -math.pi < r <= math.pi
    assert math.isclose(math.sin(r), math.sin(a), abs_tol=1e-9)
    assert math.isclose(math.cos(r), math.cos(a), abs_tol=1e-9)


@given(st.floats(min_value=-20.0, max_value=20.0, allow_nan=False),
       st.floats(min_value=-20.0, max_value=20.0, allow_nan=False))
def test_ang_diff_is_smallest_signed_rotation(a, b):
    d = ang_diff(a, b)
    assert -math.pi < d <= math.pi
    # rotating b by d lands on a modulo full turns
    assert math.isclose(math.cos(b + d), math.cos(a), abs_tol=1e-9)
    assert math.isclose(math.sin(b + d), math.sin(a), abs_tol=1e-9)


def test_tri_area_and_normal_direction():
    t = Triangle(Vec3(0, 0, 0), Vec3(2, 0, 0), Vec3(0, 0, 2))
    assert tri_area(t) == pytest.approx(2.0)
    n = tri_normal(t)
    # right-handed: (b-a) x (c-a) for this winding points along -y
    assert n.y < 0
    assert tri_centroid(t) == pytest.approx((2 / 3, 0.0, 2 / 3))


def test_ray_triangle_simple_hit_and_miss():
    t = Triangle(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 0, 1))
    down = Vec3(0, -1, 0)
    assert ray_triangle(Vec3(0.25, 5.0, 0.25), down, t) == pytest.approx(5.0)
    assert ray_triangle(Vec3(0.9, 5.0, 0.9), down, t) is None          # outside
    assert ray_triangle(Vec3(0.25, -1.0, 0.25), down, t) is None       # behind
    assert ray_triangle(Vec3(0.25, 5.0, 0.25), Vec3(1, 0, 0), t) is None  # parallel


def test_ray_triangle_edge_and_vertex_hits_count():
    t = Triangle(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 0, 1))
    down = Vec3(0, -1, 0)
    assert ray_triangle(Vec3(0.5, 2.0, 0.0), down, t) == pytest.approx(2.0)   # edge ab
    assert ray_triangle(Vec3(0.5, 2.0, 0.5), down, t) == pytest.approx(2.0)   # hypotenuse
    assert ray_triangle(Vec3(0.0, 2.0, 0.0), down, t) == pytest.approx(2.0)   # vertex


def test_ray_triangle_degenerate_triangle_misses():
    t = Triangle(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0))
    assert ray_triangle(Vec3(0.5, 1.0, 0.0), Vec3(0, -1, 0), t) is None


def test_ray_triangle_matches_plane_barycentric_oracle():
    rng = random.Random(2024)
    hits = 0
    for _ in range(3000):
        tri = Triangle(*[Vec3(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5))
                         for _ in range(3)])
        if tri_area(tri) < 1e-6:
            continue
        origin = Vec3(rng.uniform(-8, 8), rng.uniform(-8, 8), rng.uniform(-8, 8))
        if rng.random() < 0.5:
            # aim at a random interior point so the hit path gets exercised
            u, v = rng.random(), rng.random()
            if u + v > 1.0:
                u, v = 1.0 - u, 1.0 - v
            target = tri.a + (tri.b - tri.a).scale(u) + (tri.c - tri.a).scale(v)
            direction = target - origin
        else:
            direction = Vec3(rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))
        if direction.norm() < 1e-6:
            continue
        direction = direction.normalized()
        got = ray_triangle(origin, direction, tri)
        want = ray_triangle_oracle(origin, direction, tri)
        assert (got is None) == (want is None)
        if got is not None:
            hits += 1
            assert got == pytest.approx(want, abs=1e-9)
    assert hits > 200  # the comparison actually exercised the hit path


@st.composite
def lattice_triangles(draw):
    # quarter-meter lattice: touch cases are exact, near-miss-within-1e-12
    # cases cannot occur, so implementation and oracle must agree everywhere
    coord = st.integers(min_value=-12, max_value=12).map(lambda v: v * 0.25)
    pts = [Vec3(draw(coord), draw(coord), draw(coord)) for _ in range(3)]
    return Triangle(*pts)


@settings(max_examples=300, deadline=None)
@given(lattice_triangles(),
       st.tuples(*[st.integers(min_value=-10, max_value=10) for _ in range(3)]),
       st.tuples(*[st.integers(min_value=1, max_value=8) for _ in range(3)]))
def test_triangle_aabb_overlap_matches_clipping_oracle(tri, lo_i, ext_i):
    lo = Vec3(lo_i[0] * 0.25, lo_i[1] * 0.25, lo_i[2] * 0.25)
    hi = Vec3(lo.x + ext_i[0] * 0.25, lo.y + ext_i[1] * 0.25, lo.z + ext_i[2] * 0.25)
    box = AABB(lo, hi)
    assert triangle_aabb_overlap(tri, box) == triangle_box_overlap_oracle(tri, lo, hi)


def test_triangle_aabb_touching_face_counts():
    tri = Triangle(Vec3(2, 0, 0), Vec3(2, 1, 0), Vec3(2, 0, 1))
    box = AABB(Vec3(0, 0, 0), Vec3(2, 2, 2))
    assert triangle_aabb_overlap(tri, box)
    shifted = Triangle(Vec3(2.001, 0, 0), Vec3(2.001, 1, 0), Vec3(2.001, 0, 1))
    assert not triangle_aabb_overlap(shifted, box)


def test_point_in_triangle_xz_inclusive_and_winding_free():
    t = Triangle(Vec3(0, 0, 0), Vec3(4, 0, 0), Vec3(0, 0, 4))
    rev = Triangle(t.c, t.b, t.a)
    for tri in (t, rev):
        assert point_in_triangle_xz(1.0, 1.0, tri)
        assert point_in_triangle_xz(0.0, 0.0, tri)       # vertex
        assert point_in_triangle_xz(2.0, 0.0, tri)       # edge
        assert point_in_triangle_xz(2.0, 2.0, tri)       # hypotenuse
        assert not point_in_triangle_xz(3.0, 3.0, tri)
        assert not point_in_triangle_xz(-0.1, 0.0, tri)


def test_point_in_triangle_xz_matches_shapely():
    from shapely.geometry import Point, Polygon

    rng = random.Random(99)
    checked = 0
    for _ in range(800):
        tri = Triangle(*[Vec3(rng.uniform(-4, 4), 0.0, rng.uniform(-4, 4))
                         for _ in range(3)])
        poly = Polygon([(p.x, p.z) for p in (tri.a, tri.b, tri.c)])
        if poly.area < 1e-3:
            continue
        px, pz = rng.uniform(-5, 5), rng.uniform(-5, 5)
        d = poly.distance(Point(px, pz))
        if d < 1e-9 and not poly.contains(Point(px, pz)):
            continue  # boundary-grazing: both answers defensible
        assert point_in_triangle_xz(px, pz, tri) == (d == 0.0)
        checked += 1
    assert checked > 500


def test_plane_height_at():
    # plane y = 1 + 0.5 x
    t = Triangle(Vec3(0, 1, 0), Vec3(2, 2, 0), Vec3(0, 1, 3))
    assert plane_height_at(t, 0.0, 0.0) == pytest.approx(1.0)
    assert plane_height_at(t, 4.0, -7.0) == pytest.approx(3.0)
    vertical = Triangle(Vec3(0, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1))
    assert plane_height_at(vertical, 0.0, 0.0) is None


def test_plane_height_matches_ray_probe():
    rng = random.Random(5)
    for _ in range(300):
        tri = Triangle(*[Vec3(rng.uniform(-3, 3), rng.uniform(-2, 2), rng.uniform(-3, 3))
                         for _ in range(3)])
        n = tri_normal(tri)
        if abs(n.y) < 1e-3 or tri_area(tri) < 1e-3:
            continue
        c = tri_centroid(tri)
        h = plane_height_at(tri, c.x, c.z)
        assert h == pytest.approx(c.y, abs=1e-9)


def test_clip_polygon_y_slab_cases():
    tri = [Vec3(0, 0, 0), Vec3(0, 2, 0), Vec3(1, 0, 0)]
    # fully inside: unchanged
    assert clip_polygon_y_slab(tri, -1.0, 3.0) == tri
    # fully below the slab: empty
    assert clip_polygon_y_slab(tri, 5.0, 9.0) == []
    # cut at y=1: a quad with two points at y=1
    out = clip_polygon_y_slab(tri, -1.0, 1.0)
    assert len(out) == 4
    assert max(p.y for p in out) == pytest.approx(1.0)
    # slab interior band
    band = clip_polygon_y_slab(tri, 0.5, 1.0)
    assert band
    assert all(0.5 - 1e-9 <= p.y <= 1.0 + 1e-9 for p in band)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(finite, finite, finite), min_size=3, max_size=3),
       st.floats(min_value=-10, max_value=10), st.floats(min_value=0, max_value=20))
def test_clip_polygon_y_slab_stays_in_slab_and_hull(pts, y_lo, width):
    poly = [Vec3(*p) for p in pts]
    y_hi = y_lo + width
    out = clip_polygon_y_slab(poly, y_lo, y_hi)
    ys_in = [p.y for p in poly]
    for p in out:
        assert y_lo - 1e-6 <= p.y <= y_hi + 1e-6
        # clipped x/z stay within the original polygon's bounding range
        assert min(q.x for q in poly) - 1e-6 <= p.x <= max(q.x for q in poly) + 1e-6
        assert min(q.z for q in poly) - 1e-6 <= p.z <= max(q.z for q in poly) + 1e-6
    if ys_in and min(ys_in) >= y_lo and max(ys_in) <= y_hi:
        assert out == poly


def _convex_polygon(rng, n, cx=0.0, cz=0.0, r=2.0):
    angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n))
    return [Vec3(cx + r * math.cos(a), 0.0, cz + r * math.sin(a)) for a in angles]


def test_dist2d_point_polygon_matches_shapely():
    from shapely.geometry import Point, Polygon

    rng = random.Random(31)
    for _ in range(500):
        poly = _convex_polygon(rng, rng.randint(3, 7))
        sp = Polygon([(p.x, p.z) for p in poly])
        if sp.area < 1e-6:
            continue
        px, pz = rng.uniform(-4, 4), rng.uniform(-4, 4)
        want = sp.distance(Point(px, pz))
        got = dist2d_point_polygon(px, pz, poly)
        assert got == pytest.approx(want, abs=1e-9)


def test_dist2d_point_polygon_degenerate_shapes():
    seg = [Vec3(0, 0, 0), Vec3(2, 0, 0)]
    assert dist2d_point_polygon(1.0, 1.0, seg) == pytest.approx(1.0)
    assert dist2d_point_polygon(3.0, 0.0, seg) == pytest.approx(1.0)
    point = [Vec3(1, 0, 1)]
    assert dist2d_point_polygon(1.0, 0.0, point) == pytest.approx(1.0)
    assert dist2d_point_polygon(0.0, 0.0, []) == math.inf
    collinear = [Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0)]
    assert dist2d_point_polygon(1.0, 0.5, collinear) == pytest.approx(0.5)


def test_aabb_helpers():
    t = Triangle(Vec3(1, 2, 3), Vec3(-1, 5, 0), Vec3(0, 0, 7))
    box = aabb_of_triangle(t)
    assert box.lo == Vec3(-1, 0, 0)
    assert box.hi == Vec3(1, 5, 7)
    other = AABB(Vec3(5, 5, 5), Vec3(6, 6, 6))
    u = aabb_union(box, other)
    assert u.lo == Vec3(-1, 0, 0)
    assert u.hi == Vec3(6, 6, 7)
    assert not box.overlaps(other)
    assert box.overlaps(AABB(Vec3(1, 0, 0), Vec3(2, 1, 1)))  # touching counts
    assert box.contains_point(Vec3(0, 1, 2))
    assert box.inflated(1.0).contains_point(Vec3(2, 6, 8))
