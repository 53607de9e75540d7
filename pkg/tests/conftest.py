import math
import random
from pathlib import Path

import pytest

from arnav.geometry import Triangle, Vec3
from arnav.traversability import CellState, GridSpec, RobotFootprint, TraversabilityGrid
from arnav.world import Material, MeshChunk, WorldModel

REPO = Path(__file__).resolve().parent.parent
SCENARIO_DIR = REPO / "scenarios" / "museum"


@pytest.fixture
def museum_scenario_path() -> Path:
    return SCENARIO_DIR / "museum.json"


@pytest.fixture
def tour_scenario_path() -> Path:
    return SCENARIO_DIR / "scripted_tour.json"


def random_triangle(rng: random.Random, span: float = 10.0, min_extent: float = 1e-3) -> Triangle:
    while True:
        pts = [Vec3(rng.uniform(-span, span), rng.uniform(-span, span),
                    rng.uniform(-span, span)) for _ in range(3)]
        tri = Triangle(*pts)
        e1 = tri.b - tri.a
        e2 = tri.c - tri.a
        cx = e1.y * e2.z - e1.z * e2.y
        cy = e1.z * e2.x - e1.x * e2.z
        cz = e1.x * e2.y - e1.y * e2.x
        if math.sqrt(cx * cx + cy * cy + cz * cz) * 0.5 > min_extent:
            return tri


def random_world(rng: random.Random, n_chunks: int = 6, tris_per_chunk: int = 12,
                 span: float = 10.0) -> WorldModel:
    world = WorldModel()
    for i in range(n_chunks):
        tris = [random_triangle(rng, span) for _ in range(tris_per_chunk)]
        world.ingest_chunk(MeshChunk(chunk_id=f"c{i:02d}", triangles=tuple(tris),
                                     material=Material.OPAQUE))
    return world


def grid_from_ascii(rows, cell_size: float = 0.5, origin=(0.0, 0.0)):
    """Build a grid from strings: '.'=Free, '#'=Blocked, '?'=Unknown.

    rows[0] is iy=0. All rows must share one width.
    """
    height = len(rows)
    width = len(rows[0])
    spec = GridSpec(origin=Vec3(origin[0], 0.0, origin[1]), cell_size=cell_size,
                    width=width, height=height)
    grid = TraversabilityGrid(spec, RobotFootprint(), math.radians(30.0))
    lookup = {".": CellState.FREE, "#": CellState.BLOCKED, "?": CellState.UNKNOWN}
    for iy, row in enumerate(rows):
        assert len(row) == width
        for ix, ch in enumerate(row):
            grid.cells[iy, ix] = int(lookup[ch])
            if lookup[ch] is not CellState.UNKNOWN:
                grid.ground[iy, ix] = 0.0
    return grid


def random_grid(rng: random.Random, width: int, height: int,
                p_blocked: float = 0.25, p_unknown: float = 0.15,
                cell_size: float = 0.5) -> TraversabilityGrid:
    spec = GridSpec(origin=Vec3(0.0, 0.0, 0.0), cell_size=cell_size,
                    width=width, height=height)
    grid = TraversabilityGrid(spec, RobotFootprint(), math.radians(30.0))
    for iy in range(height):
        for ix in range(width):
            r = rng.random()
            if r < p_blocked:
                grid.cells[iy, ix] = int(CellState.BLOCKED)
                grid.ground[iy, ix] = 0.0
            elif r < p_blocked + p_unknown:
                grid.cells[iy, ix] = int(CellState.UNKNOWN)
            else:
                grid.cells[iy, ix] = int(CellState.FREE)
                grid.ground[iy, ix] = 0.0
    return grid
