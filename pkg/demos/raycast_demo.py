#!/usr/bin/env python3
"""Cast a handful of rays into a toy scene and show how hits resolve.

Demonstrates the deterministic tie-break on a shared edge and the speedup
from the spatial index over a brute-force triangle scan.
"""

import random
import time

from arnav.geometry import Triangle, Vec3
from arnav.world import Material, MeshChunk, WorldModel


def main():
    world = WorldModel()
    # two triangles sharing the edge x=1, forming a 2x1 vertical panel
    left = Triangle(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0))
    right = Triangle(Vec3(1, 0, 0), Vec3(2, 0, 0), Vec3(1, 1, 0))
    world.ingest_chunk(MeshChunk("panel", (left, right), Material.OPAQUE))

    print("ray at the shared edge x=1:")
    hit = world.raycast(Vec3(1.0, 0.5, -3.0), Vec3(0, 0, 1), 10.0)
    print(f"  hit chunk={hit.chunk_id} triangle={hit.triangle_index} "
          f"dist={hit.distance:.3f}  (lowest triangle index wins the tie)")

    print("ray that misses:")
    print(" ", world.raycast(Vec3(5.0, 5.0, -3.0), Vec3(0, 0, 1), 10.0))

    # a pile of random triangles to give the index something to do
    rng = random.Random(42)
    tris = []
    for _ in range(4000):
        a = Vec3(rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10))
        tris.append(Triangle(a, Vec3(a.x + 0.5, a.y, a.z),
                             Vec3(a.x, a.y + 0.5, a.z)))
    world.ingest_chunk(MeshChunk("pile", tuple(tris), Material.OPAQUE))

    rays = [(Vec3(rng.uniform(-10, 10), rng.uniform(-10, 10), -12.0),
             Vec3(0, 0, 1)) for _ in range(300)]

    t0 = time.perf_counter()
    fast_hits = sum(1 for o, d in rays if world.raycast(o, d, 30.0) is not None)
    t_fast = time.perf_counter() - t0

    # same geometry behind a degenerate one-cell index = brute force scan
    slow_world = WorldModel(index_cell_size=1000.0)
    for chunk in world.chunks.values():
        slow_world.ingest_chunk(chunk)
    t0 = time.perf_counter()
    slow_hits = sum(1 for o, d in rays if slow_world.raycast(o, d, 30.0) is not None)
    t_slow = time.perf_counter() - t0

    print(f"\n300 rays vs {4000 + 2} triangles:")
    print(f"  indexed   {t_fast * 1000:7.1f} ms   {fast_hits} hits")
    print(f"  full scan {t_slow * 1000:7.1f} ms   {slow_hits} hits")
    assert fast_hits == slow_hits


if __name__ == "__main__":
    main()
