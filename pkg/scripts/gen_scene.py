#!/usr/bin/env python3
"""Regenerate the committed museum scene OBJ files and manifest.

Run from the repo root:  python3 scripts/gen_scene.py

The scene is a 12 m x 8 m hall with four walls, two pillars, a display
case, a bench, and one transparent glass railing. Everything is axis
aligned and hand-sized so the numbers in tests stay readable.
"""

import os

OUT = os.path.join(os.path.dirname(__file__), "..", "scenarios", "museum", "scene")


def quad(v0, v1, v2, v3):
    """Two triangles for the quad v0 v1 v2 v3 (counter-clockwise)."""
    return [(v0, v1, v2), (v0, v2, v3)]


def box(x0, y0, z0, x1, y1, z1, top=True, bottom=False):
    """Axis-aligned box faces; bottom omitted by default (sits on the floor)."""
    tris = []
    tris += quad((x0, y0, z0), (x1, y0, z0), (x1, y1, z0), (x0, y1, z0))  # -z side
    tris += quad((x1, y0, z1), (x0, y0, z1), (x0, y1, z1), (x1, y1, z1))  # +z side
    tris += quad((x0, y0, z1), (x0, y0, z0), (x0, y1, z0), (x0, y1, z1))  # -x side
    tris += quad((x1, y0, z0), (x1, y0, z1), (x1, y1, z1), (x1, y1, z0))  # +x side
    if top:
        tris += quad((x0, y1, z0), (x1, y1, z0), (x1, y1, z1), (x0, y1, z1))
    if bottom:
        tris += quad((x0, y0, z1), (x1, y0, z1), (x1, y0, z0), (x0, y0, z0))
    return tris


def write_obj(name, tris):
    path = os.path.join(OUT, name)
    verts = []
    vindex = {}
    faces = []
    for tri in tris:
        face = []
        for v in tri:
            if v not in vindex:
                vindex[v] = len(verts) + 1
                verts.append(v)
            face.append(vindex[v])
        faces.append(face)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# generated by scripts/gen_scene.py\n")
        for v in verts:
            fh.write(f"v {v[0]} {v[1]} {v[2]}\n")
        for f in faces:
            fh.write(f"f {f[0]} {f[1]} {f[2]}\n")
    print(f"wrote {path} ({len(faces)} faces)")


def main():
    os.makedirs(OUT, exist_ok=True)
    H = 3.0  # wall height

    # the floor ships as 4 m x 4 m tiles so discovery reveals the ground
    # progressively instead of all at once
    for tx in range(3):
        for tz in range(2):
            x0, z0 = 4.0 * tx, 4.0 * tz
            write_obj(
                f"floor_{tx}{tz}.obj",
                quad((x0, 0, z0), (x0 + 4, 0, z0), (x0 + 4, 0, z0 + 4), (x0, 0, z0 + 4)),
            )
    write_obj("wall_south.obj", quad((0, 0, 0), (0, H, 0), (12, H, 0), (12, 0, 0)))
    write_obj("wall_north.obj", quad((0, 0, 8), (12, 0, 8), (12, H, 8), (0, H, 8)))
    write_obj("wall_west.obj", quad((0, 0, 0), (0, 0, 8), (0, H, 8), (0, H, 0)))
    write_obj("wall_east.obj", quad((12, 0, 0), (12, H, 0), (12, H, 8), (12, 0, 8)))
    write_obj("pillar_a.obj", box(3.7, 0, 4.7, 4.3, H, 5.3))
    write_obj("pillar_b.obj", box(7.7, 0, 2.2, 8.3, H, 2.8))
    write_obj("display_case.obj", box(5.25, 0, 3.5, 6.75, 1.0, 4.5))
    write_obj("bench.obj", box(1.1, 0, 6.25, 2.9, 0.45, 6.75))
    # the glass railing is a single thin panel; with detection probability 0
    # for transparent chunks it never enters the discovered world
    write_obj("glass_rail.obj", quad((9.0, 0, 6.0), (11.0, 0, 6.0), (11.0, 1.1, 6.0), (9.0, 1.1, 6.0)))

    manifest = os.path.join(OUT, "manifest.txt")
    with open(manifest, "w", encoding="utf-8") as fh:
        fh.write("# chunk_id      obj_file          material\n")
        for tx in range(3):
            for tz in range(2):
                fh.write(f"floor_{tx}{tz}        floor_{tx}{tz}.obj      opaque\n")
        fh.write("wall_south      wall_south.obj    opaque\n")
        fh.write("wall_north      wall_north.obj    opaque\n")
        fh.write("wall_west       wall_west.obj     opaque\n")
        fh.write("wall_east       wall_east.obj     opaque\n")
        fh.write("pillar_a        pillar_a.obj      opaque\n")
        fh.write("pillar_b        pillar_b.obj      opaque\n")
        fh.write("display_case    display_case.obj  opaque\n")
        fh.write("bench           bench.obj         opaque\n")
        fh.write("glass_rail      glass_rail.obj    transparent\n")
    print(f"wrote {manifest}")


if __name__ == "__main__":
    main()
