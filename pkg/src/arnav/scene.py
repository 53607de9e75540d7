"""Scene file loading.

A scene is a sidecar manifest plus one Wavefront OBJ file per chunk. The
OBJ support is a deliberate subset: `v` and `f` lines, faces already
triangulated. `f` entries may use the v/vt/vn form; only the vertex index
is read. Everything else (comments, normals, usemtl, groups) is ignored.

Manifest format, one record per line:

    # chunk_id   obj_file          material
    floor        floor.obj         opaque
    glass_rail   glass_rail.obj    transparent

Fields are whitespace separated; `#` starts a comment; relative OBJ paths
resolve against the manifest's directory.
"""

from __future__ import annotations

import os
from typing import List, Tuple

from .geometry import Triangle, Vec3
from .world import Material, MeshChunk, WorldModel


class SceneError(Exception):
    pass


def load_obj(path: str) -> List[Triangle]:
    verts: List[Vec3] = []
    tris: List[Triangle] = []
    try:
        fh = open(path, "r", encoding="utf-8")
    except OSError as e:
        raise SceneError(f"cannot open OBJ file {path!r}: {e}") from e
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            tag = parts[0]
            if tag == "v":
                if len(parts) < 4:
                    raise SceneError(f"{path}:{lineno}: vertex needs 3 coordinates")
                try:
                    verts.append(Vec3(float(parts[1]), float(parts[2]), float(parts[3])))
                except ValueError as e:
                    raise SceneError(f"{path}:{lineno}: bad vertex: {e}") from e
            elif tag == "f":
                refs = parts[1:]
                if len(refs) != 3:
                    raise SceneError(
                        f"{path}:{lineno}: face has {len(refs)} vertices; "
                        "scenes must be triangulated"
                    )
                idx = []
                for r in refs:
                    v = r.split("/")[0]
                    try:
                        i = int(v)
                    except ValueError as e:
                        raise SceneError(f"{path}:{lineno}: bad face index {r!r}") from e
                    if i < 0:
                        i = len(verts) + 1 + i  # OBJ negative indices count from the end
                    if not (1 <= i <= len(verts)):
                        raise SceneError(f"{path}:{lineno}: face index {i} out of range")
                    idx.append(i - 1)
                tris.append(Triangle(verts[idx[0]], verts[idx[1]], verts[idx[2]]))
            # all other line types are ignored
    if not tris:
        raise SceneError(f"{path}: no faces found")
    return tris


def load_manifest(path: str) -> List[Tuple[str, str, Material]]:
    """Parse a manifest into (chunk_id, obj_path, material) records."""
    records: List[Tuple[str, str, Material]] = []
    base = os.path.dirname(os.path.abspath(path))
    seen = set()
    try:
        fh = open(path, "r", encoding="utf-8")
    except OSError as e:
        raise SceneError(f"cannot open manifest {path!r}: {e}") from e
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise SceneError(
                    f"{path}:{lineno}: expected 'chunk_id obj_file material', got {line!r}"
                )
            chunk_id, obj_file, mat_name = parts
            if chunk_id in seen:
                raise SceneError(f"{path}:{lineno}: duplicate chunk_id {chunk_id!r}")
            seen.add(chunk_id)
            try:
                material = Material(mat_name.lower())
            except ValueError as e:
                raise SceneError(
                    f"{path}:{lineno}: unknown material {mat_name!r} "
                    f"(expected opaque or transparent)"
                ) from e
            obj_path = obj_file if os.path.isabs(obj_file) else os.path.join(base, obj_file)
            records.append((chunk_id, obj_path, material))
    if not records:
        raise SceneError(f"{path}: empty manifest")
    return records


def load_scene(manifest_path: str, index_cell_size: float = 0.5) -> WorldModel:
    """Build the ground-truth world from a manifest."""
    world = WorldModel(index_cell_size=index_cell_size)
    for chunk_id, obj_path, material in load_manifest(manifest_path):
        tris = load_obj(obj_path)
        world.ingest_chunk(MeshChunk(chunk_id, tuple(tris), material))
    return world
