import type { Vec3 } from "./messages.js";

// The server never ships geometry over the wire, only the ids of chunks the
// observer has discovered so far. The viewer loads the same scene files the
// scenario references (manifest + one OBJ per chunk) as static assets and
// draws whichever subset the latest snapshot lists.

export type Material = "opaque" | "transparent";

export interface SceneChunk {
  chunkId: string;
  material: Material;
  triangles: [Vec3, Vec3, Vec3][];
}

export type SceneModel = Map<string, SceneChunk>;

export class SceneParseError extends Error {}

export interface ManifestRecord {
  chunkId: string;
  objFile: string;
  material: Material;
}

/** Manifest: one whitespace-separated record per line, # comments. */
export function parseManifest(text: string): ManifestRecord[] {
  const records: ManifestRecord[] = [];
  const lines = text.split(/\r?\n/);
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].split("#", 1)[0].trim();
    if (!line) continue;
    const parts = line.split(/\s+/);
    if (parts.length !== 3) {
      throw new SceneParseError(`manifest line ${i + 1}: expected 3 fields, got ${parts.length}`);
    }
    const [chunkId, objFile, material] = parts;
    if (material !== "opaque" && material !== "transparent") {
      throw new SceneParseError(`manifest line ${i + 1}: unknown material ${material}`);
    }
    records.push({ chunkId, objFile, material });
  }
  if (records.length === 0) {
    throw new SceneParseError("manifest has no records");
  }
  return records;
}

/** Triangulated OBJ subset: v and f lines, 1-based (or negative) indices. */
export function parseObj(text: string, name = "obj"): [Vec3, Vec3, Vec3][] {
  const verts: Vec3[] = [];
  const tris: [Vec3, Vec3, Vec3][] = [];
  const lines = text.split(/\r?\n/);
  for (let lineno = 1; lineno <= lines.length; lineno++) {
    const line = lines[lineno - 1].split("#", 1)[0].trim();
    if (!line) continue;
    const parts = line.split(/\s+/);
    if (parts[0] === "v") {
      if (parts.length < 4) {
        throw new SceneParseError(`${name}:${lineno}: vertex needs 3 coordinates`);
      }
      const x = Number(parts[1]);
      const y = Number(parts[2]);
      const z = Number(parts[3]);
      if (!isFinite(x) || !isFinite(y) || !isFinite(z)) {
        throw new SceneParseError(`${name}:${lineno}: bad vertex`);
      }
      verts.push([x, y, z]);
    } else if (parts[0] === "f") {
      const refs = parts.slice(1);
      if (refs.length !== 3) {
        throw new SceneParseError(`${name}:${lineno}: face must have 3 vertices`);
      }
      const idx: number[] = [];
      for (const r of refs) {
        let i = Number(r.split("/")[0]);
        if (!Number.isInteger(i)) {
          throw new SceneParseError(`${name}:${lineno}: bad face index ${r}`);
        }
        if (i < 0) i = verts.length + 1 + i;
        if (i < 1 || i > verts.length) {
          throw new SceneParseError(`${name}:${lineno}: face index ${i} out of range`);
        }
        idx.push(i - 1);
      }
      tris.push([verts[idx[0]], verts[idx[1]], verts[idx[2]]]);
    }
    // everything else (vn, vt, usemtl, o, ...) is ignored
  }
  if (tris.length === 0) {
    throw new SceneParseError(`${name}: no faces found`);
  }
  return tris;
}

/**
 * Assemble a scene from already-fetched file contents. objTexts maps the
 * manifest's obj_file names to their text.
 */
export function buildScene(manifestText: string, objTexts: Map<string, string>): SceneModel {
  const scene: SceneModel = new Map();
  for (const rec of parseManifest(manifestText)) {
    const text = objTexts.get(rec.objFile);
    if (text === undefined) {
      throw new SceneParseError(`manifest references missing file ${rec.objFile}`);
    }
    if (scene.has(rec.chunkId)) {
      throw new SceneParseError(`duplicate chunk_id ${rec.chunkId}`);
    }
    scene.set(rec.chunkId, {
      chunkId: rec.chunkId,
      material: rec.material,
      triangles: parseObj(text, rec.objFile),
    });
  }
  return scene;
}

/** Fetch manifest + OBJ files over HTTP (browser path; tests read from disk). */
export async function fetchScene(manifestUrl: string): Promise<SceneModel> {
  const base = manifestUrl.slice(0, manifestUrl.lastIndexOf("/") + 1);
  const manifestText = await (await fetch(manifestUrl)).text();
  const objTexts = new Map<string, string>();
  for (const rec of parseManifest(manifestText)) {
    if (!objTexts.has(rec.objFile)) {
      const resp = await fetch(base + rec.objFile);
      if (!resp.ok) {
        throw new SceneParseError(`cannot fetch ${rec.objFile}: ${resp.status}`);
      }
      objTexts.set(rec.objFile, await resp.text());
    }
  }
  return buildScene(manifestText, objTexts);
}
