import type { Snapshot, Vec3 } from "./messages.js";
import { CELL_FREE, expandGridRows } from "./messages.js";
import type { SceneModel, Material } from "./scene.js";
import { MenuEntryDef, menuEntries, lookup } from "./strings.js";
import type { ViewState } from "./view.js";

// render() turns (snapshot, view, scene assets) into a flat draw list. It is
// a pure function: no timers, no retained state, so a reconnecting client
// produces the identical frame from the next snapshot it receives. The
// canvas layer just walks the list.

export type Draw =
  | { kind: "clear" }
  | { kind: "dim"; level: number }
  | { kind: "chunk"; chunkId: string; material: Material; style: "fill" | "silhouette"; triangles: [Vec3, Vec3, Vec3][] }
  | { kind: "cellTint"; x: number; z: number; size: number }
  | { kind: "pathSegment"; x1: number; z1: number; x2: number; z2: number }
  | { kind: "goalMarker"; x: number; z: number }
  | { kind: "lidarPoint"; x: number; z: number }
  | { kind: "beam"; x1: number; z1: number; x2: number; z2: number }
  | { kind: "robot"; x: number; z: number; heading: number; mode: Snapshot["robot"]["mode"]; style: "fill" | "silhouette" }
  | { kind: "observer"; x: number; z: number; yaw: number }
  | { kind: "pointerFlash"; x: number | null; z: number | null }
  | { kind: "menu"; entries: MenuEntryDef[] }
  | { kind: "toast"; text: string }
  | { kind: "banner"; text: string };

const FALLBACK_BEAM_LENGTH = 8.0;

export function render(snapshot: Snapshot | null, view: ViewState, scene: SceneModel): Draw[] {
  const out: Draw[] = [{ kind: "clear" }];
  const language = snapshot?.language ?? "DE";

  if (snapshot === null) {
    const key = view.connection === "error" ? "banner_error"
      : view.connection === "disconnected" ? "banner_error"
      : view.connection === "connected" ? "banner_waiting"
      : "banner_connecting";
    out.push({ kind: "banner", text: lookup(language, key) });
    for (const t of view.toasts) out.push({ kind: "toast", text: t });
    return out;
  }

  const lidarMode = snapshot.mode === "LidarMode";
  const meshStyle = lidarMode ? "silhouette" : "fill";

  if (lidarMode) {
    out.push({ kind: "dim", level: snapshot.dim_level });
  }

  // discovered mesh, in the server's (sorted) id order
  for (const chunkId of snapshot.discovered_chunk_ids) {
    const chunk = scene.get(chunkId);
    if (!chunk) continue; // scenario assets out of sync; draw what we have
    out.push({
      kind: "chunk",
      chunkId,
      material: chunk.material,
      style: meshStyle,
      triangles: chunk.triangles,
    });
  }

  if (snapshot.mode === "TraversableOverlay") {
    const g = snapshot.grid;
    const cells = expandGridRows(g);
    for (let iy = 0; iy < g.height; iy++) {
      for (let ix = 0; ix < g.width; ix++) {
        if (cells[iy * g.width + ix] !== CELL_FREE) continue;
        out.push({
          kind: "cellTint",
          x: g.origin[0] + ix * g.cell_size,
          z: g.origin[2] + iy * g.cell_size,
          size: g.cell_size,
        });
      }
    }
  }

  if (!lidarMode && snapshot.path) {
    const { waypoints, hidden } = snapshot.path;
    for (let i = 0; i + 1 < waypoints.length; i++) {
      if (hidden[i] || hidden[i + 1]) continue; // occluded from the observer
      out.push({
        kind: "pathSegment",
        x1: waypoints[i][0],
        z1: waypoints[i][2],
        x2: waypoints[i + 1][0],
        z2: waypoints[i + 1][2],
      });
    }
    const last = waypoints.length - 1;
    if (last >= 0 && !hidden[last]) {
      out.push({ kind: "goalMarker", x: waypoints[last][0], z: waypoints[last][2] });
    }
  }

  for (let i = 0; i < snapshot.lidar.hit_points.length; i++) {
    if (snapshot.lidar.hit_hidden[i]) continue;
    const p = snapshot.lidar.hit_points[i];
    out.push({ kind: "lidarPoint", x: p[0], z: p[2] });
  }

  if (lidarMode) {
    out.push(beamDraw(snapshot));
  }

  out.push({
    kind: "robot",
    x: snapshot.robot.x,
    z: snapshot.robot.z,
    heading: snapshot.robot.heading,
    mode: snapshot.robot.mode,
    style: meshStyle,
  });
  out.push({
    kind: "observer",
    x: snapshot.observer.x,
    z: snapshot.observer.z,
    yaw: snapshot.observer.yaw,
  });

  if (snapshot.events.some((ev) => ev.kind === "GoalRejected")) {
    const hit = snapshot.pointer?.hit ?? null;
    out.push({ kind: "pointerFlash", x: hit ? hit[0] : null, z: hit ? hit[2] : null });
  }

  if (snapshot.menu_open) {
    out.push({ kind: "menu", entries: menuEntries(snapshot.language) });
  }

  for (const t of view.toasts) out.push({ kind: "toast", text: t });

  if (view.connection === "error" || view.connection === "disconnected") {
    out.push({ kind: "banner", text: lookup(language, "banner_error") });
  }

  return out;
}

function beamDraw(snapshot: Snapshot): Draw {
  const { ranges, hit_points, highlighted_beam } = snapshot.lidar;
  const n = ranges.length;
  const azimuth = snapshot.robot.heading + (2 * Math.PI * highlighted_beam) / Math.max(1, n);
  const r = ranges[highlighted_beam];
  if (r !== null && r !== undefined) {
    // hit_points holds only the beams that hit; count hits before ours
    let hitIndex = 0;
    for (let i = 0; i < highlighted_beam; i++) {
      if (ranges[i] !== null) hitIndex++;
    }
    const p = hit_points[hitIndex];
    if (p) {
      return { kind: "beam", x1: snapshot.robot.x, z1: snapshot.robot.z, x2: p[0], z2: p[2] };
    }
  }
  const len = ranges.reduce<number>((m, v) => (v !== null && v > m ? v : m), 0) || FALLBACK_BEAM_LENGTH;
  return {
    kind: "beam",
    x1: snapshot.robot.x,
    z1: snapshot.robot.z,
    x2: snapshot.robot.x + len * Math.cos(azimuth),
    z2: snapshot.robot.z + len * Math.sin(azimuth),
  };
}
