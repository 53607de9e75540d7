import type { Snapshot, Vec3 } from "./messages.js";

// The viewer is a top-down map. The camera is a pan/zoom over the ground
// plane plus an optional "observer" mode: in map mode a click points straight
// down at the clicked spot (like aiming from above), in observer mode the
// pointer ray leaves the observer's eye toward the clicked spot, which is
// how the handheld controller behaves in the exhibit.

export interface Camera {
  centerX: number;
  centerZ: number;
  pxPerMeter: number;
  observerMode: boolean;
}

export interface Viewport {
  width: number;
  height: number;
}

export function defaultCamera(): Camera {
  return { centerX: 0, centerZ: 0, pxPerMeter: 60, observerMode: false };
}

export function worldToScreen(cam: Camera, vp: Viewport, x: number, z: number): [number, number] {
  return [
    vp.width / 2 + (x - cam.centerX) * cam.pxPerMeter,
    vp.height / 2 + (z - cam.centerZ) * cam.pxPerMeter,
  ];
}

export function screenToWorld(cam: Camera, vp: Viewport, sx: number, sy: number): [number, number] {
  return [
    cam.centerX + (sx - vp.width / 2) / cam.pxPerMeter,
    cam.centerZ + (sy - vp.height / 2) / cam.pxPerMeter,
  ];
}

export const POINTER_HEIGHT = 10.0;

export interface PointerRay {
  origin: Vec3;
  direction: Vec3;
}

/**
 * Ray for a click at screen position (sx, sy). Observer mode needs the last
 * snapshot for the observer's eye; without one it falls back to the top-down
 * ray so a click is never ambiguous.
 */
export function pointerRay(
  cam: Camera,
  vp: Viewport,
  sx: number,
  sy: number,
  snapshot: Snapshot | null
): PointerRay {
  const [wx, wz] = screenToWorld(cam, vp, sx, sy);
  if (cam.observerMode && snapshot) {
    const eye = snapshot.observer;
    const dx = wx - eye.x;
    const dy = 0.0 - eye.y;
    const dz = wz - eye.z;
    const norm = Math.hypot(dx, dy, dz);
    if (norm > 1e-9) {
      return {
        origin: [eye.x, eye.y, eye.z],
        direction: [dx / norm, dy / norm, dz / norm],
      };
    }
  }
  return { origin: [wx, POINTER_HEIGHT, wz], direction: [0, -1, 0] };
}

export function pan(cam: Camera, dxPx: number, dyPx: number): void {
  cam.centerX -= dxPx / cam.pxPerMeter;
  cam.centerZ -= dyPx / cam.pxPerMeter;
}

export function zoom(cam: Camera, factor: number): void {
  cam.pxPerMeter = Math.min(400, Math.max(5, cam.pxPerMeter * factor));
}
