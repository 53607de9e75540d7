import { Camera, Viewport, pointerRay } from "./camera.js";
import {
  Command,
  menuToggle,
  moveObserver,
  playAudio,
  resetCommand,
  setLanguage,
  setMode,
  trigger,
} from "./messages.js";
import { MenuEntryDef, MODE_FOR_ENTRY, menuEntries, lookup } from "./strings.js";
import { ViewState, pushToast } from "./view.js";

// Gesture handling. Each accepted gesture maps to exactly one Command; the
// server is the only thing that changes session state, the UI never applies
// a gesture locally. When the connection is down the gesture is dropped and
// a toast explains why.

export type Gesture =
  | { kind: "click"; sx: number; sy: number }
  | { kind: "menuKey" }
  | { kind: "observerStep"; forward: number; strafe: number; turn: number };

export interface MenuRect {
  id: MenuEntryDef["id"];
  label: string;
  x: number;
  y: number;
  w: number;
  h: number;
}

const MENU_X = 16;
const MENU_Y = 16;
const MENU_W = 230;
const MENU_H = 34;
const MENU_GAP = 8;

export function menuLayout(entries: MenuEntryDef[]): MenuRect[] {
  return entries.map((e, i) => ({
    id: e.id,
    label: e.label,
    x: MENU_X,
    y: MENU_Y + i * (MENU_H + MENU_GAP),
    w: MENU_W,
    h: MENU_H,
  }));
}

function menuHit(rects: MenuRect[], sx: number, sy: number): MenuRect | null {
  for (const r of rects) {
    if (sx >= r.x && sx <= r.x + r.w && sy >= r.y && sy <= r.y + r.h) return r;
  }
  return null;
}

const OBSERVER_STEP = 0.4; // meters per key press
const OBSERVER_TURN = Math.PI / 12;

/**
 * Map a gesture to its command. Returns null only when there is nothing to
 * map against yet (no snapshot received), which the dispatcher reports.
 */
export function commandForGesture(g: Gesture, view: ViewState, cam: Camera, vp: Viewport): Command | null {
  if (g.kind === "menuKey") {
    return menuToggle();
  }

  const snap = view.snapshot;
  if (g.kind === "observerStep") {
    if (!snap) return null;
    const o = snap.observer;
    const yaw = o.yaw + g.turn * OBSERVER_TURN;
    const x = o.x
      + g.forward * OBSERVER_STEP * Math.cos(yaw)
      + g.strafe * OBSERVER_STEP * Math.cos(yaw + Math.PI / 2);
    const z = o.z
      + g.forward * OBSERVER_STEP * Math.sin(yaw)
      + g.strafe * OBSERVER_STEP * Math.sin(yaw + Math.PI / 2);
    return moveObserver(x, o.y, z, yaw);
  }

  // click
  if (view.menuOpen) {
    const language = snap?.language ?? "DE";
    const hit = menuHit(menuLayout(menuEntries(language)), g.sx, g.sy);
    if (hit === null) {
      return menuToggle(); // clicking past the menu closes it
    }
    switch (hit.id) {
      case "reset":
        return resetCommand();
      case "audio":
        return playAudio();
      case "language":
        return setLanguage(language === "DE" ? "EN" : "DE");
      default: {
        const mode = MODE_FOR_ENTRY[hit.id];
        return mode ? setMode(mode) : menuToggle();
      }
    }
  }

  const ray = pointerRay(cam, vp, g.sx, g.sy, snap);
  return trigger(ray.origin, ray.direction);
}

/**
 * Route a gesture to the server. Returns the command that was sent, or null
 * if the gesture was dropped (disconnected, or nothing to aim with yet).
 */
export function dispatchGesture(
  g: Gesture,
  view: ViewState,
  vp: Viewport,
  send: (cmd: Command) => boolean
): Command | null {
  const language = view.snapshot?.language ?? "DE";
  if (view.connection !== "connected") {
    pushToast(view, lookup(language, "toast_disconnected"));
    return null;
  }
  const cmd = commandForGesture(g, view, view.camera, vp);
  if (cmd === null) return null;
  if (!send(cmd)) {
    pushToast(view, lookup(language, "toast_disconnected"));
    return null;
  }
  return cmd;
}
