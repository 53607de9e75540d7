import { Camera, defaultCamera } from "./camera.js";
import type { Hello, ServerMessage, Snapshot } from "./messages.js";
import { lookup } from "./strings.js";

// ViewState is everything the UI remembers between frames: camera, the last
// snapshot, and connection bookkeeping. All simulation state lives on the
// server; a fresh client that receives one snapshot renders the same frame.

export type ConnectionStatus = "connecting" | "connected" | "disconnected" | "error";

export interface ViewState {
  camera: Camera;
  menuOpen: boolean;
  connection: ConnectionStatus;
  hello: Hello | null;
  snapshot: Snapshot | null;
  toasts: string[];
  lastError: string | null;
}

const MAX_TOASTS = 4;

export function initialView(): ViewState {
  return {
    camera: defaultCamera(),
    menuOpen: false,
    connection: "connecting",
    hello: null,
    snapshot: null,
    toasts: [],
    lastError: null,
  };
}

export function pushToast(view: ViewState, text: string): void {
  view.toasts.push(text);
  if (view.toasts.length > MAX_TOASTS) {
    view.toasts.splice(0, view.toasts.length - MAX_TOASTS);
  }
}

export function applyServerMessage(view: ViewState, msg: ServerMessage): void {
  if (msg.type === "Hello") {
    view.hello = msg;
    view.connection = "connected";
    view.lastError = null;
    return;
  }
  if (msg.type === "Error") {
    pushToast(view, msg.message);
    return;
  }
  applySnapshot(view, msg);
}

function applySnapshot(view: ViewState, snap: Snapshot): void {
  const first = view.snapshot === null;
  view.snapshot = snap;
  view.menuOpen = snap.menu_open;
  view.connection = "connected";
  for (const ev of snap.events) {
    if (ev.kind === "AudioStarted") {
      pushToast(view, lookup(snap.language, "toast_audio"));
    }
  }
  if (first) {
    // center the map on the grid once, so the scene is in frame on join
    const g = snap.grid;
    view.camera.centerX = g.origin[0] + (g.width * g.cell_size) / 2;
    view.camera.centerZ = g.origin[2] + (g.height * g.cell_size) / 2;
  }
}

export function markDisconnected(view: ViewState): void {
  view.connection = "disconnected";
}

export function markDecodeFailure(view: ViewState, detail: string): void {
  view.connection = "error";
  view.lastError = detail;
}
