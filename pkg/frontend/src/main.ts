import { paint } from "./canvas.js";
import { zoom, pan } from "./camera.js";
import { SessionClient } from "./client.js";
import { dispatchGesture } from "./input.js";
import { render } from "./render.js";
import { SceneModel, fetchScene } from "./scene.js";
import {
  applyServerMessage,
  initialView,
  markDecodeFailure,
  markDisconnected,
} from "./view.js";

// Browser entry point. Talks to the session server through the WebSocket
// bridge (bridge.mjs), which relays raw protocol frames over TCP.

const params = new URLSearchParams(location.search);
const wsUrl = params.get("ws") ?? `ws://${location.host}/ws`;
const sceneUrl = params.get("scene") ?? "/scene/manifest.txt";

const canvas = document.getElementById("app") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const view = initialView();
let scene: SceneModel = new Map();

const client = new SessionClient({
  onMessage: (msg) => applyServerMessage(view, msg),
  onDecodeFailure: (detail) => markDecodeFailure(view, detail),
  onClose: () => markDisconnected(view),
});

fetchScene(sceneUrl)
  .then((s) => {
    scene = s;
  })
  .catch((e) => console.error("scene load failed:", e));

const ws = new WebSocket(wsUrl);
ws.binaryType = "arraybuffer";
ws.onopen = () => client.attach((bytes) => ws.send(bytes));
ws.onmessage = (ev) => client.feed(new Uint8Array(ev.data as ArrayBuffer));
ws.onclose = () => client.transportClosed();
ws.onerror = () => markDecodeFailure(view, "websocket error");

function viewport() {
  return { width: canvas.width, height: canvas.height };
}

function resize() {
  canvas.width = window.innerWidth;
  canvas.height = window.innerHeight;
}
window.addEventListener("resize", resize);
resize();

let dragging = false;
let dragMoved = false;
let lastX = 0;
let lastY = 0;

canvas.addEventListener("mousedown", (e) => {
  dragging = true;
  dragMoved = false;
  lastX = e.offsetX;
  lastY = e.offsetY;
});

canvas.addEventListener("mousemove", (e) => {
  if (!dragging) return;
  const dx = e.offsetX - lastX;
  const dy = e.offsetY - lastY;
  if (Math.abs(dx) + Math.abs(dy) > 2) dragMoved = true;
  if (dragMoved) {
    pan(view.camera, dx, dy);
    lastX = e.offsetX;
    lastY = e.offsetY;
  }
});

canvas.addEventListener("mouseup", (e) => {
  dragging = false;
  if (dragMoved) return; // a drag is camera movement, not a pointer gesture
  dispatchGesture(
    { kind: "click", sx: e.offsetX, sy: e.offsetY },
    view,
    viewport(),
    (cmd) => client.sendCommand(cmd)
  );
});

canvas.addEventListener("wheel", (e) => {
  e.preventDefault();
  zoom(view.camera, e.deltaY < 0 ? 1.15 : 1 / 1.15);
});

const MOVE_KEYS: Record<string, { forward: number; strafe: number; turn: number }> = {
  w: { forward: 1, strafe: 0, turn: 0 },
  s: { forward: -1, strafe: 0, turn: 0 },
  a: { forward: 0, strafe: -1, turn: 0 },
  d: { forward: 0, strafe: 1, turn: 0 },
  q: { forward: 0, strafe: 0, turn: -1 },
  e: { forward: 0, strafe: 0, turn: 1 },
};

window.addEventListener("keydown", (e) => {
  if (e.key === "m") {
    dispatchGesture({ kind: "menuKey" }, view, viewport(), (cmd) => client.sendCommand(cmd));
  } else if (e.key === "o") {
    view.camera.observerMode = !view.camera.observerMode;
  } else if (view.camera.observerMode && MOVE_KEYS[e.key]) {
    dispatchGesture(
      { kind: "observerStep", ...MOVE_KEYS[e.key] },
      view,
      viewport(),
      (cmd) => client.sendCommand(cmd)
    );
  }
});

function frame() {
  paint(ctx, viewport(), view.camera, render(view.snapshot, view, scene));
  requestAnimationFrame(frame);
}
requestAnimationFrame(frame);
