import { ChildProcess, spawn } from "node:child_process";
import fs from "node:fs";
import path from "node:path";
import { afterEach, describe, expect, it } from "vitest";
import { TcpConnection, connectTcp } from "../src/client_node.js";
import { dispatchGesture } from "../src/input.js";
import type { Command, ServerMessage, Snapshot } from "../src/messages.js";
import { Draw, render } from "../src/render.js";
import { SceneModel, buildScene, parseManifest } from "../src/scene.js";
import { menuEntries } from "../src/strings.js";
import { menuLayout } from "../src/input.js";
import {
  ViewState,
  applyServerMessage,
  initialView,
  markDecodeFailure,
  markDisconnected,
} from "../src/view.js";

// End-to-end checks against the real session server: spawn `arnav serve` on
// the hall fixture, connect over TCP, and drive the UI layer with gestures
// exactly like the browser would.

const REPO = path.resolve(__dirname, "..", "..");
const SCENARIO = path.join(__dirname, "fixtures", "hall", "hall.json");
const SCENE_DIR = path.join(__dirname, "fixtures", "hall", "scene");
const VP = { width: 800, height: 600 };

function loadHallScene(): SceneModel {
  const manifest = fs.readFileSync(path.join(SCENE_DIR, "manifest.txt"), "utf-8");
  const objTexts = new Map<string, string>();
  for (const rec of parseManifest(manifest)) {
    objTexts.set(rec.objFile, fs.readFileSync(path.join(SCENE_DIR, rec.objFile), "utf-8"));
  }
  return buildScene(manifest, objTexts);
}

const scene = loadHallScene();

interface Server {
  proc: ChildProcess;
  host: string;
  port: number;
}

function startServer(): Promise<Server> {
  const env = { ...process.env };
  delete env.ARNAV_BIND; // the env override must not redirect the test server
  const proc = spawn(
    "python3",
    ["-m", "arnav.cli", "serve", "--scenario", SCENARIO, "--bind", "127.0.0.1:0"],
    { cwd: REPO, env, stdio: ["ignore", "pipe", "pipe"] }
  );
  return new Promise((resolve, reject) => {
    let out = "";
    let err = "";
    const timer = setTimeout(() => reject(new Error(`server start timeout\n${out}${err}`)), 20000);
    proc.stdout!.on("data", (d) => {
      out += d.toString();
      const m = out.match(/listening on ([\d.]+):(\d+)/);
      if (m) {
        clearTimeout(timer);
        resolve({ proc, host: m[1], port: Number(m[2]) });
      }
    });
    proc.stderr!.on("data", (d) => {
      err += d.toString();
    });
    proc.on("exit", (code) => {
      clearTimeout(timer);
      reject(new Error(`server exited with ${code}\n${out}${err}`));
    });
  });
}

class UiClient {
  view: ViewState = initialView();
  messages: ServerMessage[] = [];
  snapshots: Snapshot[] = [];
  conn!: TcpConnection;

  async connect(server: Server): Promise<void> {
    this.conn = await connectTcp(server.host, server.port, {
      onMessage: (m) => {
        this.messages.push(m);
        applyServerMessage(this.view, m);
        if (m.type === "Snapshot") this.snapshots.push(m);
      },
      onDecodeFailure: (d) => markDecodeFailure(this.view, d),
      onClose: () => markDisconnected(this.view),
    });
  }

  gesture(g: Parameters<typeof dispatchGesture>[0]): Command | null {
    return dispatchGesture(g, this.view, VP, (cmd) => this.conn.client.sendCommand(cmd));
  }

  render(snap: Snapshot): Draw[] {
    return render(snap, this.view, scene);
  }

  async until<T>(fn: () => T | undefined | false, ms = 15000): Promise<T> {
    const t0 = Date.now();
    for (;;) {
      const v = fn();
      if (v !== undefined && v !== false) return v as T;
      if (Date.now() - t0 > ms) throw new Error("timed out waiting for condition");
      await new Promise((r) => setTimeout(r, 5));
    }
  }

  /** Resolve right after the next snapshot lands, so a following send lines up with a tick boundary. */
  async nextSnapshot(): Promise<Snapshot> {
    const n = this.snapshots.length;
    await this.until(() => this.snapshots.length > n);
    return this.snapshots[this.snapshots.length - 1];
  }

  close(): void {
    this.conn?.close();
  }
}

function has(draws: Draw[], kind: Draw["kind"]): boolean {
  return draws.some((d) => d.kind === kind);
}

describe("live session", () => {
  let server: Server | null = null;
  let clients: UiClient[] = [];

  afterEach(() => {
    for (const c of clients) c.close();
    clients = [];
    server?.proc.kill("SIGTERM");
    server = null;
  });

  async function join(): Promise<UiClient> {
    if (!server) server = await startServer();
    const c = new UiClient();
    await c.connect(server);
    clients.push(c);
    return c;
  }

  it("handshakes with Hello and streams decodable snapshots", async () => {
    const c = await join();
    await c.until(() => c.messages.length > 0);
    expect(c.messages[0]).toMatchObject({
      type: "Hello",
      protocol_version: 1,
      scenario: "ui_hall",
    });
    const snap = await c.nextSnapshot();
    expect(snap.discovered_chunk_ids).toEqual(["crate", "floor", "wall_east"]);
    expect(c.view.connection).toBe("connected");
    // camera auto-centered on the 10x10 hall
    expect(c.view.camera.centerX).toBeCloseTo(5, 9);
    expect(c.view.camera.centerZ).toBeCloseTo(5, 9);
  });

  it("clicking a free floor cell shows the new path within 2 snapshots", async () => {
    const c = await join();
    const before = await c.nextSnapshot();
    expect(before.path).toBeNull();
    expect(has(c.render(before), "pathSegment")).toBe(false);

    // world (7.3, 7.2) is open floor; screen position for the centered camera
    const sent = c.gesture({ kind: "click", sx: 538, sy: 432 });
    expect(sent?.kind).toBe("Trigger");
    const sentAt = c.snapshots.length;

    const withPath = await c.until(() =>
      c.snapshots.slice(sentAt).find((s) => s.path !== null)
    );
    const delay = c.snapshots.indexOf(withPath) - (sentAt - 1);
    expect(delay).toBeLessThanOrEqual(2);

    const draws = c.render(withPath);
    expect(has(draws, "pathSegment")).toBe(true);
    expect(has(draws, "goalMarker")).toBe(true);
    const accepted = c.snapshots
      .slice(sentAt)
      .flatMap((s) => s.events)
      .find((e) => e.kind === "GoalAccepted");
    expect(accepted).toBeTruthy();
    expect(withPath.robot.mode).toBe("Navigating");
  });

  it("clicking a wall shows a rejection cue and no path", async () => {
    const c = await join();
    await c.nextSnapshot();

    // world (9.9, 5.1) is inside the east wall
    const sent = c.gesture({ kind: "click", sx: 694, sy: 306 });
    expect(sent?.kind).toBe("Trigger");
    const sentAt = c.snapshots.length;

    const rejected = await c.until(() =>
      c.snapshots.slice(sentAt).find((s) => s.events.some((e) => e.kind === "GoalRejected"))
    );
    const delay = c.snapshots.indexOf(rejected) - (sentAt - 1);
    expect(delay).toBeLessThanOrEqual(2);

    const ev = rejected.events.find((e) => e.kind === "GoalRejected");
    expect(ev).toMatchObject({ reason: "not_navigable" });
    const draws = c.render(rejected);
    expect(has(draws, "pointerFlash")).toBe(true);
    expect(has(draws, "pathSegment")).toBe(false);
    expect(has(draws, "goalMarker")).toBe(false);
    expect(rejected.path).toBeNull();
    expect(rejected.robot.mode).toBe("Idle");
  });

  it("mode switching toggles tint and dimming exactly per snapshot fields", async () => {
    const c = await join();
    await c.nextSnapshot();

    // open the menu with the menu key, wait for the server to confirm
    expect(c.gesture({ kind: "menuKey" })?.kind).toBe("MenuToggle");
    await c.until(() => c.view.menuOpen);

    const rects = menuLayout(menuEntries(c.view.snapshot!.language));
    const rect = (id: string) => rects.find((r) => r.id === id)!;
    const clickEntry = (id: string) =>
      c.gesture({ kind: "click", sx: rect(id).x + 4, sy: rect(id).y + 4 });

    expect(clickEntry("mode_traversable")).toMatchObject({
      kind: "SetMode",
      mode: "TraversableOverlay",
    });
    const overlay = await c.until(() =>
      c.snapshots.find((s) => s.mode === "TraversableOverlay")
    );
    expect(overlay.dim_level).toBe(0.0);
    let draws = c.render(overlay);
    expect(has(draws, "cellTint")).toBe(true);
    expect(has(draws, "dim")).toBe(false);

    expect(clickEntry("mode_lidar")).toMatchObject({ kind: "SetMode", mode: "LidarMode" });
    const lidar = await c.until(() => c.snapshots.find((s) => s.mode === "LidarMode"));
    expect(lidar.dim_level).toBeCloseTo(0.8, 9);
    draws = c.render(lidar);
    expect(has(draws, "dim")).toBe(true);
    expect(has(draws, "cellTint")).toBe(false);
    expect(has(draws, "beam")).toBe(true);

    expect(clickEntry("mode_standard")).toMatchObject({ kind: "SetMode", mode: "Standard" });
    const standard = await c.until(() =>
      c.snapshots.find((s) => s.mode === "Standard" && s.tick > lidar.tick)
    );
    expect(standard.dim_level).toBe(0.0);
    draws = c.render(standard);
    expect(has(draws, "dim")).toBe(false);
    expect(has(draws, "cellTint")).toBe(false);
  });

  it("a late joiner renders the same frame as the original client", async () => {
    const a = await join();
    await a.nextSnapshot();
    a.gesture({ kind: "click", sx: 538, sy: 432 }); // give the session some state
    await a.until(() => a.snapshots.some((s) => s.path !== null));

    const b = new UiClient();
    await b.connect(server!);
    clients.push(b);
    const bFirst = await b.nextSnapshot();

    const aSame = await a.until(() => a.snapshots.find((s) => s.tick === bFirst.tick));
    expect(bFirst).toEqual(aSame);
    expect(render(bFirst, initialView(), scene)).toEqual(render(aSame, initialView(), scene));
  });

  it("surfaces server-rejected commands as toasts", async () => {
    const c = await join();
    await c.nextSnapshot();
    // bypass the typed constructors to ship a bogus command
    const { encodeFrame } = await import("../src/framing.js");
    c.conn.socket.write(encodeFrame({ type: "Command", kind: "Warp" }));
    await c.until(() => c.view.toasts.length > 0);
    expect(c.view.toasts[0]).toMatch(/Warp/);
  });
});
