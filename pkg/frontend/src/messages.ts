import { z } from "zod";

// Wire message shapes for the session protocol. Everything coming off the
// socket is validated here so the rest of the UI can trust its inputs; a
// message that fails validation is treated as a decode failure upstream.

export const PROTOCOL_VERSION = 1;

const vec3 = z.tuple([z.number(), z.number(), z.number()]);
const cell = z.tuple([z.number().int(), z.number().int()]);

export type Vec3 = z.infer<typeof vec3>;

export const RobotSchema = z.object({
  x: z.number(),
  z: z.number(),
  heading: z.number(),
  ground_y: z.number(),
  mode: z.enum(["Idle", "Navigating", "Blocked", "Recovered"]),
});

export const PathSchema = z.object({
  cells: z.array(cell),
  waypoints: z.array(vec3),
  cost: z.number(),
  progress: z.tuple([z.number(), z.number()]),
  hidden: z.array(z.boolean()),
});

export const LidarSchema = z.object({
  ranges: z.array(z.number().nullable()),
  hit_points: z.array(vec3),
  hit_hidden: z.array(z.boolean()),
  highlighted_beam: z.number().int(),
});

export const GridSchema = z.object({
  origin: vec3,
  cell_size: z.number(),
  width: z.number().int(),
  height: z.number().int(),
  // run-length encoded rows: per row a list of [state, count] pairs
  rows: z.array(z.array(z.tuple([z.number().int(), z.number().int()]))),
});

export const PointerSchema = z.object({
  origin: vec3,
  direction: vec3,
  hit: vec3.nullable(),
  accepted: z.boolean(),
});

export const EventSchema = z
  .object({ kind: z.string() })
  .passthrough();

export const SnapshotSchema = z.object({
  type: z.literal("Snapshot"),
  tick: z.number().int(),
  robot: RobotSchema,
  path: PathSchema.nullable(),
  lidar: LidarSchema,
  grid: GridSchema,
  discovered_chunk_ids: z.array(z.string()),
  mode: z.enum(["Standard", "TraversableOverlay", "LidarMode"]),
  dim_level: z.number(),
  language: z.enum(["DE", "EN"]),
  menu_open: z.boolean(),
  observer: z.object({
    x: z.number(),
    y: z.number(),
    z: z.number(),
    yaw: z.number(),
  }),
  pointer: PointerSchema.nullable(),
  events: z.array(EventSchema),
});

export const HelloSchema = z.object({
  type: z.literal("Hello"),
  protocol_version: z.number().int(),
  scenario: z.string(),
  tick_rate: z.number(),
});

export const ErrorSchema = z.object({
  type: z.literal("Error"),
  message: z.string(),
});

export const ServerMessageSchema = z.discriminatedUnion("type", [
  SnapshotSchema,
  HelloSchema,
  ErrorSchema,
]);

export type Snapshot = z.infer<typeof SnapshotSchema>;
export type Hello = z.infer<typeof HelloSchema>;
export type ErrorMessage = z.infer<typeof ErrorSchema>;
export type ServerMessage = z.infer<typeof ServerMessageSchema>;
export type RobotMode = Snapshot["robot"]["mode"];
export type VisualizationMode = Snapshot["mode"];
export type Language = Snapshot["language"];
export type SessionEvent = z.infer<typeof EventSchema>;

export class DecodeError extends Error {}

export function decodeServerMessage(body: Uint8Array): ServerMessage {
  let obj: unknown;
  try {
    obj = JSON.parse(new TextDecoder("utf-8", { fatal: true }).decode(body));
  } catch (e) {
    throw new DecodeError(`bad message encoding: ${e}`);
  }
  const parsed = ServerMessageSchema.safeParse(obj);
  if (!parsed.success) {
    throw new DecodeError(`unrecognized message: ${parsed.error.issues[0]?.message}`);
  }
  return parsed.data;
}

// Commands are client -> server; the server validates them again, this is
// just a typed set of constructors so a gesture can't produce a typo.

export type Command =
  | { type: "Command"; kind: "Trigger"; origin: Vec3; direction: Vec3 }
  | { type: "Command"; kind: "MenuToggle" }
  | { type: "Command"; kind: "SetMode"; mode: VisualizationMode }
  | { type: "Command"; kind: "SetLanguage"; language: Language }
  | { type: "Command"; kind: "Reset" }
  | { type: "Command"; kind: "PlayAudio" }
  | { type: "Command"; kind: "MoveObserver"; x: number; y: number; z: number; yaw: number };

export function trigger(origin: Vec3, direction: Vec3): Command {
  return { type: "Command", kind: "Trigger", origin, direction };
}

export function menuToggle(): Command {
  return { type: "Command", kind: "MenuToggle" };
}

export function setMode(mode: VisualizationMode): Command {
  return { type: "Command", kind: "SetMode", mode };
}

export function setLanguage(language: Language): Command {
  return { type: "Command", kind: "SetLanguage", language };
}

export function resetCommand(): Command {
  return { type: "Command", kind: "Reset" };
}

export function playAudio(): Command {
  return { type: "Command", kind: "PlayAudio" };
}

export function moveObserver(x: number, y: number, z: number, yaw: number): Command {
  return { type: "Command", kind: "MoveObserver", x, y, z, yaw };
}

// Grid helpers ------------------------------------------------------------

export const CELL_UNKNOWN = 0;
export const CELL_FREE = 1;
export const CELL_BLOCKED = 2;

/** Expand the RLE rows into a dense row-major array of cell states. */
export function expandGridRows(grid: Snapshot["grid"]): Uint8Array {
  const out = new Uint8Array(grid.width * grid.height);
  for (let iy = 0; iy < grid.rows.length; iy++) {
    let ix = 0;
    for (const [state, count] of grid.rows[iy]) {
      out.fill(state, iy * grid.width + ix, iy * grid.width + ix + count);
      ix += count;
    }
  }
  return out;
}
