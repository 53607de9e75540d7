import type { Snapshot } from "../src/messages.js";
import type { SceneModel } from "../src/scene.js";

export function makeSnapshot(overrides: Partial<Snapshot> = {}): Snapshot {
  const base: Snapshot = {
    type: "Snapshot",
    tick: 7,
    robot: { x: 0.75, z: 0.75, heading: 0.0, ground_y: 0.0, mode: "Navigating" },
    path: {
      cells: [[1, 1], [2, 1], [3, 1]],
      waypoints: [[0.75, 0, 0.75], [1.25, 0, 0.75], [1.75, 0, 0.75]],
      cost: 1.0,
      progress: [0, 0.0],
      hidden: [false, false, false],
    },
    lidar: {
      ranges: [1.0, null, 2.0],
      hit_points: [[1.75, 0.3, 0.75], [0.75, 0.3, 2.75]],
      hit_hidden: [false, false],
      highlighted_beam: 0,
    },
    grid: {
      origin: [0, 0, 0],
      cell_size: 0.5,
      width: 4,
      height: 3,
      rows: [
        [[1, 4]],
        [[1, 2], [2, 2]],
        [[0, 4]],
      ],
    },
    discovered_chunk_ids: ["floor"],
    mode: "Standard",
    dim_level: 0.0,
    language: "DE",
    menu_open: false,
    observer: { x: 5, y: 1.6, z: 5, yaw: 0 },
    pointer: null,
    events: [],
  };
  return { ...base, ...overrides };
}

export function makeScene(): SceneModel {
  return new Map([
    [
      "floor",
      {
        chunkId: "floor",
        material: "opaque" as const,
        triangles: [
          [[0, 0, 0], [2, 0, 0], [2, 0, 1.5]] as [
            [number, number, number],
            [number, number, number],
            [number, number, number]
          ],
        ],
      },
    ],
  ]);
}
