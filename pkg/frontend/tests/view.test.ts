import { describe, expect, it } from "vitest";
import {
  applyServerMessage,
  initialView,
  markDecodeFailure,
  markDisconnected,
  pushToast,
} from "../src/view.js";
import { makeSnapshot } from "./helpers.js";

describe("ViewState transitions", () => {
  it("connects on Hello", () => {
    const view = initialView();
    expect(view.connection).toBe("connecting");
    applyServerMessage(view, {
      type: "Hello",
      protocol_version: 1,
      scenario: "ui_hall",
      tick_rate: 120,
    });
    expect(view.connection).toBe("connected");
    expect(view.hello?.scenario).toBe("ui_hall");
  });

  it("mirrors snapshot menu state and centers the camera once", () => {
    const view = initialView();
    applyServerMessage(view, makeSnapshot({ menu_open: true }));
    expect(view.menuOpen).toBe(true);
    expect(view.camera.centerX).toBeCloseTo(1.0, 9); // 4 * 0.5 / 2
    expect(view.camera.centerZ).toBeCloseTo(0.75, 9);
    view.camera.centerX = 42; // user panned away
    applyServerMessage(view, makeSnapshot({ tick: 8 }));
    expect(view.camera.centerX).toBe(42); // later snapshots leave the camera alone
    expect(view.menuOpen).toBe(false);
  });

  it("turns server Error messages into toasts", () => {
    const view = initialView();
    applyServerMessage(view, { type: "Error", message: "unknown command kind 'Warp'" });
    expect(view.toasts).toEqual(["unknown command kind 'Warp'"]);
  });

  it("announces audio playback in the session language", () => {
    const view = initialView();
    applyServerMessage(
      view,
      makeSnapshot({
        language: "EN",
        events: [{ kind: "AudioStarted", asset: "exhibit_history_en", duration: 30.0 }],
      })
    );
    expect(view.toasts).toEqual(["Audio commentary started"]);
  });

  it("keeps only the most recent toasts", () => {
    const view = initialView();
    for (let i = 0; i < 7; i++) pushToast(view, `t${i}`);
    expect(view.toasts).toEqual(["t3", "t4", "t5", "t6"]);
  });

  it("tracks disconnects and decode failures", () => {
    const view = initialView();
    applyServerMessage(view, makeSnapshot());
    markDisconnected(view);
    expect(view.connection).toBe("disconnected");
    markDecodeFailure(view, "garbled frame");
    expect(view.connection).toBe("error");
    expect(view.lastError).toBe("garbled frame");
  });
});
