import { describe, expect, it } from "vitest";
import { SessionClient } from "../src/client.js";
import { encodeFrame } from "../src/framing.js";
import type { ServerMessage } from "../src/messages.js";
import { menuToggle } from "../src/messages.js";
import { makeSnapshot } from "./helpers.js";

function harness() {
  const messages: ServerMessage[] = [];
  const failures: string[] = [];
  let closed = 0;
  const client = new SessionClient({
    onMessage: (m) => messages.push(m),
    onDecodeFailure: (d) => failures.push(d),
    onClose: () => closed++,
  });
  return { client, messages, failures, closedCount: () => closed };
}

describe("SessionClient", () => {
  it("decodes a coalesced hello + snapshot chunk", () => {
    const { client, messages } = harness();
    const bytes = new Uint8Array([
      ...encodeFrame({ type: "Hello", protocol_version: 1, scenario: "ui_hall", tick_rate: 120 }),
      ...encodeFrame(makeSnapshot()),
    ]);
    client.feed(bytes);
    expect(messages.map((m) => m.type)).toEqual(["Hello", "Snapshot"]);
  });

  it("reports malformed payloads and stops consuming", () => {
    const { client, messages, failures } = harness();
    client.feed(encodeFrame({ type: "Mystery" }));
    client.feed(encodeFrame(makeSnapshot()));
    expect(failures).toHaveLength(1);
    expect(messages).toHaveLength(0); // poisoned stream is not trusted further
  });

  it("treats EOF inside a frame as a decode failure", () => {
    const { client, failures, closedCount } = harness();
    const frame = encodeFrame(makeSnapshot());
    client.feed(frame.slice(0, 10));
    client.transportClosed();
    expect(failures).toEqual(["connection closed mid-frame"]);
    expect(closedCount()).toBe(1);
  });

  it("clean EOF at a frame boundary is just a close", () => {
    const { client, failures, closedCount } = harness();
    client.feed(encodeFrame(makeSnapshot()));
    client.transportClosed();
    expect(failures).toHaveLength(0);
    expect(closedCount()).toBe(1);
  });

  it("cannot send before a transport is attached or after close", () => {
    const { client } = harness();
    expect(client.sendCommand(menuToggle())).toBe(false);
    const sent: Uint8Array[] = [];
    client.attach((b) => sent.push(b));
    expect(client.sendCommand(menuToggle())).toBe(true);
    client.transportClosed();
    expect(client.sendCommand(menuToggle())).toBe(false);
    expect(sent).toHaveLength(1);
  });
});
