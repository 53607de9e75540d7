import { FrameDecoder, FramingError, encodeFrame } from "./framing.js";
import { Command, DecodeError, ServerMessage, decodeServerMessage } from "./messages.js";

// Transport-neutral protocol client. The transport (TCP socket under node,
// WebSocket bridge in the browser) pushes raw bytes into feed() and gets
// outgoing frames through the writer it registered. One instance per
// connection; throw it away on reconnect.

export interface ClientHandlers {
  onMessage: (msg: ServerMessage) => void;
  onDecodeFailure: (detail: string) => void;
  onClose: () => void;
}

export class SessionClient {
  private decoder = new FrameDecoder();
  private writer: ((bytes: Uint8Array) => void) | null = null;
  private broken = false;
  private closed = false;

  constructor(private handlers: ClientHandlers) {}

  attach(writer: (bytes: Uint8Array) => void): void {
    this.writer = writer;
  }

  get connected(): boolean {
    return this.writer !== null && !this.broken && !this.closed;
  }

  feed(chunk: Uint8Array): void {
    if (this.broken || this.closed) return;
    let bodies: Uint8Array[];
    try {
      bodies = this.decoder.feed(chunk);
    } catch (e) {
      this.fail(e instanceof FramingError ? e.message : String(e));
      return;
    }
    for (const body of bodies) {
      let msg: ServerMessage;
      try {
        msg = decodeServerMessage(body);
      } catch (e) {
        this.fail(e instanceof DecodeError ? e.message : String(e));
        return;
      }
      this.handlers.onMessage(msg);
    }
  }

  /** Transport closed. A partial frame in the buffer also counts as failure. */
  transportClosed(): void {
    if (this.closed) return;
    this.closed = true;
    if (!this.broken && this.decoder.pending() > 0) {
      this.broken = true;
      this.handlers.onDecodeFailure("connection closed mid-frame");
    }
    this.handlers.onClose();
  }

  sendCommand(cmd: Command): boolean {
    if (!this.connected || this.writer === null) return false;
    this.writer(encodeFrame(cmd));
    return true;
  }

  private fail(detail: string): void {
    this.broken = true;
    this.handlers.onDecodeFailure(detail);
  }
}
