// Stream framing: every message is a 4-byte big-endian length followed by
// that many bytes of UTF-8 JSON. Works on plain Uint8Array so the same code
// runs under node (TCP) and in the browser (WebSocket binary frames).

export const MAX_MESSAGE_BYTES = 64 * 1024 * 1024;

export class FramingError extends Error {}

export function encodeFrame(obj: unknown): Uint8Array {
  const body = new TextEncoder().encode(JSON.stringify(obj));
  if (body.length > MAX_MESSAGE_BYTES) {
    throw new FramingError(`message too large: ${body.length} bytes`);
  }
  const frame = new Uint8Array(4 + body.length);
  new DataView(frame.buffer).setUint32(0, body.length, false);
  frame.set(body, 4);
  return frame;
}

/**
 * Incremental decoder for the length-prefixed stream. feed() accepts chunks
 * of any size and returns the complete message bodies they finish.
 */
export class FrameDecoder {
  private buf = new Uint8Array(0);

  feed(chunk: Uint8Array): Uint8Array[] {
    if (chunk.length > 0) {
      const merged = new Uint8Array(this.buf.length + chunk.length);
      merged.set(this.buf, 0);
      merged.set(chunk, this.buf.length);
      this.buf = merged;
    }
    const bodies: Uint8Array[] = [];
    while (this.buf.length >= 4) {
      const size = new DataView(this.buf.buffer, this.buf.byteOffset).getUint32(0, false);
      if (size > MAX_MESSAGE_BYTES) {
        throw new FramingError(`frame of ${size} bytes exceeds limit`);
      }
      if (this.buf.length < 4 + size) break;
      bodies.push(this.buf.slice(4, 4 + size));
      this.buf = this.buf.slice(4 + size);
    }
    return bodies;
  }

  /** Bytes sitting in the buffer (a nonzero value at EOF means a cut-off frame). */
  pending(): number {
    return this.buf.length;
  }
}
