"""Wire protocol: length-prefixed JSON messages over a stream socket.

Framing: every message is a 4-byte big-endian unsigned length followed by
that many bytes of UTF-8 JSON. Message objects always carry a "type" field:

  Hello     server -> client greeting: protocol_version, scenario, tick_rate
  Snapshot  server -> client, one per tick (see session.SessionSnapshot)
  Command   client -> server: {"type": "Command", "kind": ..., ...}
  Error     server -> client reply to a malformed message

Replay logs use the same canonical serialization, one snapshot per line,
so two runs can be compared by hashing the files.
"""

from __future__ import annotations

import hashlib
import json
import socket
import struct
from typing import Any, Dict, Iterator, Optional

PROTOCOL_VERSION = 1
MAX_MESSAGE_BYTES = 64 * 1024 * 1024  # sanity cap on incoming frames

_LEN = struct.Struct(">I")


class ProtocolError(Exception):
    pass


def canonical_dumps(obj: Any) -> str:
    """Stable JSON encoding: sorted keys, no whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def encode_message(obj: Dict[str, Any]) -> bytes:
    body = canonical_dumps(obj).encode("utf-8")
    return _LEN.pack(len(body)) + body


def decode_body(body: bytes) -> Dict[str, Any]:
    try:
        obj = json.loads(body.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ProtocolError(f"undecodable message body: {e}") from e
    if not isinstance(obj, dict) or "type" not in obj:
        raise ProtocolError("message must be an object with a 'type' field")
    return obj


class FrameReader:
    """Incremental frame decoder; feed() bytes, iterate complete bodies."""

    def __init__(self):
        self._buf = bytearray()

    def feed(self, data: bytes) -> Iterator[bytes]:
        self._buf.extend(data)
        while True:
            if len(self._buf) < 4:
                return
            (length,) = _LEN.unpack(self._buf[:4])
            if length > MAX_MESSAGE_BYTES:
                raise ProtocolError(f"frame of {length} bytes exceeds limit")
            if len(self._buf) < 4 + length:
                return
            body = bytes(self._buf[4:4 + length])
            del self._buf[:4 + length]
            yield body


def read_message(sock: socket.socket) -> Optional[Dict[str, Any]]:
    """Blocking read of one message; None on clean EOF at a frame boundary."""
    header = _read_exact(sock, 4)
    if header is None:
        return None
    (length,) = _LEN.unpack(header)
    if length > MAX_MESSAGE_BYTES:
        raise ProtocolError(f"frame of {length} bytes exceeds limit")
    body = _read_exact(sock, length)
    if body is None:
        raise ProtocolError("connection closed mid-frame")
    return decode_body(body)


def send_message(sock: socket.socket, obj: Dict[str, Any]) -> None:
    sock.sendall(encode_message(obj))


def _read_exact(sock: socket.socket, n: int) -> Optional[bytes]:
    buf = bytearray()
    while len(buf) < n:
        chunk = sock.recv(n - len(buf))
        if not chunk:
            if buf:
                raise ProtocolError("connection closed mid-frame")
            return None
        buf.extend(chunk)
    return bytes(buf)


def hello_message(scenario_name: str, tick_rate: float) -> Dict[str, Any]:
    return {
        "type": "Hello",
        "protocol_version": PROTOCOL_VERSION,
        "scenario": scenario_name,
        "tick_rate": tick_rate,
    }


def error_message(text: str) -> Dict[str, Any]:
    return {"type": "Error", "message": text}


def log_hash(path: str) -> str:
    """sha256 of a snapshot log file."""
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()
