"""TCP session server.

One thread advances the session at the scenario's tick rate and broadcasts
each snapshot to every connected client. Reader threads parse incoming
frames into commands and hand them to the tick thread through a queue, so
the session itself stays single-threaded. Multiple viewers are fine;
commands apply in arrival order, so the last writer wins within a tick.

On connect a client immediately receives a Hello message and, if the
session has ticked at least once, the latest full snapshot. Malformed
messages get an Error reply and are otherwise ignored.
"""

from __future__ import annotations

import queue
import socket
import threading
import time
from typing import List, Optional, Tuple

from .protocol import (
    ProtocolError,
    encode_message,
    error_message,
    hello_message,
    read_message,
)
from .session import CommandError, Session, validate_command


class BindFailure(Exception):
    pass


class _Client:
    def __init__(self, sock: socket.socket, addr):
        self.sock = sock
        self.addr = addr
        self.lock = threading.Lock()  # serialize writes per client
        self.alive = True

    def send(self, data: bytes) -> bool:
        with self.lock:
            if not self.alive:
                return False
            try:
                self.sock.sendall(data)
                return True
            except OSError:
                self.alive = False
                return False

    def close(self):
        self.alive = False
        try:
            self.sock.shutdown(socket.SHUT_RDWR)
        except OSError:
            pass
        try:
            self.sock.close()
        except OSError:
            pass


class SessionServer:
    def __init__(self, session: Session, bind_address: str):
        self.session = session
        host, port = parse_bind_address(bind_address)
        self._listener = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        self._listener.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        try:
            self._listener.bind((host, port))
        except OSError as e:
            self._listener.close()
            raise BindFailure(f"cannot bind {bind_address!r}: {e}") from e
        self._listener.listen(8)
        self.address: Tuple[str, int] = self._listener.getsockname()[:2]
        self._commands: "queue.Queue" = queue.Queue()
        self._clients: List[_Client] = []
        self._clients_lock = threading.Lock()
        self._stop = threading.Event()
        self._threads: List[threading.Thread] = []

    # ------------------------------------------------------------------

    def start(self) -> None:
        t_accept = threading.Thread(target=self._accept_loop, name="accept", daemon=True)
        t_tick = threading.Thread(target=self._tick_loop, name="tick", daemon=True)
        self._threads = [t_accept, t_tick]
        for t in self._threads:
            t.start()

    def run_forever(self) -> None:
        self.start()
        try:
            while not self._stop.is_set():
                time.sleep(0.2)
        except KeyboardInterrupt:
            pass
        finally:
            self.stop()

    def stop(self) -> None:
        self._stop.set()
        try:
            self._listener.close()
        except OSError:
            pass
        with self._clients_lock:
            clients = list(self._clients)
        for c in clients:
            c.close()
        for t in self._threads:
            t.join(timeout=2.0)

    # ------------------------------------------------------------------

    def _accept_loop(self) -> None:
        while not self._stop.is_set():
            try:
                sock, addr = self._listener.accept()
            except OSError:
                return  # listener closed
            sock.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
            client = _Client(sock, addr)
            greeting = encode_message(
                hello_message(self.session.scenario.name, self.session.scenario.tick_rate)
            )
            snap = self.session.last_snapshot
            payload = greeting if snap is None else greeting + encode_message(snap.to_wire())
            if not client.send(payload):
                client.close()
                continue
            with self._clients_lock:
                self._clients.append(client)
            t = threading.Thread(
                target=self._reader_loop, args=(client,), name=f"client-{addr}", daemon=True
            )
            t.start()

    def _reader_loop(self, client: _Client) -> None:
        while not self._stop.is_set() and client.alive:
            try:
                msg = read_message(client.sock)
            except (ProtocolError, OSError) as e:
                if isinstance(e, ProtocolError):
                    client.send(encode_message(error_message(str(e))))
                break
            if msg is None:
                break  # client hung up
            if msg.get("type") != "Command":
                client.send(encode_message(error_message(
                    f"unexpected message type {msg.get('type')!r}"
                )))
                continue
            try:
                cmd = validate_command(msg)
            except CommandError as e:
                client.send(encode_message(error_message(str(e))))
                continue
            self._commands.put(cmd)
        self._drop(client)

    def _tick_loop(self) -> None:
        period = 1.0 / self.session.scenario.tick_rate
        next_deadline = time.monotonic()
        while not self._stop.is_set():
            # transfer queued commands to the session in arrival order
            while True:
                try:
                    cmd = self._commands.get_nowait()
                except queue.Empty:
                    break
                self.session.queue_command(cmd)
            snapshot = self.session.run_tick()
            data = encode_message(snapshot.to_wire())
            with self._clients_lock:
                clients = list(self._clients)
            for c in clients:
                if not c.send(data):
                    self._drop(c)
            next_deadline += period
            delay = next_deadline - time.monotonic()
            if delay > 0:
                self._stop.wait(delay)
            else:
                next_deadline = time.monotonic()  # fell behind; do not bunch ticks

    def _drop(self, client: _Client) -> None:
        client.close()
        with self._clients_lock:
            if client in self._clients:
                self._clients.remove(client)


def parse_bind_address(addr: str) -> Tuple[str, int]:
    """Parse 'host:port' (host may be empty for all interfaces)."""
    if ":" not in addr:
        raise BindFailure(f"bind address {addr!r} must look like host:port")
    host, _, port_s = addr.rpartition(":")
    try:
        port = int(port_s)
    except ValueError as e:
        raise BindFailure(f"bad port in bind address {addr!r}") from e
    if not (0 <= port <= 65535):
        raise BindFailure(f"port {port} out of range")
    return host or "0.0.0.0", port


def serve(session: Session, bind_address: str) -> SessionServer:
    """Bind and start a server; returns the running handle."""
    server = SessionServer(session, bind_address)
    server.start()
    return server
