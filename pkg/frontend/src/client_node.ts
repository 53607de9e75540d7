import net from "node:net";
import { ClientHandlers, SessionClient } from "./client.js";

// node-side connector (used by the tests and any headless tooling); the
// browser path goes through the WebSocket bridge instead.

export interface TcpConnection {
  client: SessionClient;
  socket: net.Socket;
  close(): void;
}

export function connectTcp(host: string, port: number, handlers: ClientHandlers): Promise<TcpConnection> {
  return new Promise((resolve, reject) => {
    const client = new SessionClient(handlers);
    const socket = net.connect({ host, port });
    socket.on("connect", () => {
      client.attach((bytes) => socket.write(bytes));
      resolve({ client, socket, close: () => socket.destroy() });
    });
    socket.on("data", (chunk) => client.feed(new Uint8Array(chunk)));
    socket.on("error", (err) => {
      if (socket.connecting) reject(err);
    });
    socket.on("close", () => client.transportClosed());
  });
}
