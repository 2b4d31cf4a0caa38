// Session client: owns the websocket and fans frames out to the views.
// The client never mutates simulation state except through protocol
// commands.

import { Frame, KeyState, ServerMessage, commandMessage, keysMessage, parseServerMessage } from "./protocol";

type MinimalSocket = Pick<WebSocket, "send" | "close"> & {
  onmessage: ((ev: { data: string }) => void) | null;
  onclose: ((ev: unknown) => void) | null;
  onerror: ((ev: unknown) => void) | null;
};

export interface SessionEvents {
  onFrame(frame: Frame): void;
  onAck(command: string, detail: Record<string, unknown>): void;
  onError(code: string, message: string): void;
  onDisconnect(): void;
}

export class SessionClient {
  private socket: MinimalSocket;
  private readonly events: SessionEvents;

  constructor(socket: MinimalSocket, events: SessionEvents) {
    this.socket = socket;
    this.events = events;
    socket.onmessage = (ev) => this.dispatch(ev.data);
    socket.onclose = () => this.events.onDisconnect();
    socket.onerror = () => this.events.onDisconnect();
  }

  dispatch(data: string): void {
    let msg: ServerMessage;
    try {
      msg = parseServerMessage(data);
    } catch {
      return; // tolerate unknown frames from newer servers
    }
    if (msg.type === "frame") this.events.onFrame(msg);
    else if (msg.type === "ack") this.events.onAck(msg.command, msg.detail);
    else this.events.onError(msg.code, msg.message);
  }

  sendKeys(keys: KeyState): void {
    this.socket.send(keysMessage(keys));
  }

  saveEpisode(): void {
    this.socket.send(commandMessage("save_episode"));
  }

  startReplay(): void {
    this.socket.send(commandMessage("start_replay"));
  }

  reset(): void {
    this.socket.send(commandMessage("reset"));
  }
}

export function sessionUrl(base: string, params: Record<string, string | number>): string {
  const query = Object.entries(params)
    .map(([k, v]) => `${encodeURIComponent(k)}=${encodeURIComponent(String(v))}`)
    .join("&");
  return `${base.replace(/^http/, "ws")}/ws/session${query ? "?" + query : ""}`;
}
