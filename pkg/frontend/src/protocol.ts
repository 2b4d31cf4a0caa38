// Wire types for the session websocket. Field names mirror the server's
// frame schema exactly.

export interface Pose {
  x: number;
  y: number;
  theta: number;
}

export interface KeyState {
  up: boolean;
  left: boolean;
  right: boolean;
  down: boolean;
}

export interface Frame {
  type: "frame";
  phase: "teach" | "replay";
  step: number;
  pose: Pose;
  z: [number, number, number, number];
  mode_t: number | null;
  mode_mass: number | null;
  belief_bins: number[];
  keys: KeyState;
}

export interface Ack {
  type: "ack";
  command: string;
  detail: Record<string, unknown>;
}

export interface ErrorFrame {
  type: "error";
  code: string;
  message: string;
}

export type ServerMessage = Frame | Ack | ErrorFrame;

export interface EnvironmentInfo {
  name: string;
  segments: number[][]; // [x1, y1, x2, y2] per wall
  regions: Record<string, number[]>;
  start_pose: Pose;
}

export const ZERO_KEYS: KeyState = { up: false, left: false, right: false, down: false };

export function keysMessage(keys: KeyState): string {
  return JSON.stringify({ type: "keys", keys });
}

export function commandMessage(command: "save_episode" | "start_replay" | "reset"): string {
  return JSON.stringify({ type: command });
}

export function parseServerMessage(data: string): ServerMessage {
  const msg = JSON.parse(data);
  if (msg.type === "frame" || msg.type === "ack" || msg.type === "error") {
    return msg as ServerMessage;
  }
  throw new Error(`unknown server message type: ${msg.type}`);
}
