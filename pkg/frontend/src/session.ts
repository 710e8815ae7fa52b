/**
 * Session: one connection to the play server for one owned slot.
 *
 * The transport is injected so the browser uses WebSocket while tests use
 * an in-process loopback.  Connection drops show a status banner and
 * trigger auto-retry with exponential backoff; rendering resumes at the
 * current server tick after reconnecting (the server never replays
 * history).
 *
 * Key events are sent immediately; within one tick window later commands
 * replace the pending one and are flushed when the next frame arrives,
 * so at most one command per tick window is in flight (latest wins,
 * mirroring the server's last-writer-wins).  The session only ever tags
 * its own slot.
 */

import { KeyBindings } from "./keybindings.js";
import {
  ClientFrame,
  EpisodeSummary,
  ProtocolError,
  decodeServerMessage,
  encodeActionMessage,
} from "./protocol.js";

export interface Transport {
  send(text: string): void;
  close(): void;
  onMessage(handler: (text: string) => void): void;
  onOpen(handler: () => void): void;
  onClose(handler: () => void): void;
}

export type TransportFactory = (url: string) => Transport;

export type Status =
  | { state: "connecting" }
  | { state: "open" }
  | { state: "retrying"; inMs: number };

export interface SessionOptions {
  url: string;
  slot: number;
  factory: TransportFactory;
  bindings: KeyBindings;
  onFrame?: (frame: ClientFrame) => void;
  onSummary?: (summary: EpisodeSummary) => void;
  onStatus?: (status: Status) => void;
  onProtocolError?: (error: ProtocolError) => void;
  retryBaseMs?: number;
  retryMaxMs?: number;
}

export class Session {
  readonly slot: number;
  sentFrames: string[] = [];

  private readonly opts: SessionOptions;
  private transport: Transport | null = null;
  private open = false;
  private disposed = false;
  private retryMs: number;
  private currentTick = 0;
  private lastSentTick = -1;
  private pendingAction: number | null = null;
  private retryTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(opts: SessionOptions) {
    this.opts = opts;
    this.slot = opts.slot;
    this.retryMs = opts.retryBaseMs ?? 500;
  }

  connect(): void {
    if (this.disposed) return;
    this.opts.onStatus?.({ state: "connecting" });
    const transport = this.opts.factory(this.opts.url);
    this.transport = transport;
    transport.onOpen(() => {
      this.open = true;
      this.retryMs = this.opts.retryBaseMs ?? 500;
      // the server may be in a different episode now: rearm the tick window
      this.currentTick = 0;
      this.lastSentTick = -1;
      this.pendingAction = null;
      this.opts.onStatus?.({ state: "open" });
    });
    transport.onMessage((text) => this.handleMessage(text));
    transport.onClose(() => {
      this.open = false;
      if (this.disposed) return;
      const wait = this.retryMs;
      this.retryMs = Math.min(this.retryMs * 2, this.opts.retryMaxMs ?? 8000);
      this.opts.onStatus?.({ state: "retrying", inMs: wait });
      this.retryTimer = setTimeout(() => this.connect(), wait);
    });
  }

  dispose(): void {
    this.disposed = true;
    if (this.retryTimer !== null) clearTimeout(this.retryTimer);
    this.transport?.close();
  }

  get isOpen(): boolean {
    return this.open;
  }

  private handleMessage(text: string): void {
    let message;
    try {
      message = decodeServerMessage(text);
    } catch (err) {
      if (err instanceof ProtocolError) {
        this.opts.onProtocolError?.(err);
        return; // malformed frames are logged and skipped
      }
      throw err;
    }
    if (message.type === "frame") {
      if (message.frame.tick > this.currentTick) {
        this.currentTick = message.frame.tick;
        this.flushPending();
      }
      this.opts.onFrame?.(message.frame);
    } else {
      this.currentTick = 0; // ticks restart every episode
      this.lastSentTick = -1;
      this.opts.onSummary?.(message.summary);
    }
  }

  private flushPending(): void {
    if (this.pendingAction !== null && this.open) {
      this.sendNow(this.pendingAction);
      this.pendingAction = null;
    }
  }

  private sendNow(action: number): void {
    const text = encodeActionMessage(this.slot, action);
    this.transport!.send(text);
    this.sentFrames.push(text);
    if (this.sentFrames.length > 256) {
      this.sentFrames.shift(); // bounded: diagnostics only
    }
    this.lastSentTick = this.currentTick;
  }

  /** Route a key press; unbound keys and closed sessions drop silently. */
  handleKey(key: string): void {
    const action = this.opts.bindings.actionFor(key);
    if (action === undefined || !this.open) return;
    this.sendAction(action);
  }

  sendAction(action: number): void {
    if (!this.open) return;
    if (this.lastSentTick < this.currentTick) {
      this.sendNow(action);
    } else {
      this.pendingAction = action; // latest wins within the tick window
    }
  }
}
