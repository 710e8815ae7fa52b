/**
 * Wire protocol: decoding server frames and encoding client actions.
 *
 * Messages are JSON objects {id, kind, method, payload}; floats travel as
 * decimal strings with 17 significant digits.  Decoding is lossless: the
 * raw numeric strings are kept alongside parsed numbers so that
 * encodeServerMessage(decodeServerMessage(text)) reproduces the exact
 * input bytes.  The server is authoritative; no game rules live here.
 */

export type EntityKind = "empty" | "friendly" | "human" | "enemy" | "bullet-trace";

export interface ClientFrame {
  tick: number;
  width: number;
  height: number;
  /** row-major entity classification, length width * height */
  cells: EntityKind[];
  /** cumulative score per objective, parsed */
  scores: number[];
  terminal: boolean;
  /** raw payload pieces preserved for lossless re-encoding */
  raw: {
    cells: number[];
    traces: number[][];
    agents: (number[] | null)[];
    humanAgents: number[];
    scoreStrings: string[];
  };
}

export interface EpisodeSummary {
  tick: number;
  scores: number[];
  episode: number;
  raw: { scoreStrings: string[] };
}

export type ServerMessage =
  | { type: "frame"; frame: ClientFrame }
  | { type: "summary"; summary: EpisodeSummary };

export class ProtocolError extends Error {}

export function decodeF64(text: unknown): number {
  if (typeof text !== "string") {
    throw new ProtocolError(`bad float field ${JSON.stringify(text)}`);
  }
  const value = Number(text);
  if (!Number.isFinite(value)) {
    throw new ProtocolError(`non-finite float ${text}`);
  }
  return value;
}

export function encodeF64(value: number): string {
  if (!Number.isFinite(value)) {
    throw new ProtocolError(`cannot encode non-finite float ${value}`);
  }
  // 17 significant digits round-trips every finite IEEE-754 double
  let text = value.toPrecision(17);
  if (text.includes(".") && !text.includes("e") && !text.includes("E")) {
    text = text.replace(/0+$/, "").replace(/\.$/, "");
  }
  return text;
}

function expectInt(value: unknown, what: string): number {
  if (typeof value !== "number" || !Number.isInteger(value)) {
    throw new ProtocolError(`${what} must be an integer`);
  }
  return value;
}

function classifyCells(raw: ClientFrame["raw"], width: number, height: number): EntityKind[] {
  const kinds: EntityKind[] = raw.cells.map((code) => {
    if (code === 0) return "empty";
    if (code === 1) return "friendly";
    if (code === 2) return "enemy";
    throw new ProtocolError(`unknown cell code ${code}`);
  });
  for (const index of raw.humanAgents) {
    const pos = raw.agents[index];
    if (pos) {
      kinds[pos[1] * width + pos[0]] = "human";
    }
  }
  for (const [x, y] of raw.traces) {
    const at = y * width + x;
    if (kinds[at] === "empty") {
      kinds[at] = "bullet-trace";
    }
  }
  return kinds;
}

export function decodeServerMessage(text: string): ServerMessage {
  let root: unknown;
  try {
    root = JSON.parse(text);
  } catch (err) {
    throw new ProtocolError(`not valid JSON: ${err}`);
  }
  if (typeof root !== "object" || root === null || Array.isArray(root)) {
    throw new ProtocolError("message must be a JSON object");
  }
  const frame = root as Record<string, unknown>;
  if (frame.kind !== "notify") {
    throw new ProtocolError(`unexpected kind ${JSON.stringify(frame.kind)}`);
  }
  const payload = frame.payload;
  if (typeof payload !== "object" || payload === null) {
    throw new ProtocolError("payload must be an object");
  }
  const body = payload as Record<string, unknown>;

  if (frame.method === "summary") {
    const scoreStrings = asStringArray(body.scores, "scores");
    return {
      type: "summary",
      summary: {
        tick: expectInt(body.tick, "tick"),
        scores: scoreStrings.map(decodeF64),
        episode: expectInt(body.episode, "episode"),
        raw: { scoreStrings },
      },
    };
  }
  if (frame.method !== "frame") {
    throw new ProtocolError(`unexpected method ${JSON.stringify(frame.method)}`);
  }

  const grid = body.grid;
  if (typeof grid !== "object" || grid === null) {
    throw new ProtocolError("frame without grid payload");
  }
  const g = grid as Record<string, unknown>;
  const width = expectInt(g.width, "grid.width");
  const height = expectInt(g.height, "grid.height");
  const cells = asIntArray(g.cells, "grid.cells");
  if (cells.length !== width * height) {
    throw new ProtocolError(`grid.cells length ${cells.length} != ${width * height}`);
  }
  const raw: ClientFrame["raw"] = {
    cells,
    traces: asPairArray(g.traces, "grid.traces"),
    agents: asAgentArray(g.agents, "grid.agents"),
    humanAgents: asIntArray(g.human_agents ?? [], "grid.human_agents"),
    scoreStrings: asStringArray(body.scores, "scores"),
  };
  return {
    type: "frame",
    frame: {
      tick: expectInt(body.tick, "tick"),
      width,
      height,
      cells: classifyCells(raw, width, height),
      scores: raw.scoreStrings.map(decodeF64),
      terminal: body.terminal === true,
      raw,
    },
  };
}

/** Re-encode a decoded message into the server's exact byte layout. */
export function encodeServerMessage(message: ServerMessage): string {
  if (message.type === "summary") {
    const s = message.summary;
    return JSON.stringify({
      id: 0,
      kind: "notify",
      method: "summary",
      payload: { tick: s.tick, scores: s.raw.scoreStrings, episode: s.episode },
    });
  }
  const f = message.frame;
  return JSON.stringify({
    id: 0,
    kind: "notify",
    method: "frame",
    payload: {
      tick: f.tick,
      grid: {
        width: f.width,
        height: f.height,
        cells: f.raw.cells,
        traces: f.raw.traces,
        agents: f.raw.agents,
        human_agents: f.raw.humanAgents,
      },
      scores: f.raw.scoreStrings,
      terminal: f.terminal,
    },
  });
}

export function encodeActionMessage(slot: number, action: number): string {
  return JSON.stringify({
    id: 0,
    kind: "notify",
    method: "action",
    payload: { slot, action },
  });
}

function asIntArray(value: unknown, what: string): number[] {
  if (!Array.isArray(value)) throw new ProtocolError(`${what} must be an array`);
  return value.map((v) => expectInt(v, what));
}

function asStringArray(value: unknown, what: string): string[] {
  if (!Array.isArray(value)) throw new ProtocolError(`${what} must be an array`);
  return value.map((v) => {
    if (typeof v !== "string") throw new ProtocolError(`${what} entries must be strings`);
    return v;
  });
}

function asPairArray(value: unknown, what: string): number[][] {
  if (!Array.isArray(value)) throw new ProtocolError(`${what} must be an array`);
  return value.map((v) => {
    if (!Array.isArray(v) || v.length !== 2) {
      throw new ProtocolError(`${what} entries must be [x, y]`);
    }
    return [expectInt(v[0], what), expectInt(v[1], what)];
  });
}

function asAgentArray(value: unknown, what: string): (number[] | null)[] {
  if (!Array.isArray(value)) throw new ProtocolError(`${what} must be an array`);
  return value.map((v) => {
    if (v === null) return null;
    if (!Array.isArray(v) || v.length !== 2) {
      throw new ProtocolError(`${what} entries must be [x, y] or null`);
    }
    return [expectInt(v[0], what), expectInt(v[1], what)];
  });
}
