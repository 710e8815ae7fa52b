/**
 * Browser entry point: binds the session to a real WebSocket, the
 * renderer to a canvas, and the keyboard to the bindings panel.
 */

import { KeyBindings } from "./keybindings.js";
import { EntityKind } from "./protocol.js";
import { GridRenderer, Surface } from "./renderer.js";
import { Session, Transport } from "./session.js";

const COLORS: Record<EntityKind, string> = {
  "empty": "#101418",
  "friendly": "#4caf50",
  "human": "#2196f3",
  "enemy": "#f44336",
  "bullet-trace": "#ffd54f",
};

const CELL = 36;

class CanvasSurface implements Surface {
  private ctx: CanvasRenderingContext2D;

  constructor(private canvas: HTMLCanvasElement, private hudEl: HTMLElement,
              private overlayEl: HTMLElement) {
    this.ctx = canvas.getContext("2d")!;
  }

  begin(width: number, height: number): void {
    this.canvas.width = width * CELL;
    this.canvas.height = height * CELL;
    this.overlayEl.style.display = "none";
    this.ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
  }

  cell(x: number, y: number, kind: EntityKind): void {
    this.ctx.fillStyle = COLORS[kind];
    this.ctx.fillRect(x * CELL + 1, y * CELL + 1, CELL - 2, CELL - 2);
  }

  hud(text: string): void {
    this.hudEl.textContent = text;
  }

  overlay(text: string): void {
    this.overlayEl.textContent = text;
    this.overlayEl.style.display = "block";
  }

  commit(): void {}
}

function webSocketTransport(url: string): Transport {
  const socket = new WebSocket(url);
  return {
    send: (text) => socket.send(text),
    close: () => socket.close(),
    onMessage: (h) => socket.addEventListener("message", (e) => h(String(e.data))),
    onOpen: (h) => socket.addEventListener("open", () => h()),
    onClose: (h) => socket.addEventListener("close", () => h()),
  };
}

export function boot(): void {
  const params = new URLSearchParams(location.search);
  const server = params.get("server") ?? `ws://${location.hostname || "localhost"}:8765`;
  const slot = Number(params.get("slot") ?? "0");

  const canvas = document.getElementById("grid") as HTMLCanvasElement;
  const hud = document.getElementById("hud")!;
  const overlay = document.getElementById("overlay")!;
  const banner = document.getElementById("banner")!;

  const bindings = KeyBindings.load(localStorage);
  const renderer = new GridRenderer(new CanvasSurface(canvas, hud, overlay));

  // frames can outpace the display: keep only the newest until the next paint
  let latest: Parameters<GridRenderer["render"]>[0] | null = null;
  let scheduled = false;
  const paint = () => {
    scheduled = false;
    if (latest) {
      renderer.render(latest);
      latest = null;
    }
  };

  const session = new Session({
    url: server,
    slot,
    factory: webSocketTransport,
    bindings,
    onFrame: (frame) => {
      latest = frame;
      if (!scheduled) {
        scheduled = true;
        requestAnimationFrame(paint);
      }
    },
    onSummary: (summary) => renderer.renderSummary(summary),
    onStatus: (status) => {
      if (status.state === "open") {
        banner.style.display = "none";
        renderer.resync();
      } else {
        banner.textContent =
          status.state === "connecting"
            ? "connecting..."
            : `disconnected - retrying in ${Math.round(status.inMs / 1000)}s`;
        banner.style.display = "block";
      }
    },
    onProtocolError: (err) => console.warn("dropped malformed frame:", err.message),
  });

  document.addEventListener("keydown", (event) => {
    if (bindings.actionFor(event.key) !== undefined) {
      event.preventDefault();
      session.handleKey(event.key);
    }
  });

  // minimal rebinding panel: click an action label, press the new key
  for (const el of document.querySelectorAll<HTMLElement>("[data-action]")) {
    el.addEventListener("click", () => {
      el.classList.add("waiting");
      const once = (event: KeyboardEvent) => {
        event.preventDefault();
        try {
          bindings.rebind(event.key, Number(el.dataset.action));
          bindings.save(localStorage);
          el.textContent = `${el.dataset.label}: ${event.key}`;
        } catch (err) {
          console.warn(err);
        }
        el.classList.remove("waiting");
        document.removeEventListener("keydown", once, true);
      };
      document.addEventListener("keydown", once, true);
    });
  }

  session.connect();
}

boot();
