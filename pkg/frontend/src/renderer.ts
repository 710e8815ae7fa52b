/**
 * Grid renderer over an abstract drawing surface.
 *
 * The browser binds Surface to a canvas; tests bind it to a recording
 * fake.  Frames with a tick at or below the last rendered one are
 * discarded (the server stream is authoritative and monotone); the
 * counter rearms when an episode summary arrives.
 */

import { ClientFrame, EntityKind, EpisodeSummary } from "./protocol.js";

export interface Surface {
  begin(width: number, height: number): void;
  cell(x: number, y: number, kind: EntityKind): void;
  hud(text: string): void;
  overlay(text: string): void;
  commit(): void;
}

export class GridRenderer {
  private lastTick = 0;

  constructor(private surface: Surface) {}

  /** Draw one frame; returns false when the frame is stale and skipped. */
  render(frame: ClientFrame): boolean {
    if (frame.tick <= this.lastTick) {
      return false;
    }
    this.lastTick = frame.tick;
    const s = this.surface;
    s.begin(frame.width, frame.height);
    for (let y = 0; y < frame.height; y++) {
      for (let x = 0; x < frame.width; x++) {
        s.cell(x, y, frame.cells[y * frame.width + x]);
      }
    }
    s.hud(`tick ${frame.tick}  score ${frame.scores.join(" / ")}`);
    if (frame.terminal) {
      s.overlay(`episode over - score ${frame.scores.join(" / ")}`);
    }
    s.commit();
    return true;
  }

  renderSummary(summary: EpisodeSummary): void {
    this.surface.overlay(
      `episode ${summary.episode} over - final score ${summary.scores.join(" / ")}`,
    );
    this.surface.commit();
    this.lastTick = 0; // next episode's ticks restart at 1
  }

  /** Rearm the monotonicity guard, e.g. after reconnecting: the stream may
   * have moved to a new episode whose ticks restarted while we were away. */
  resync(): void {
    this.lastTick = 0;
  }
}
