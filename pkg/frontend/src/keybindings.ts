/**
 * Keyboard bindings: a total map from keys to the six tank actions.
 *
 * Every action keeps at least one key and no key serves two actions.
 * Bindings persist through an injected storage (localStorage in the
 * browser) under one JSON document.
 */

export const ACTIONS = {
  up: 0,
  down: 1,
  left: 2,
  right: 3,
  fire: 4,
  noop: 5,
} as const;

export const ACTION_COUNT = 6;

export const DEFAULT_BINDINGS: Record<string, number> = {
  ArrowUp: ACTIONS.up,
  ArrowDown: ACTIONS.down,
  ArrowLeft: ACTIONS.left,
  ArrowRight: ACTIONS.right,
  " ": ACTIONS.fire,
  n: ACTIONS.noop,
};

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

const STORAGE_KEY = "webconsole.bindings";

export class KeyBindings {
  private byKey: Map<string, number>;

  constructor(initial: Record<string, number> = DEFAULT_BINDINGS) {
    this.byKey = new Map(Object.entries(initial));
    this.assertTotal();
  }

  private assertTotal(): void {
    const covered = new Set(this.byKey.values());
    for (let action = 0; action < ACTION_COUNT; action++) {
      if (!covered.has(action)) {
        throw new Error(`action ${action} has no key bound`);
      }
    }
  }

  actionFor(key: string): number | undefined {
    return this.byKey.get(key);
  }

  entries(): [string, number][] {
    return [...this.byKey.entries()];
  }

  /**
   * Bind key to action.  The key's previous binding is released; the
   * rebind is rejected when it would leave the old action keyless.
   */
  rebind(key: string, action: number): void {
    if (!Number.isInteger(action) || action < 0 || action >= ACTION_COUNT) {
      throw new Error(`unknown action ${action}`);
    }
    const previous = this.byKey.get(key);
    if (previous === action) return;
    if (previous !== undefined) {
      let survivors = 0;
      for (const [k, a] of this.byKey) {
        if (a === previous && k !== key) survivors++;
      }
      if (survivors === 0) {
        throw new Error(`rebinding ${key} would leave action ${previous} keyless`);
      }
    }
    this.byKey.set(key, action);
    this.assertTotal();
  }

  save(storage: StorageLike): void {
    storage.setItem(STORAGE_KEY, JSON.stringify(Object.fromEntries(this.byKey)));
  }

  static load(storage: StorageLike): KeyBindings {
    const text = storage.getItem(STORAGE_KEY);
    if (text === null) return new KeyBindings();
    try {
      const parsed = JSON.parse(text) as Record<string, number>;
      return new KeyBindings(parsed);
    } catch {
      return new KeyBindings();
    }
  }
}
