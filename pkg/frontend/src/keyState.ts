// Latest-wins key-state tracking, mirroring a held game-controller key:
// the tracked object always holds the keys currently down, and a message
// is emitted only when that state actually changes.

import { KeyState, ZERO_KEYS } from "./protocol";

const KEY_MAP: Record<string, keyof KeyState> = {
  ArrowUp: "up",
  ArrowLeft: "left",
  ArrowRight: "right",
  ArrowDown: "down",
};

export class KeyStateTracker {
  state: KeyState = { ...ZERO_KEYS };
  private readonly onChange: (state: KeyState) => void;

  constructor(onChange: (state: KeyState) => void) {
    this.onChange = onChange;
  }

  /** Handle one key transition; returns true when the key was relevant. */
  handle(key: string, down: boolean): boolean {
    const field = KEY_MAP[key];
    if (field === undefined) return false;
    if (this.state[field] === down) return true; // key repeat: no re-send
    this.state = { ...this.state, [field]: down };
    this.onChange(this.state);
    return true;
  }

  /** Release everything (window blur, phase change). */
  releaseAll(): void {
    if (this.state.up || this.state.left || this.state.right || this.state.down) {
      this.state = { ...ZERO_KEYS };
      this.onChange(this.state);
    }
  }

  attach(target: Pick<Window, "addEventListener">): void {
    target.addEventListener("keydown", (e) => {
      if (this.handle((e as KeyboardEvent).key, true)) e.preventDefault();
    });
    target.addEventListener("keyup", (e) => {
      if (this.handle((e as KeyboardEvent).key, false)) e.preventDefault();
    });
    target.addEventListener("blur", () => this.releaseAll());
  }
}
