/** SVG board renderer with click-to-place and the jump builder overlay. */

import type { ServedJump, ServedState, WitnessInfo } from "./api.js";
import { JumpBuilder, coordName, pointOf, stonesOf } from "./model.js";

const CELL = 34;
const MARGIN = 30;

export interface BoardCallbacks {
  onPlace(coord: string): void;
  onBallSelected(): void;
}

export class BoardView {
  private svg: SVGSVGElement;
  private threat: WitnessInfo | null = null;
  private builder: JumpBuilder | null = null;

  constructor(
    private host: HTMLElement,
    private callbacks: BoardCallbacks,
  ) {
    this.svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.host.appendChild(this.svg);
  }

  setThreat(witness: WitnessInfo | null): void {
    this.threat = witness;
  }

  setBuilder(builder: JumpBuilder | null): void {
    this.builder = builder;
  }

  private x(col: number): number {
    return MARGIN + (col - 1) * CELL;
  }

  private y(state: ServedState, row: number): number {
    return MARGIN + (state.rows - row) * CELL; // row 1 at the bottom
  }

  render(state: ServedState): void {
    const svg = this.svg;
    svg.innerHTML = "";
    svg.setAttribute("width", String(MARGIN * 2 + (state.cols - 1) * CELL));
    svg.setAttribute("height", String(MARGIN * 2 + (state.rows - 1) * CELL));

    const ns = "http://www.w3.org/2000/svg";
    const add = <K extends keyof SVGElementTagNameMap>(
      tag: K,
      attrs: Record<string, string>,
    ): SVGElementTagNameMap[K] => {
      const el = document.createElementNS(ns, tag);
      for (const [key, value] of Object.entries(attrs)) {
        el.setAttribute(key, value);
      }
      svg.appendChild(el);
      return el;
    };

    for (let col = 1; col <= state.cols; col += 1) {
      add("line", {
        x1: String(this.x(col)),
        y1: String(this.y(state, 1)),
        x2: String(this.x(col)),
        y2: String(this.y(state, state.rows)),
        class: "grid",
      });
      for (const row of [0, state.rows + 1]) {
        const label = add("text", {
          x: String(this.x(col)),
          y: String(this.y(state, row)),
          class: "label",
        });
        label.textContent = coordName({ col, row: 1 })[0] ?? "";
      }
    }
    for (let row = 1; row <= state.rows; row += 1) {
      add("line", {
        x1: String(this.x(1)),
        y1: String(this.y(state, row)),
        x2: String(this.x(state.cols)),
        y2: String(this.y(state, row)),
        class: "grid",
      });
      for (const col of [0, state.cols + 1]) {
        const label = add("text", {
          x: String(this.x(col)),
          y: String(this.y(state, row) + 4),
          class: "label",
        });
        label.textContent = String(row);
      }
    }

    // Threat overlay: the attacking route drawn beneath the stones.
    if (this.threat) {
      const squares = this.threat.route.filter((r) => !r.startsWith("exit-"));
      const points = squares
        .map(pointOf)
        .map((p) => `${this.x(p.col)},${this.y(state, p.row)}`)
        .join(" ");
      add("polyline", { points, class: "threat" });
    }

    // Builder route: segments chosen so far.
    if (this.builder && this.builder.prefix.length > 0) {
      const squares = this.builder.routeSoFar().filter((r) => !r.startsWith("exit-"));
      const points = squares
        .map(pointOf)
        .map((p) => `${this.x(p.col)},${this.y(state, p.row)}`)
        .join(" ");
      add("polyline", { points, class: "building" });
    }

    const occupied = new Set<string>();
    for (const stone of stonesOf(state)) {
      occupied.add(stone.coord);
      const point = pointOf(stone.coord);
      add("circle", {
        cx: String(this.x(point.col)),
        cy: String(this.y(state, point.row)),
        r: "13",
        class: stone.kind === "ball" ? "ball" : "chap",
      });
    }

    // Click targets on every vacant point; the ball is selectable.
    for (let col = 1; col <= state.cols; col += 1) {
      for (let row = 1; row <= state.rows; row += 1) {
        const coord = coordName({ col, row });
        const target = add("circle", {
          cx: String(this.x(col)),
          cy: String(this.y(state, row)),
          r: "14",
          class: "target",
        });
        if (coord === state.ball) {
          target.addEventListener("click", () => this.callbacks.onBallSelected());
        } else if (!occupied.has(coord)) {
          target.addEventListener("click", () => this.callbacks.onPlace(coord));
        }
      }
    }
  }
}

/** Direction picker for the jump builder. */
export function renderDirectionButtons(
  host: HTMLElement,
  builder: JumpBuilder,
  onSegment: (direction: string) => void,
  onStop: () => void,
  onAbort: () => void,
): void {
  host.innerHTML = "";
  const options =
    builder.prefix.length === 0 ? builder.firstSegments() : builder.continuations();
  for (const direction of options) {
    const button = document.createElement("button");
    button.textContent = direction;
    button.addEventListener("click", () => onSegment(direction));
    host.appendChild(button);
  }
  if (builder.canStop()) {
    const stop = document.createElement("button");
    stop.textContent = builder.mustStop() ? "finish (exit)" : "stop here";
    stop.className = "stop";
    stop.addEventListener("click", onStop);
    host.appendChild(stop);
  }
  const abort = document.createElement("button");
  abort.textContent = "cancel";
  abort.addEventListener("click", onAbort);
  host.appendChild(abort);
}
