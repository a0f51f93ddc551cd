/** Pure view-model logic: stones, grid math, and the jump builder.
 *
 * No rules live here. Everything the board may do comes from the served
 * move list, so illegal interactions are unreachable by construction.
 */

import type { MoveListPayload, ServedJump, ServedState } from "./api.js";

const COLUMNS = "abcdefghijklmnopqrstuvwxyz";

export interface GridPoint {
  col: number; // 1-based, a = 1
  row: number; // 1-based, bottom = 1
}

export function pointOf(coord: string): GridPoint {
  const col = COLUMNS.indexOf(coord[0] ?? "") + 1;
  const row = Number.parseInt(coord.slice(1), 10);
  if (col < 1 || !Number.isFinite(row) || row < 1) {
    throw new Error(`bad coordinate ${coord}`);
  }
  return { col, row };
}

export function coordName(point: GridPoint): string {
  return `${COLUMNS[point.col - 1]}${point.row}`;
}

export interface Stone {
  coord: string;
  kind: "ball" | "chap";
}

/** All stones of a served state; chaps sorted, the ball last. */
export function stonesOf(state: ServedState): Stone[] {
  const stones: Stone[] = state.chaps
    .slice()
    .sort()
    .map((coord) => ({ coord, kind: "chap" as const }));
  stones.push({ coord: state.ball, kind: "ball" });
  return stones;
}

export function stoneSet(state: ServedState): Set<string> {
  return new Set([...state.chaps, `ball:${state.ball}`]);
}

export function sameStones(a: ServedState, b: ServedState): boolean {
  if (a.ball !== b.ball || a.chaps.length !== b.chaps.length) {
    return false;
  }
  const theirs = new Set(b.chaps);
  return a.chaps.every((coord) => theirs.has(coord));
}

/** Badge text for the annotation of a prospective move, if any. */
export function annotationBadge(
  moves: MoveListPayload,
  moveText: string,
): string | null {
  for (const placement of moves.placements) {
    if (placement.at === moveText) {
      return placement.annotation ?? null;
    }
  }
  for (const jump of moves.jumps) {
    if (jump.path === moveText) {
      return jump.annotation ?? null;
    }
  }
  return null;
}

function tokens(path: string): string[] {
  return path.split(",");
}

function startsWith(path: string[], prefix: string[]): boolean {
  return prefix.length <= path.length && prefix.every((t, i) => path[i] === t);
}

/**
 * Segment-wise jump construction restricted to the served jump list.
 *
 * The builder walks the prefix tree of legal jump paths: at every point
 * only directions that extend some served jump are offered, and stopping
 * is offered exactly when the current prefix is itself a served jump.
 */
export class JumpBuilder {
  readonly prefix: string[] = [];

  constructor(readonly jumps: ServedJump[]) {}

  private matching(prefix: string[]): ServedJump[] {
    return this.jumps.filter((jump) => startsWith(tokens(jump.path), prefix));
  }

  /** Directions legal as the very first segment. */
  firstSegments(): string[] {
    return this.continuationsOf([]);
  }

  private continuationsOf(prefix: string[]): string[] {
    const next = new Set<string>();
    for (const jump of this.matching(prefix)) {
      const path = tokens(jump.path);
      if (path.length > prefix.length) {
        next.add(path[prefix.length]!);
      }
    }
    return [...next].sort();
  }

  /** Directions legal as the next segment of the current prefix. */
  continuations(): string[] {
    return this.continuationsOf(this.prefix);
  }

  /** The served jump equal to the current prefix, if any. */
  current(): ServedJump | null {
    const text = this.moveText();
    return this.jumps.find((jump) => jump.path === text) ?? null;
  }

  /** Stopping here submits a legal jump (true for exits as well). */
  canStop(): boolean {
    return this.prefix.length > 0 && this.current() !== null;
  }

  /** An exit ends the jump; no continuation exists past it. */
  mustStop(): boolean {
    const current = this.current();
    return current !== null && current.exit !== null;
  }

  extend(direction: string): void {
    if (!this.continuations().includes(direction)) {
      throw new Error(`illegal continuation ${direction}`);
    }
    this.prefix.push(direction);
  }

  undoSegment(): void {
    this.prefix.pop();
  }

  reset(): void {
    this.prefix.length = 0;
  }

  moveText(): string {
    return this.prefix.join(",");
  }

  /** Squares visited so far (start, then one landing per segment). */
  routeSoFar(): string[] {
    const witnesses = this.matching(this.prefix);
    if (witnesses.length === 0) {
      return [];
    }
    return witnesses[0]!.route.slice(0, this.prefix.length + 1);
  }
}
