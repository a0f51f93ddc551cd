/** Script replay: step through a corpus line, comparing annotations.
 *
 * Every state change round-trips through the service; the stepper caches
 * the state it saw at each cursor so stepping back re-renders exactly
 * what the engine reported.
 */

import type { Api, CorpusStep, ServedState, VerifyReport } from "./api.js";

export interface StepMark {
  expected: string;
  computed: string | null;
  ok: boolean;
  lenient: boolean;
  erratum: string | null;
}

export class ReplayStepper {
  private constructor(
    readonly api: Api,
    readonly script: string,
    readonly base: string,
    readonly steps: CorpusStep[],
    readonly sessionId: string,
    private states: ServedState[],
  ) {}

  cursor = 0;

  static async open(api: Api, script: string): Promise<ReplayStepper> {
    const payload = await api.corpusSteps(script);
    const session = await api.createFromCorpus(payload.base);
    return new ReplayStepper(
      api,
      payload.name,
      payload.base,
      payload.steps,
      session.id,
      [session.state],
    );
  }

  get atStart(): boolean {
    return this.cursor === 0;
  }

  get atEnd(): boolean {
    return this.cursor === this.steps.length;
  }

  state(): ServedState {
    return this.states[this.cursor]!;
  }

  baseState(): ServedState {
    return this.states[0]!;
  }

  nextStep(): CorpusStep | null {
    return this.atEnd ? null : this.steps[this.cursor]!;
  }

  async forward(): Promise<ServedState> {
    if (this.atEnd) {
      throw new Error("already at the last step");
    }
    const step = this.steps[this.cursor]!;
    const revision = this.state().revision;
    const played = await this.api.play(this.sessionId, step.move, revision);
    this.cursor += 1;
    this.states[this.cursor] = played.state;
    return played.state;
  }

  async back(): Promise<ServedState> {
    if (this.atStart) {
      throw new Error("already at the base position");
    }
    const undone = await this.api.undo(this.sessionId, this.state().revision);
    this.cursor -= 1;
    this.states[this.cursor] = undone.state;
    return undone.state;
  }

  /** The final position mirrored by the service, for the closure overlay. */
  async rotatedFinal(): Promise<ServedState> {
    if (!this.atEnd) {
      throw new Error("step to the end first");
    }
    const payload = await this.api.state(this.sessionId, "rot180");
    return payload.state;
  }

  /** Expected-vs-computed marks for each step from a verification run. */
  async marks(strict = false): Promise<StepMark[]> {
    const report: VerifyReport = await this.api.verify(this.script, strict);
    const moves = report.results.filter(
      (entry) => entry.entry === "move" && !entry.path.includes(":"),
    );
    return moves.map((entry) => ({
      expected: entry.expected ?? "none",
      computed: entry.computed ?? null,
      ok: entry.ok,
      lenient: this.steps[moves.indexOf(entry)]?.lenient ?? false,
      erratum: entry.erratum,
    }));
  }
}
