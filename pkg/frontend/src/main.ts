/** Application wiring: play mode and the script replay stepper. */

import { Api, ServiceError, type MoveListPayload, type ServedState } from "./api.js";
import { BoardView, renderDirectionButtons } from "./board.js";
import { JumpBuilder, sameStones } from "./model.js";
import { ReplayStepper } from "./replay.js";

const api = new Api(
  new URLSearchParams(location.search).get("service") ?? "http://127.0.0.1:8000",
);

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) {
    throw new Error(`missing element #${id}`);
  }
  return found as T;
}

const status = el<HTMLDivElement>("status");
const info = el<HTMLDivElement>("info");
const analysisPanel = el<HTMLDivElement>("analysis");
const directions = el<HTMLDivElement>("directions");
const replayPanel = el<HTMLDivElement>("replay-controls");
const replayMarks = el<HTMLDivElement>("replay-marks");

let sessionId = "";
let state: ServedState | null = null;
let moves: MoveListPayload | null = null;
let builder: JumpBuilder | null = null;
let stepper: ReplayStepper | null = null;

const board = new BoardView(el("board"), {
  onPlace(coord) {
    if (!stepper) {
      void playMove(coord);
    }
  },
  onBallSelected() {
    if (stepper || !moves) {
      return;
    }
    builder = new JumpBuilder(moves.jumps);
    board.setBuilder(builder);
    refreshDirections();
  },
});

function report(message: string): void {
  status.textContent = message;
}

function refreshDirections(): void {
  if (!builder) {
    directions.innerHTML = "";
    return;
  }
  renderDirectionButtons(
    directions,
    builder,
    (direction) => {
      builder!.extend(direction);
      if (builder!.mustStop()) {
        void playMove(builder!.moveText());
      } else {
        if (state) {
          board.render(state);
        }
        refreshDirections();
      }
    },
    () => void playMove(builder!.moveText()),
    () => {
      builder = null;
      board.setBuilder(null);
      if (state) {
        board.render(state);
      }
      refreshDirections();
    },
  );
}

async function refresh(): Promise<void> {
  if (!sessionId) {
    return;
  }
  const payload = await api.state(sessionId);
  state = payload.state;
  moves = state.outcome === "ongoing" ? await api.moves(sessionId) : null;
  builder = null;
  board.setBuilder(null);
  board.setThreat(null);
  info.textContent =
    `to move: ${state.to_move}   outcome: ${state.outcome}   ` +
    `revision: ${state.revision}   moves: ${state.history.join(" ") || "(none)"}`;
  board.render(state);
  refreshDirections();
  if (state.outcome === "ongoing") {
    await refreshAnalysis();
  } else {
    analysisPanel.textContent = `game over: ${state.outcome} wins`;
  }
}

async function refreshAnalysis(): Promise<void> {
  if (!sessionId || !state) {
    return;
  }
  const analysis = await api.analysis(sessionId);
  const parts: string[] = [];
  for (const role of ["A", "B"]) {
    const entry = analysis.roles[role];
    if (!entry) {
      continue;
    }
    if (entry.shot) {
      const first = entry.witnesses?.[0];
      const marks = [
        entry.untackleable ? "untackleable" : `tackle ${entry.refuting_tackle}`,
        entry.unjottable ? "unjottable" : `jot ${entry.refuting_jot}`,
      ];
      parts.push(`${role}: shot ${first?.path ?? ""} (${marks.join(", ")})`);
      if (first && role === state.to_move) {
        board.setThreat(first);
      }
    } else {
      parts.push(`${role}: no shot`);
    }
  }
  analysisPanel.textContent = parts.join("   |   ");
  board.render(state);
}

async function playMove(move: string): Promise<void> {
  if (!state) {
    return;
  }
  try {
    await api.play(sessionId, move, state.revision);
    report(`played ${move}`);
    await refresh();
  } catch (error) {
    if (error instanceof ServiceError && error.status === 409) {
      report("state changed elsewhere; refreshed");
      await refresh();
    } else if (error instanceof ServiceError) {
      report(`rejected (${error.kind ?? error.status}): ${error.message}`);
    } else {
      report(String(error));
    }
  }
}

async function openPosition(name: string): Promise<void> {
  stepper = null;
  replayPanel.innerHTML = "";
  replayMarks.textContent = "";
  const session = await api.createFromCorpus(name);
  sessionId = session.id;
  report(`opened ${name}`);
  await refresh();
}

async function openReplay(script: string): Promise<void> {
  stepper = await ReplayStepper.open(api, script);
  sessionId = stepper.sessionId;
  state = stepper.state();
  replayPanel.innerHTML = "";
  const back = document.createElement("button");
  back.textContent = "< back";
  const forward = document.createElement("button");
  forward.textContent = "forward >";
  const strictToggle = document.createElement("label");
  const strictBox = document.createElement("input");
  strictBox.type = "checkbox";
  strictToggle.append(strictBox, document.createTextNode(" strict symbols"));
  replayPanel.append(back, forward, strictToggle);

  const showMarks = async () => {
    const marks = await stepper!.marks(strictBox.checked);
    replayMarks.innerHTML = "";
    marks.forEach((mark, index) => {
      const span = document.createElement("span");
      const step = stepper!.steps[index]!;
      span.textContent = `${step.role} ${step.move} [${mark.expected} / ${
        mark.computed ?? "?"
      }]`;
      span.className = mark.ok ? "mark-ok" : mark.erratum ? "mark-erratum" : "mark-bad";
      if (index === stepper!.cursor - 1) {
        span.classList.add("mark-current");
      }
      replayMarks.appendChild(span);
    });
  };

  const sync = async () => {
    state = stepper!.state();
    board.setThreat(null);
    board.render(state);
    info.textContent =
      `${stepper!.script}: step ${stepper!.cursor}/${stepper!.steps.length}   ` +
      `to move: ${state.to_move}   revision: ${state.revision}`;
    back.disabled = stepper!.atStart;
    forward.disabled = stepper!.atEnd;
    await showMarks();
    if (stepper!.atEnd) {
      const rotated = await stepper!.rotatedFinal();
      const closed = sameStones(rotated, stepper!.baseState());
      analysisPanel.textContent = closed
        ? "final position equals the half-turn image of the start"
        : "final position differs from the start's half-turn image";
    } else {
      analysisPanel.textContent = "";
    }
  };

  back.addEventListener("click", () => void stepper!.back().then(sync));
  forward.addEventListener("click", () => void stepper!.forward().then(sync));
  strictBox.addEventListener("change", () => void showMarks());
  report(`replaying ${script}`);
  await sync();
}

async function boot(): Promise<void> {
  const index = await api.corpusIndex();
  const positions = el<HTMLSelectElement>("position-pick");
  for (const entry of index.positions) {
    const option = document.createElement("option");
    option.value = entry.name;
    option.textContent = `${entry.name} - ${entry.note}`;
    positions.appendChild(option);
  }
  const scripts = el<HTMLSelectElement>("script-pick");
  for (const entry of index.scripts) {
    const option = document.createElement("option");
    option.value = entry.name;
    option.textContent = `${entry.name} (${entry.alias})`;
    scripts.appendChild(option);
  }
  el<HTMLButtonElement>("open-position").addEventListener("click", () =>
    void openPosition(positions.value),
  );
  el<HTMLButtonElement>("open-replay").addEventListener("click", () =>
    void openReplay(scripts.value),
  );
  el<HTMLButtonElement>("engine-move").addEventListener("click", async () => {
    if (state && !stepper) {
      const played = await api.engineMove(sessionId, state.revision);
      report(`engine played ${played.move}`);
      await refresh();
    }
  });
  await openPosition("fig3");
}

void boot().catch((error) => report(String(error)));
