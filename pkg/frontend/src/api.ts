/** Typed client for the phutball analysis service. */

export interface ServedState {
  rows: number;
  cols: number;
  ball: string;
  chaps: string[];
  to_move: string;
  outcome: string;
  revision: number;
  history: string[];
}

export interface ServedPlacement {
  at: string;
  annotation?: string | null;
}

export interface ServedJump {
  path: string;
  end: string | null;
  exit: string | null;
  route: string[];
  outcome: string;
  annotation?: string | null;
}

export interface MoveListPayload {
  revision: number;
  placements: ServedPlacement[];
  jumps: ServedJump[];
}

export interface WitnessInfo {
  path: string;
  route: string[];
}

export interface RoleAnalysis {
  shot: boolean;
  witnesses?: WitnessInfo[];
  unjottable?: boolean;
  untackleable?: boolean;
  win_in_one?: boolean;
  refuting_jot?: string;
  refuting_tackle?: string;
  win_within: { plies: number; result: boolean };
}

export interface AnalysisPayload {
  revision: number;
  roles: Record<string, RoleAnalysis>;
}

export interface SessionPayload {
  id: string;
  state: ServedState;
  outcome?: string;
  move?: string;
}

export interface CorpusStep {
  role: string;
  move: string;
  expect: string;
  lenient: boolean;
}

export interface StepsPayload {
  name: string;
  base: string;
  steps: CorpusStep[];
}

export interface VerifyEntry {
  entry: "move" | "claim";
  path: string;
  ok: boolean;
  erratum: string | null;
  expected?: string;
  computed?: string;
  move?: string;
  detail?: string;
}

export interface VerifyReport {
  script: string;
  passed: boolean;
  results: VerifyEntry[];
  errata: string[];
}

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly kind: string | undefined,
    message: string,
  ) {
    super(message);
  }
}

async function parseError(response: Response): Promise<never> {
  let kind: string | undefined;
  let message = `${response.status}`;
  try {
    const body = await response.json();
    const detail = body.detail ?? body;
    kind = detail.kind;
    message = detail.error ?? JSON.stringify(detail);
  } catch {
    // keep the bare status
  }
  throw new ServiceError(response.status, kind, message);
}

export class Api {
  constructor(readonly base: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(`${this.base}${path}`, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      await parseError(response);
    }
    return (await response.json()) as T;
  }

  createFromCorpus(name: string): Promise<SessionPayload> {
    return this.request("POST", "/sessions", { corpus: name });
  }

  createFromText(position: string): Promise<SessionPayload> {
    return this.request("POST", "/sessions", { position });
  }

  state(id: string, transform?: "rot180"): Promise<SessionPayload> {
    const query = transform ? `?transform=${transform}` : "";
    return this.request("GET", `/sessions/${id}${query}`);
  }

  moves(id: string, annotations = true): Promise<MoveListPayload> {
    const query = annotations ? "" : "?annotations=false";
    return this.request("GET", `/sessions/${id}/moves${query}`);
  }

  play(id: string, move: string, revision: number): Promise<SessionPayload> {
    return this.request("POST", `/sessions/${id}/moves`, { move, revision });
  }

  undo(id: string, revision: number): Promise<SessionPayload> {
    return this.request("POST", `/sessions/${id}/undo`, { revision });
  }

  analysis(id: string, plies = 2): Promise<AnalysisPayload> {
    return this.request("GET", `/sessions/${id}/analysis?plies=${plies}`);
  }

  engineMove(id: string, revision: number): Promise<SessionPayload> {
    return this.request("POST", `/sessions/${id}/engine-move`, { revision });
  }

  corpusIndex(): Promise<{
    positions: { name: string; note: string }[];
    scripts: { name: string; alias: string; base: string; note: string }[];
  }> {
    return this.request("GET", "/corpus");
  }

  corpusSteps(name: string): Promise<StepsPayload> {
    return this.request("GET", `/corpus/${name}/steps`);
  }

  verify(script: string, strict = false): Promise<VerifyReport> {
    return this.request("POST", "/verify", { script, strict });
  }
}
