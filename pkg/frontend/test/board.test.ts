/** Board view-model tests against the live analysis service. */

import { beforeAll, describe, expect, it } from "vitest";

import { Api, ServiceError } from "../src/api.js";
import {
  JumpBuilder,
  annotationBadge,
  coordName,
  pointOf,
  sameStones,
  stonesOf,
} from "../src/model.js";

let api: Api;

beforeAll(() => {
  const url = process.env.PHUTBALL_SERVICE_URL;
  if (!url) {
    throw new Error("service url not provided by global setup");
  }
  api = new Api(url);
});

describe("grid math", () => {
  it("round-trips coordinates", () => {
    expect(pointOf("a2")).toEqual({ col: 1, row: 2 });
    expect(pointOf("j11")).toEqual({ col: 10, row: 11 });
    expect(coordName({ col: 10, row: 11 })).toBe("j11");
  });
});

describe("loading the 12x10 drawn position", () => {
  it("renders 24 chaps and the grey ball on a2", async () => {
    const session = await api.createFromCorpus("fig3");
    const stones = stonesOf(session.state);
    const chaps = stones.filter((s) => s.kind === "chap");
    const balls = stones.filter((s) => s.kind === "ball");
    expect(chaps).toHaveLength(24);
    expect(balls).toEqual([{ coord: "a2", kind: "ball" }]);

    // The rendered layout must equal the state endpoint at this revision.
    const fresh = await api.state(session.id);
    expect(sameStones(session.state, fresh.state)).toBe(true);
    expect(fresh.state.revision).toBe(session.state.revision);
  });

  it("marks the opening placement with its annotation", async () => {
    const session = await api.createFromCorpus("fig3");
    const moves = await api.moves(session.id);
    expect(annotationBadge(moves, "b3")).toBe("!");
    expect(annotationBadge(moves, "a5")).toBe("none");
  });

  it("rejects stale writes and surfaces the engine error kind", async () => {
    const session = await api.createFromCorpus("fig3");
    await api.play(session.id, "b3", session.state.revision);
    await expect(api.play(session.id, "c4", session.state.revision)).rejects.toMatchObject(
      { status: 409 },
    );
    const current = await api.state(session.id);
    try {
      await api.play(session.id, "k9", current.state.revision);
      expect.unreachable("k9 is off the board");
    } catch (error) {
      expect(error).toBeInstanceOf(ServiceError);
      expect((error as ServiceError).status).toBe(422);
      expect((error as ServiceError).kind).toBe("out-of-range");
    }
  });
});

describe("jump builder on the census board", () => {
  it("exposes exactly the legal first segments", async () => {
    const session = await api.createFromCorpus("fig1");
    const moves = await api.moves(session.id);
    const builder = new JumpBuilder(moves.jumps);
    expect(builder.firstSegments()).toEqual(["S", "SE"]);
  });

  it("walks only the served prefix tree, segment by segment", async () => {
    const session = await api.createFromCorpus("fig1");
    const moves = await api.moves(session.id);
    const builder = new JumpBuilder(moves.jumps);

    builder.extend("SE");
    expect(builder.canStop()).toBe(true); // SE alone is a legal (losing) jump
    expect(builder.continuations()).toEqual(["N"]);
    expect(() => builder.extend("NE")).toThrow(/illegal continuation/);

    builder.extend("N");
    expect(builder.canStop()).toBe(true);
    expect(builder.continuations()).toEqual(["N", "NE", "SE"]);
    expect(builder.routeSoFar()).toEqual(["a3", "c1", "c3"]);

    builder.extend("NE");
    expect(builder.mustStop()).toBe(true); // goalline exit ends the jump
    expect(builder.continuations()).toEqual([]);
    expect(builder.current()?.outcome).toBe("A");
  });

  it("submits a built jump that ends the game for Alfred", async () => {
    const session = await api.createFromCorpus("fig1");
    const moves = await api.moves(session.id);
    const builder = new JumpBuilder(moves.jumps);
    for (const segment of ["SE", "N", "NE"]) {
      builder.extend(segment);
    }
    const played = await api.play(
      session.id,
      builder.moveText(),
      session.state.revision,
    );
    expect(played.outcome).toBe("A");
    const after = await api.moves(session.id);
    expect(after.placements).toHaveLength(0);
    expect(after.jumps).toHaveLength(0);
  });
});

describe("threat overlay", () => {
  it("draws the served route for the standing shot", async () => {
    const session = await api.createFromCorpus("fig3");
    await api.play(session.id, "b3", session.state.revision);
    const analysis = await api.analysis(session.id);
    const alfred = analysis.roles.A;
    expect(alfred?.shot).toBe(true);
    const witness = alfred?.witnesses?.[0];
    expect(witness?.path).toBe("NE,N,N,N");
    expect(witness?.route).toEqual(["a2", "c4", "c6", "c8", "exit-top"]);
  });
});
