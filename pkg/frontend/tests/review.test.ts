// Review lifecycle against the fixture service: the gating rules on the
// form, the revise round-trip into downstream stage cards, the conflict view
// for a losing second decision, and the list transitions around it all.
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { ApiClient, ConflictError } from "../src/api.js";
import { App } from "../src/app.js";
import {
  renderConflictView,
  renderReviewForm,
  renderRunDetail,
  renderRunList,
} from "../src/render.js";
import {
  REVIEW_RUN_ID,
  FixtureServer,
  reviewFixture,
  startFixtureServer,
} from "./fixture_server.js";

let server: FixtureServer;
let client: ApiClient;
const EDITED = reviewFixture["edited_statement"] as string;

beforeAll(async () => {
  server = await startFixtureServer();
  client = new ApiClient(server.url);
});

afterAll(async () => {
  await server.close();
});

describe("review lifecycle", () => {
  it("lists the awaiting run with a pending marker", async () => {
    const briefs = await client.listRuns();
    const view = renderRunList(briefs);
    const row = view.querySelector(`tr[data-run-id="${REVIEW_RUN_ID}"]`)!;
    expect(row.querySelector(".status-badge")!.textContent).toBe("awaiting_review");
    expect(row.querySelector(".pending-marker")).not.toBeNull();
  });

  it("pre-fills the statement and gates revise submits until it changes", async () => {
    const pending = await client.pendingReview(REVIEW_RUN_ID);
    const decisions: unknown[] = [];
    const { element } = renderReviewForm(pending, (d) => decisions.push(d));
    const select = element.querySelector<HTMLSelectElement>(".action-select")!;
    const statement = element.querySelector<HTMLTextAreaElement>(".statement-input")!;
    const submit = element.querySelector<HTMLButtonElement>(".submit-review")!;

    expect(statement.value).toBe(pending.hypothesis.statement);
    expect(element.querySelector(".draft-text")!.textContent).toBe(pending.draft_text);
    expect(submit.disabled).toBe(false);

    select.value = "revise";
    select.dispatchEvent(new Event("change"));
    expect(submit.disabled).toBe(true);

    // an unchanged statement stays blocked even via form submit
    element.dispatchEvent(new Event("submit", { cancelable: true }));
    expect(decisions.length).toBe(0);

    statement.value = EDITED;
    statement.dispatchEvent(new Event("input"));
    expect(submit.disabled).toBe(false);

    statement.value = pending.hypothesis.statement;
    statement.dispatchEvent(new Event("input"));
    expect(submit.disabled).toBe(true);

    select.value = "approve";
    select.dispatchEvent(new Event("change"));
    expect(submit.disabled).toBe(false);
  });

  it("round-trips a revision into the downstream stage cards", async () => {
    const run = await client.submitReview(REVIEW_RUN_ID, {
      action: "revise",
      edited_statement: EDITED,
      note: "sharpen the exposure",
    });
    expect(run.status).toBe("completed");
    expect(run.hypothesis!.statement).toBe(EDITED);

    const view = renderRunDetail(run, new Map());
    const expansion = view.querySelector(
      `.stage-card[data-stage="hypothesis_expansion"] dd[data-field="statement"]`,
    )!;
    expect(expansion.textContent).toContain(EDITED);
    expect(view.querySelector(`.stage-card[data-stage="scientist"] .edited-marker`)).not.toBeNull();
    const decision = view.querySelector(`.stage-card[data-stage="human_review"] .review-decision`)!;
    expect(decision.getAttribute("data-action")).toBe("revise");
    expect(view.querySelector(".reviews .review-entry blockquote")!.textContent).toBe(EDITED);
  });

  it("surfaces a conflict for the losing second decision", async () => {
    let conflict: ConflictError | null = null;
    try {
      await client.submitReview(REVIEW_RUN_ID, { action: "approve" });
    } catch (err) {
      if (err instanceof ConflictError) conflict = err;
      else throw err;
    }
    expect(conflict).not.toBeNull();
    expect(conflict!.status).toBe(409);
    expect(conflict!.message).toContain("no review is pending");

    const run = await client.fetchRun(REVIEW_RUN_ID);
    const view = renderConflictView(conflict!.message, run.reviews[0] ?? null);
    const winning = view.querySelector(".winning-decision")!;
    expect(winning.getAttribute("data-action")).toBe("revise");
    expect(winning.querySelector(".winning-statement")!.textContent).toBe(EDITED);
  });

  it("lists the run as completed once the decision lands", async () => {
    const briefs = await client.listRuns();
    const view = renderRunList(briefs);
    const row = view.querySelector(`tr[data-run-id="${REVIEW_RUN_ID}"]`)!;
    expect(row.querySelector(".status-badge")!.textContent).toBe("completed");
    expect(row.querySelector(".pending-marker")).toBeNull();
  });
});

describe("app shell", () => {
  it("drives the submit flow end to end and shows the conflict winner", async () => {
    const shell = await startFixtureServer();
    try {
      const root = document.createElement("main");
      document.body.append(root);
      const app = new App(root, new ApiClient(shell.url), { pollIntervalMs: 3600_000 });

      window.location.hash = `#/runs/${REVIEW_RUN_ID}`;
      await app.refresh();
      const statement = root.querySelector<HTMLTextAreaElement>(".statement-input")!;
      const select = root.querySelector<HTMLSelectElement>(".action-select")!;
      expect(statement).not.toBeNull();

      // typing marks the form dirty, so a poll tick must not replace the view
      statement.dispatchEvent(new Event("input", { bubbles: true }));
      const before = root.firstElementChild;
      await app.refresh();
      expect(root.firstElementChild).toBe(before);

      select.value = "revise";
      select.dispatchEvent(new Event("change", { bubbles: true }));
      statement.value = EDITED;
      statement.dispatchEvent(new Event("input", { bubbles: true }));
      root.querySelector("form.review-form")!
        .dispatchEvent(new Event("submit", { cancelable: true }));
      await new Promise((r) => setTimeout(r, 50));

      expect(shell.state.reviewed).toBe(true);
      expect(root.querySelector(".run-detail")).not.toBeNull();
      expect(root.querySelector(".status-badge")!.textContent).toBe("completed");

      // a second submission conflicts; the winning decision is displayed
      const app2root = document.createElement("main");
      const app2 = new App(app2root, new ApiClient(shell.url), { pollIntervalMs: 3600_000 });
      await app2["submit"](REVIEW_RUN_ID, { action: "approve" });
      expect(app2root.querySelector(".conflict-view")).not.toBeNull();
      expect(app2root.querySelector(".winning-decision")!.getAttribute("data-action")).toBe("revise");
      void app2;
      app.stop();
      root.remove();
    } finally {
      await shell.close();
    }
  });
});
