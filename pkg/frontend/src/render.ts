// DOM builders for every view in the dashboard. All functions here are pure
// producers of detached elements; the app shell decides where they mount.
//
// Display-parity rule: any numeric that came from the API is rendered through
// numCell, which stringifies the value verbatim and stamps it into a
// data-value attribute. Nothing in this module computes a score.
import {
  Artifact,
  CRITERION_ORDER,
  FeasibilityAssessment,
  FeasibilityAssessmentSchema,
  Hypothesis,
  HypothesisSchema,
  NoveltyVerdict,
  NoveltyVerdictSchema,
  PathEntry,
  PathEntrySchema,
  PendingReview,
  Review,
  Run,
  RunBrief,
  StageRecord,
  TranscriptEvent,
  ValidationReport,
} from "./schema.js";
import { numText, pluralize, stageTitle, timestampText } from "./format.js";
import { ReviewDecision } from "./api.js";
import { z } from "zod";

type Child = Node | string | null | undefined;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  for (const child of children) {
    if (child == null) continue;
    node.append(child);
  }
  return node;
}

export function numCell(value: number, cls = ""): HTMLSpanElement {
  const text = numText(value);
  return el("span", { class: `num ${cls}`.trim(), "data-value": text }, text);
}

function statusBadge(status: string): HTMLSpanElement {
  // Status text comes through verbatim; only the CSS hook is normalized.
  return el("span", { class: "status-badge", "data-status": status }, status);
}

function roleBadge(role: string): HTMLSpanElement {
  return el("span", { class: `role-badge role-${role.toLowerCase()}`, "data-role": role }, role);
}

// Turns a weight like 0.35 into "35" by decimal-string manipulation, so the
// percent label involves no arithmetic on the payload value.
export function weightPercentText(weight: number): string {
  const text = numText(weight);
  const match = /^0\.(\d{1,2})$/.exec(text);
  if (match !== null) return match[1]!.padEnd(2, "0").replace(/^0/, "");
  if (text === "1") return "100";
  return `${text}x100`;
}

// ---------------------------------------------------------------- run list

export function renderRunList(briefs: RunBrief[]): HTMLElement {
  const table = el("table", { class: "run-list" });
  table.append(el(
    "thead", {},
    el("tr", {},
      el("th", {}, "run"), el("th", {}, "query"), el("th", {}, "mode"),
      el("th", {}, "status"), el("th", {}, "review"), el("th", {}, "stages"),
      el("th", {}, "tokens"), el("th", {}, "created")),
  ));
  const body = el("tbody");
  for (const brief of briefs) {
    const pending = brief.status === "awaiting_review";
    body.append(el(
      "tr", { "data-run-id": brief.run_id },
      el("td", {}, el("a", { href: `#/runs/${brief.run_id}`, class: "run-link" }, brief.run_id)),
      el("td", { class: "query-cell" }, brief.query),
      el("td", {}, brief.mode),
      el("td", {}, statusBadge(brief.status)),
      el("td", {}, pending ? el("span", { class: "pending-marker" }, "review pending") : ""),
      el("td", {}, numCell(brief.stages_completed, "stages-completed")),
      el("td", {},
        numCell(brief.prompt_token_total, "prompt-total"), " / ",
        numCell(brief.completion_token_total, "completion-total")),
      el("td", {}, timestampText(brief.created_at)),
    ));
  }
  table.append(body);
  return el("section", { class: "view run-list-view" }, el("h2", {}, "runs"), table);
}

// --------------------------------------------------------------- path table

const SORT_KEYS = ["id", "entities", "relations", "score"] as const;
type SortKey = (typeof SORT_KEYS)[number];

function pathSortValue(path: PathEntry, key: SortKey): string | number {
  if (key === "score") return path.score;
  if (key === "id") return path.id;
  if (key === "entities") return path.entities.join(" -> ");
  return path.relations.join(", ");
}

export function renderPathTable(paths: PathEntry[]): HTMLTableElement {
  const table = el("table", { class: "path-table" });
  const headRow = el("tr");
  const body = el("tbody");
  const rows = new Map<string, HTMLTableRowElement>();

  let order = [...paths];
  let currentKey: SortKey | null = null;
  let ascending = true;

  const repaint = () => {
    body.replaceChildren(...order.map((p) => rows.get(p.id)!));
    table.dataset["sortKey"] = currentKey ?? "";
    table.dataset["sortDir"] = ascending ? "asc" : "desc";
  };

  for (const key of SORT_KEYS) {
    const th = el("th", { "data-sort-key": key }, el("button", { class: "sort-button", type: "button" }, key));
    th.querySelector("button")!.addEventListener("click", () => {
      ascending = currentKey === key ? !ascending : true;
      currentKey = key;
      order = [...order].sort((a, b) => {
        const va = pathSortValue(a, key);
        const vb = pathSortValue(b, key);
        const cmp = typeof va === "number" && typeof vb === "number"
          ? va - vb
          : String(va).localeCompare(String(vb));
        return ascending ? cmp : -cmp;
      });
      repaint();
    });
    headRow.append(th);
  }
  table.append(el("thead", {}, headRow));

  for (const path of paths) {
    rows.set(path.id, el(
      "tr", { "data-path-id": path.id },
      el("td", { class: "path-id" }, path.id),
      el("td", { class: "path-entities" }, path.entities.join(" -> ")),
      el("td", { class: "path-relations" }, path.relations.join(", ")),
      el("td", {}, numCell(path.score, "path-score")),
    ));
  }
  table.append(body);
  repaint();
  return table;
}

// ---------------------------------------------------------- debate verdict

function renderTranscript(events: TranscriptEvent[]): HTMLElement {
  const wrap = el("div", { class: "transcript" });
  const byRound = new Map<number, TranscriptEvent[]>();
  for (const event of events) {
    const bucket = byRound.get(event.round) ?? [];
    bucket.push(event);
    byRound.set(event.round, bucket);
  }
  for (const round of [...byRound.keys()].sort((a, b) => a - b)) {
    const section = el("section", { class: "transcript-round", "data-round": String(round) });
    section.append(el("h5", {}, round === 0 ? "initial assessments" : `round ${round}`));
    for (const event of byRound.get(round)!) {
      const entry = el(
        "div",
        { class: "transcript-event", "data-role": event.role, "data-round": String(event.round) },
        roleBadge(event.role),
        el("span", { class: "event-type" }, event.event_type),
        el("span", { class: "event-score-label" }, "score ", numCell(event.score, "event-score")),
        el("span", { class: "event-confidence-label" }, "confidence ",
          numCell(event.confidence, "event-confidence")),
      );
      if (event.claims.length > 0) {
        entry.append(el("ul", { class: "claims" },
          ...event.claims.map((c) => el("li", {}, c))));
      }
      for (const flag of event.flags) {
        entry.append(el("span", { class: "flag-marker", "data-flag": flag }, `specious: ${flag}`));
      }
      section.append(entry);
    }
    wrap.append(section);
  }
  return wrap;
}

export function renderNoveltyCard(verdict: NoveltyVerdict): HTMLElement {
  const card = el("div", { class: "novelty-card" });
  card.append(el("h4", {}, "novelty debate"));
  const facts = el("dl", { class: "fact-grid" });
  const fact = (label: string, value: Child) =>
    facts.append(el("dt", {}, label), el("dd", {}, value));
  fact("final score", numCell(verdict.final_score, "final-score"));
  fact("sigma initial", numCell(verdict.sigma_initial, "sigma-initial"));
  fact("sigma final", numCell(verdict.sigma_final, "sigma-final"));
  fact("rounds used", numCell(verdict.rounds_used, "rounds-used"));
  fact("debate occurred", String(verdict.debate_occurred));
  fact("terminated", el("span", { class: "terminated-reason" }, verdict.terminated_reason));
  if (verdict.below_threshold !== undefined) {
    fact("below threshold", String(verdict.below_threshold));
  }
  card.append(facts);

  const critics = el("div", { class: "critic-scores" });
  for (const [role, score] of Object.entries(verdict.critic_scores)) {
    const row = el("span", { class: "critic-score-row" }, roleBadge(role), " ");
    const cell = numCell(score, "critic-score");
    cell.dataset["role"] = role;
    row.append(cell);
    critics.append(row);
  }
  card.append(critics);

  if (verdict.penalties_applied.length > 0) {
    const list = el("ul", { class: "penalties" });
    for (const penalty of verdict.penalties_applied) {
      const item = el("li", { class: "penalty" });
      for (const [key, value] of Object.entries(penalty)) {
        item.append(el("span", { class: "penalty-field", "data-key": key },
          `${key}: `, typeof value === "number" ? numCell(value) : String(value), " "));
      }
      list.append(item);
    }
    card.append(el("div", { class: "penalties-label" }, "penalties applied"), list);
  }

  card.append(renderTranscript(verdict.transcript));
  return card;
}

// ------------------------------------------------------------- feasibility

export function renderFeasibilityCard(assessment: FeasibilityAssessment): HTMLElement {
  const card = el("div", { class: "feasibility-card" });
  card.append(el("h4", {}, "feasibility"));
  for (const name of CRITERION_ORDER) {
    const sub = assessment[name];
    const weight = assessment.weights[name];
    const row = el("div", { class: "feasibility-row", "data-criterion": name });
    const weightLabel = weight === undefined
      ? ""
      : el("span", { class: "weight-label", "data-value": numText(weight) },
          `${weightPercentText(weight)}% weight`);
    row.append(
      el("span", { class: "criterion-name" }, stageTitle(name)),
      weightLabel,
      el("div", { class: "bar-track" },
        el("div", { class: "bar-fill", style: `width: ${sub.value * 10}%` })),
      numCell(sub.value, `sub-score criterion-${name}`),
    );
    if (sub.notes.length > 0) {
      row.append(el("ul", { class: "notes" }, ...sub.notes.map((n) => el("li", {}, n))));
    }
    card.append(row);
  }
  card.append(el(
    "div", { class: "feasibility-total" },
    "weighted total ", numCell(assessment.weighted_total, "weighted-total"),
    " ", el("span", { class: "verdict-badge", "data-verdict": assessment.verdict }, assessment.verdict),
  ));
  return card;
}

// -------------------------------------------------------------- hypothesis

export function renderHypothesisCard(hypothesis: Hypothesis): HTMLElement {
  const facts = el("dl", { class: "fact-grid hypothesis-fields" });
  const fact = (field: string, label: string, value: Child) =>
    facts.append(el("dt", {}, label), el("dd", { "data-field": field }, value));
  fact("statement", "statement", el("em", {}, hypothesis.statement));
  fact("population", "population", hypothesis.population);
  fact("variables", "variables",
    el("ul", {}, ...hypothesis.variables.map((v) => el("li", {}, v))));
  fact("outcome", "outcome", hypothesis.outcome);
  fact("expected_directionality", "expected directionality", hypothesis.expected_directionality);
  fact("validation_feasibility", "validation feasibility", hypothesis.validation_feasibility);
  return el("div", { class: "hypothesis-card", "data-hypothesis-id": hypothesis.id ?? "" },
    el("h4", {}, "hypothesis"), facts);
}

// -------------------------------------------------------------- validation

const KmPointsSchema = z.looseObject({
  group: z.string().optional(),
  times: z.array(z.number()).optional(),
  survival: z.array(z.number()),
  at_risk: z.array(z.number()).optional(),
  censor_times: z.array(z.number()).optional(),
});

function kmCurveSvg(times: number[], survival: number[], censors: number[]): SVGElement {
  // Presentation geometry only: scales API-provided points onto a fixed
  // canvas. The numbers themselves are rendered in the adjacent table.
  const width = 420;
  const height = 200;
  const pad = 28;
  const maxTime = Math.max(...times, ...censors, 1);
  const x = (t: number) => pad + (t / maxTime) * (width - 2 * pad);
  const y = (s: number) => height - pad - s * (height - 2 * pad);

  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "km-plot");
  svg.setAttribute("role", "img");

  let d = `M ${x(0)} ${y(1)}`;
  let level = 1;
  for (let i = 0; i < times.length; i += 1) {
    d += ` H ${x(times[i]!)} V ${y(survival[i] ?? level)}`;
    level = survival[i] ?? level;
  }
  const path = document.createElementNS("http://www.w3.org/2000/svg", "path");
  path.setAttribute("d", d);
  path.setAttribute("class", "km-step");
  path.setAttribute("fill", "none");
  svg.append(path);

  for (const t of censors) {
    let levelAt = 1;
    for (let i = 0; i < times.length; i += 1) {
      if (times[i]! <= t) levelAt = survival[i] ?? levelAt;
    }
    const tick = document.createElementNS("http://www.w3.org/2000/svg", "line");
    tick.setAttribute("x1", String(x(t)));
    tick.setAttribute("x2", String(x(t)));
    tick.setAttribute("y1", String(y(levelAt) - 5));
    tick.setAttribute("y2", String(y(levelAt) + 5));
    tick.setAttribute("class", "km-censor");
    svg.append(tick);
  }
  return svg;
}

function renderCsvTable(csv: string): HTMLTableElement {
  const lines = csv.trim().split("\n");
  const table = el("table", { class: "result-table" });
  const [headerLine, ...rest] = lines;
  if (headerLine !== undefined) {
    table.append(el("thead", {}, el("tr", {},
      ...headerLine.split(",").map((h) => el("th", {}, h)))));
  }
  const body = el("tbody");
  for (const line of rest) {
    body.append(el("tr", {}, ...line.split(",").map((cell) => {
      const asNumber = Number(cell);
      return el("td", {},
        cell !== "" && Number.isFinite(asNumber) ? numCell(asNumber) : cell);
    })));
  }
  table.append(body);
  return table;
}

function renderJsonFacts(parsed: Record<string, unknown>): HTMLElement {
  const facts = el("dl", { class: "fact-grid" });
  for (const [key, value] of Object.entries(parsed)) {
    const rendered: Child = typeof value === "number"
      ? numCell(value, `artifact-${key}`)
      : Array.isArray(value)
        ? el("span", {}, ...value.flatMap((v, i) => {
            const piece: Child = typeof v === "number" ? numCell(v) : String(v);
            return i === 0 ? [piece] : [", ", piece];
          }))
        : String(value);
    facts.append(el("dt", {}, key), el("dd", { "data-key": key }, rendered));
  }
  return facts;
}

function renderArtifact(artifact: Artifact): HTMLElement {
  const section = el("section", { class: "artifact", "data-artifact": artifact.name });
  section.append(el("h5", {}, artifact.name));
  if (artifact.media_type === "application/json") {
    const parsed: unknown = JSON.parse(artifact.content);
    const km = KmPointsSchema.safeParse(parsed);
    if (km.success && artifact.name.includes("kaplan_meier") && km.data.times !== undefined) {
      section.append(kmCurveSvg(km.data.times, km.data.survival, km.data.censor_times ?? []));
    }
    if (parsed !== null && typeof parsed === "object" && !Array.isArray(parsed)) {
      section.append(renderJsonFacts(parsed as Record<string, unknown>));
    } else {
      section.append(el("pre", {}, artifact.content));
    }
  } else if (artifact.media_type.startsWith("text/")) {
    section.append(artifact.content.includes(",")
      ? renderCsvTable(artifact.content)
      : el("pre", {}, artifact.content));
  } else {
    section.append(el("pre", {}, artifact.content));
  }
  return section;
}

export function renderValidationCard(
  validation: ValidationReport,
  artifacts: Map<string, Artifact>,
): HTMLElement {
  const card = el("section", { class: "stage-card validation-card" });
  card.append(
    el("h3", {}, "validation"),
    el("div", { class: "validation-meta" },
      statusBadge(validation.status), " ",
      pluralize(validation.attempts.length, "attempt")),
  );
  if (validation.results.length > 0) {
    const table = el("table", { class: "result-table validation-steps" });
    table.append(el("thead", {}, el("tr", {},
      el("th", {}, "step"), el("th", {}, "tool"), el("th", {}, "detail"))));
    const body = el("tbody");
    for (const result of validation.results) {
      const rest = Object.entries(result)
        .filter(([k]) => k !== "step" && k !== "tool")
        .map(([k, v]) => `${k}=${typeof v === "string" ? v : JSON.stringify(v)}`)
        .join(" ");
      body.append(el("tr", {},
        el("td", {}, result.step === undefined ? "" : numCell(result.step)),
        el("td", {}, result.tool ?? ""),
        el("td", {}, rest)));
    }
    table.append(body);
    card.append(table);
  }
  for (const name of validation.artifacts) {
    const artifact = artifacts.get(name);
    card.append(artifact === undefined
      ? el("div", { class: "artifact-missing", "data-artifact": name }, name)
      : renderArtifact(artifact));
  }
  return card;
}

// -------------------------------------------------------------- stage cards

function renderStageBody(record: StageRecord): HTMLElement {
  const body = el("div", { class: "stage-body" });
  const output = record.output;
  const text = output["text"];
  if (typeof text === "string" && text !== "") {
    body.append(el("pre", { class: "stage-text" }, text));
  }
  switch (record.name) {
    case "path_generation": {
      const paths = z.array(PathEntrySchema).parse(output["paths"] ?? []);
      body.append(renderPathTable(paths));
      break;
    }
    case "scientist": {
      if (output["edited_by_review"] === true) {
        body.append(el("span", { class: "edited-marker" }, "edited by review"));
      }
      break;
    }
    case "human_review": {
      const action = typeof output["action"] === "string" ? output["action"] : "";
      const note = typeof output["note"] === "string" ? output["note"] : "";
      body.append(el("div", { class: "review-decision", "data-action": action },
        el("span", { class: "action-badge" }, action),
        note === "" ? "" : el("span", { class: "review-note" }, note)));
      break;
    }
    case "hypothesis_expansion": {
      const parsed = z.looseObject({
        hypothesis: HypothesisSchema,
        justification: z.string().optional(),
        references: z.array(z.string()).optional(),
      }).parse(output);
      body.append(renderHypothesisCard(parsed.hypothesis));
      if (parsed.justification !== undefined) {
        body.append(el("p", { class: "justification" }, parsed.justification));
      }
      if (parsed.references !== undefined && parsed.references.length > 0) {
        body.append(el("ul", { class: "references" },
          ...parsed.references.map((r) => el("li", {}, r))));
      }
      break;
    }
    case "novelty_critic": {
      body.append(renderNoveltyCard(NoveltyVerdictSchema.parse(output["verdict"])));
      break;
    }
    case "feasibility": {
      body.append(renderFeasibilityCard(FeasibilityAssessmentSchema.parse(output["assessment"])));
      break;
    }
    case "results_interpreter": {
      const post = output["post_hoc_feasibility"];
      if (typeof post === "number") {
        body.append(el("div", { class: "post-hoc" },
          "post-hoc feasibility ", numCell(post, "post-hoc-feasibility")));
      }
      break;
    }
    default:
      break;
  }
  return body;
}

export function renderStageCard(record: StageRecord): HTMLElement {
  const card = el("section", {
    class: "stage-card",
    "data-stage": record.name,
    "data-iteration": String(record.iteration),
  });
  card.append(
    el("h3", {}, stageTitle(record.name),
      record.iteration > 0 ? el("span", { class: "iteration-tag" }, ` iteration ${record.iteration}`) : ""),
    el("div", { class: "stage-meta" },
      el("span", { class: "sources" }, `reads: ${record.input_sources.join(", ")}`),
      el("span", { class: "tokens" },
        "tokens ", numCell(record.prompt_tokens, "prompt-tokens"),
        " / ", numCell(record.completion_tokens, "completion-tokens")),
      el("span", { class: "wall-time" }, "wall ", numCell(record.wall_time), "s")),
    renderStageBody(record),
  );
  return card;
}

// ------------------------------------------------------------- review form

export interface ReviewFormHandle {
  element: HTMLFormElement;
  readDecision(): ReviewDecision;
}

export function renderReviewForm(
  pending: PendingReview,
  onSubmit: (decision: ReviewDecision) => void,
): ReviewFormHandle {
  const draft = pending.hypothesis.statement;
  const form = el("form", { class: "review-form" });
  const actionSelect = el("select", { class: "action-select", name: "action" },
    el("option", { value: "approve" }, "approve"),
    el("option", { value: "revise" }, "revise"),
    el("option", { value: "reject" }, "reject"));
  const statement = el("textarea", { class: "statement-input", name: "statement", rows: "4" });
  statement.value = draft;
  const note = el("input", { class: "note-input", name: "note", type: "text", placeholder: "note" });
  const submit = el("button", { class: "submit-review", type: "submit" }, "submit decision");

  // Revising without changing anything is a no-op; keep submit locked until
  // the statement actually differs from the draft.
  const refresh = () => {
    submit.disabled = actionSelect.value === "revise" && statement.value === draft;
  };
  actionSelect.addEventListener("change", refresh);
  statement.addEventListener("input", refresh);
  refresh();

  const readDecision = (): ReviewDecision => {
    const action = actionSelect.value as ReviewDecision["action"];
    const decision: ReviewDecision = { action };
    if (action === "revise") decision.edited_statement = statement.value;
    if (note.value !== "") decision.note = note.value;
    return decision;
  };

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (!submit.disabled) onSubmit(readDecision());
  });

  form.append(
    el("h3", {}, "review decision"),
    el("div", { class: "draft-context" },
      el("h4", {}, "scientist draft"),
      el("pre", { class: "draft-text" }, pending.draft_text)),
    el("label", {}, "action ", actionSelect),
    el("label", {}, "statement ", statement),
    el("label", {}, "note ", note),
    submit,
  );
  return { element: form, readDecision };
}

// ------------------------------------------------------- conflicts + errors

export function renderConflictView(message: string, winning: Review | null): HTMLElement {
  const view = el("div", { class: "conflict-view" },
    el("h3", {}, "decision conflict"),
    el("p", { class: "conflict-message" }, message));
  if (winning !== null) {
    view.append(el(
      "div", { class: "winning-decision", "data-action": winning.action },
      el("span", { class: "action-badge" }, winning.action),
      winning.edited_statement === null ? "" :
        el("blockquote", { class: "winning-statement" }, winning.edited_statement),
      winning.note === null || winning.note === "" ? "" :
        el("span", { class: "review-note" }, winning.note),
      el("span", { class: "decision-time" }, timestampText(winning.timestamp)),
    ));
  }
  return view;
}

export function renderSchemaErrorBanner(got: string, expected: string): HTMLElement {
  return el("div", { class: "error-banner schema-mismatch", "data-got": got, "data-expected": expected },
    `API schema version '${got}' does not match the supported version '${expected}'. `
    + "Refusing to render to avoid showing inconsistent data.");
}

export function renderNetworkErrorView(message: string, onRetry: () => void): HTMLElement {
  const button = el("button", { class: "retry-button", type: "button" }, "retry");
  button.addEventListener("click", onRetry);
  return el("div", { class: "network-error" },
    el("p", {}, `request failed: ${message}`), button);
}

// -------------------------------------------------------------- run detail

export function renderRunDetail(run: Run, artifacts: Map<string, Artifact>): HTMLElement {
  const view = el("article", { class: "view run-detail", "data-run-id": run.run_id });
  view.append(
    el("h2", {}, run.query),
    el("div", { class: "run-meta" },
      el("span", { class: "run-id" }, run.run_id),
      el("span", { class: "mode-tag" }, run.mode),
      statusBadge(run.status),
      el("span", { class: "token-totals" },
        "tokens ", numCell(run.prompt_token_total, "prompt-total"),
        " / ", numCell(run.completion_token_total, "completion-total")),
      el("span", { class: "created-at" }, timestampText(run.created_at))),
  );
  if (run.error !== null) {
    view.append(el("div", { class: "error-banner run-error" }, run.error));
  }
  if (run.flags.length > 0) {
    view.append(el("ul", { class: "run-flags" },
      ...run.flags.map((f) => el("li", { class: "flag-marker" }, f))));
  }
  if (run.reviews.length > 0) {
    const list = el("ul", { class: "reviews" });
    for (const review of run.reviews) {
      list.append(el("li", { class: "review-entry", "data-action": review.action },
        el("span", { class: "action-badge" }, review.action),
        review.edited_statement === null ? "" :
          el("blockquote", {}, review.edited_statement),
        review.note === null || review.note === "" ? "" :
          el("span", { class: "review-note" }, review.note),
        el("span", { class: "decision-time" }, timestampText(review.timestamp))));
    }
    view.append(el("section", { class: "reviews-section" }, el("h3", {}, "decisions"), list));
  }
  for (const record of run.stages) {
    view.append(renderStageCard(record));
  }
  if (run.validation !== null && run.validation.status !== "") {
    view.append(renderValidationCard(run.validation, artifacts));
  }
  return view;
}
