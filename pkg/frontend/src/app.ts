// Application shell: hash routing, periodic refresh, and the review submit
// flow. Rendering stays in render.ts; this module decides what to fetch,
// what to mount, and how each failure mode is surfaced.
import {
  ApiClient,
  ConflictError,
  NetworkError,
  ReviewDecision,
  SchemaMismatchError,
} from "./api.js";
import {
  renderConflictView,
  renderNetworkErrorView,
  renderReviewForm,
  renderRunDetail,
  renderRunList,
  renderSchemaErrorBanner,
} from "./render.js";
import { Artifact, Run } from "./schema.js";

export const DEFAULT_POLL_INTERVAL_MS = 2000;

export interface AppOptions {
  pollIntervalMs?: number;
}

type Route = { view: "list" } | { view: "run"; runId: string };

export function parseRoute(hash: string): Route {
  const match = /^#\/runs\/([^/]+)$/.exec(hash);
  if (match !== null) return { view: "run", runId: match[1]! };
  return { view: "list" };
}

export class App {
  private timer: ReturnType<typeof setInterval> | null = null;
  private busy = false;
  // Set while the operator is mid-edit; polling must not clobber the form.
  private formDirty = false;
  private readonly pollIntervalMs: number;
  private readonly onHashChange = () => {
    this.formDirty = false;
    void this.refresh();
  };

  constructor(
    private readonly root: HTMLElement,
    private readonly client: ApiClient,
    options: AppOptions = {},
  ) {
    this.pollIntervalMs = options.pollIntervalMs ?? DEFAULT_POLL_INTERVAL_MS;
  }

  start(): void {
    window.addEventListener("hashchange", this.onHashChange);
    this.timer = setInterval(() => void this.refresh(), this.pollIntervalMs);
    void this.refresh();
  }

  stop(): void {
    window.removeEventListener("hashchange", this.onHashChange);
    if (this.timer !== null) clearInterval(this.timer);
    this.timer = null;
  }

  async refresh(): Promise<void> {
    if (this.busy || this.formDirty) return;
    this.busy = true;
    try {
      const route = parseRoute(window.location.hash);
      if (route.view === "list") {
        await this.showList();
      } else {
        await this.showRun(route.runId);
      }
    } catch (err) {
      this.showError(err, () => void this.refresh());
    } finally {
      this.busy = false;
    }
  }

  private mount(...views: HTMLElement[]): void {
    this.root.replaceChildren(...views);
  }

  private showError(err: unknown, retry: () => void): void {
    if (err instanceof SchemaMismatchError) {
      // A drifted backend must not half-render: the banner replaces the view.
      this.mount(renderSchemaErrorBanner(err.got, err.expected));
      return;
    }
    if (err instanceof NetworkError) {
      this.mount(renderNetworkErrorView(err.message, retry));
      return;
    }
    throw err;
  }

  private async showList(): Promise<void> {
    const briefs = await this.client.listRuns();
    this.mount(renderRunList(briefs));
  }

  private async fetchArtifacts(run: Run): Promise<Map<string, Artifact>> {
    const artifacts = new Map<string, Artifact>();
    if (run.validation === null) return artifacts;
    const fetched = await Promise.all(run.validation.artifacts.map(async (name) => {
      try {
        return await this.client.fetchArtifact(run.run_id, name);
      } catch (err) {
        if (err instanceof SchemaMismatchError) throw err;
        return null;
      }
    }));
    for (const artifact of fetched) {
      if (artifact !== null) artifacts.set(artifact.name, artifact);
    }
    return artifacts;
  }

  private async showRun(runId: string): Promise<void> {
    const run = await this.client.fetchRun(runId);
    const artifacts = await this.fetchArtifacts(run);
    const views = [renderRunDetail(run, artifacts)];
    if (run.status === "awaiting_review") {
      const pending = await this.client.pendingReview(runId);
      const handle = renderReviewForm(pending, (decision) => {
        void this.submit(runId, decision);
      });
      handle.element.addEventListener("input", () => {
        this.formDirty = true;
      });
      views.unshift(handle.element);
    }
    this.mount(...views);
  }

  private async submit(runId: string, decision: ReviewDecision): Promise<void> {
    this.formDirty = false;
    try {
      const run = await this.client.submitReview(runId, decision);
      const artifacts = await this.fetchArtifacts(run);
      this.mount(renderRunDetail(run, artifacts));
    } catch (err) {
      if (err instanceof ConflictError) {
        // Someone else decided first: show the decision that won, then the
        // run as it now stands.
        const run = await this.client.fetchRun(runId);
        const artifacts = await this.fetchArtifacts(run);
        this.mount(
          renderConflictView(err.message, run.reviews[0] ?? null),
          renderRunDetail(run, artifacts),
        );
        return;
      }
      if (err instanceof NetworkError) {
        // Never drop a decision on a flaky connection: offer a retry that
        // resubmits the exact same payload.
        this.mount(renderNetworkErrorView(err.message, () => void this.submit(runId, decision)));
        return;
      }
      this.showError(err, () => void this.submit(runId, decision));
    }
  }
}
