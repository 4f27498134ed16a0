// Thin fetch wrapper around the orchestrator HTTP API. Every response body
// is checked for a compatible schema_version before anything else looks at
// it, and error statuses map to typed exceptions the views can branch on.
import { z } from "zod";
import {
  Artifact,
  ArtifactSchema,
  PendingReview,
  PendingReviewSchema,
  Run,
  RunBrief,
  RunBriefSchema,
  RunSchema,
  SUPPORTED_SCHEMA_VERSION,
} from "./schema.js";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

// 409: another decision already landed for this run.
export class ConflictError extends ApiError {
  constructor(message: string) {
    super(409, message);
    this.name = "ConflictError";
  }
}

export class SchemaMismatchError extends Error {
  constructor(readonly got: string, readonly expected: string) {
    super(`unsupported API schema version '${got}' (this dashboard speaks '${expected}')`);
    this.name = "SchemaMismatchError";
  }
}

// fetch itself failed: server unreachable, connection dropped, etc.
export class NetworkError extends Error {
  constructor(message: string, readonly cause_?: unknown) {
    super(message);
    this.name = "NetworkError";
  }
}

const EnvelopeSchema = z.looseObject({
  schema_version: z.string(),
  error: z.string().optional(),
});

export interface ReviewDecision {
  action: "approve" | "revise" | "reject";
  edited_statement?: string;
  note?: string;
}

export class ApiClient {
  constructor(
    readonly baseUrl: string = "",
    readonly authToken: string | null = null,
  ) {}

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    const headers = new Headers(init?.headers);
    headers.set("accept", "application/json");
    if (init?.body != null) headers.set("content-type", "application/json");
    if (this.authToken != null) headers.set("x-review-token", this.authToken);

    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, { ...init, headers });
    } catch (err) {
      throw new NetworkError(`request to ${path} failed`, err);
    }

    let body: unknown;
    try {
      body = await response.json();
    } catch (err) {
      throw new NetworkError(`non-JSON response from ${path}`, err);
    }

    // Version check first: a mismatched envelope must never partially render,
    // even when it arrives on an error status.
    const envelope = EnvelopeSchema.parse(body);
    if (envelope.schema_version !== SUPPORTED_SCHEMA_VERSION) {
      throw new SchemaMismatchError(envelope.schema_version, SUPPORTED_SCHEMA_VERSION);
    }
    if (!response.ok) {
      const message = envelope.error ?? `HTTP ${response.status}`;
      if (response.status === 409) throw new ConflictError(message);
      throw new ApiError(response.status, message);
    }
    return body;
  }

  async listRuns(): Promise<RunBrief[]> {
    const body = await this.request("/runs");
    return z.looseObject({ runs: z.array(RunBriefSchema) }).parse(body).runs;
  }

  async fetchRun(runId: string): Promise<Run> {
    const body = await this.request(`/runs/${runId}`);
    return z.looseObject({ run: RunSchema }).parse(body).run;
  }

  async pendingReview(runId: string): Promise<PendingReview> {
    const body = await this.request(`/runs/${runId}/pending-review`);
    return PendingReviewSchema.parse(body);
  }

  async submitReview(runId: string, decision: ReviewDecision): Promise<Run> {
    const body = await this.request(`/runs/${runId}/review`, {
      method: "POST",
      body: JSON.stringify(decision),
    });
    return z.looseObject({ run: RunSchema }).parse(body).run;
  }

  async fetchArtifact(runId: string, name: string): Promise<Artifact> {
    const body = await this.request(`/runs/${runId}/artifacts/${name}`);
    return ArtifactSchema.parse(body);
  }
}
