// Replays captured orchestrator responses over real HTTP so the dashboard's
// fetch path is exercised end to end without the Python backend running.
// The only dynamic part is the review state machine: the first decision for
// the awaiting run succeeds and flips every later payload to the revised
// capture; any further decision gets the captured 409.
import { createServer, IncomingMessage, Server, ServerResponse } from "node:http";
import { readFileSync } from "node:fs";
import { join } from "node:path";

type Json = Record<string, unknown>;

// vitest runs with the package root as cwd
function loadFixture(name: string): Json {
  return JSON.parse(readFileSync(join(process.cwd(), "tests", "fixtures", name), "utf8")) as Json;
}

export const completeFixture = loadFixture("complete.json");
export const debateFixture = loadFixture("debate.json");
export const reviewFixture = loadFixture("review.json");

function runIdOf(fixtureEnvelope: unknown): string {
  return ((fixtureEnvelope as Json)["run"] as Json)["run_id"] as string;
}

export const COMPLETE_RUN_ID = runIdOf(completeFixture["envelope"]);
export const DEBATE_RUN_ID = runIdOf(debateFixture["envelope"]);
export const REVIEW_RUN_ID = runIdOf((reviewFixture["awaiting"] as Json));

// Synthetic id whose payload advertises an incompatible schema_version.
export const MISMATCH_RUN_ID = "version-mismatch";
export const MISMATCH_GONE_ID = "gone-mismatch";
export const MISMATCH_VERSION = "999";

export interface FixtureServer {
  url: string;
  state: { reviewed: boolean };
  close(): Promise<void>;
}

// happy-dom's fetch enforces cross-origin policy, so the test server has to
// grant it; the real deployment serves the dashboard same-origin instead.
const CORS_HEADERS = {
  "access-control-allow-origin": "*",
  "access-control-allow-methods": "GET, POST, OPTIONS",
  "access-control-allow-headers": "accept, content-type, x-review-token",
};

function sendJson(res: ServerResponse, status: number, body: unknown): void {
  const text = typeof body === "string" ? body : JSON.stringify(body);
  res.writeHead(status, { "content-type": "application/json", ...CORS_HEADERS });
  res.end(text);
}

function notFound(res: ServerResponse, what: string): void {
  sendJson(res, 404, { schema_version: "1", error: `${what} not found` });
}

async function readBody(req: IncomingMessage): Promise<string> {
  const chunks: Buffer[] = [];
  for await (const chunk of req) chunks.push(chunk as Buffer);
  return Buffer.concat(chunks).toString("utf8");
}

type ArtifactFixture = Record<string, { content_type: string; body: string }>;

export function startFixtureServer(): Promise<FixtureServer> {
  const state = { reviewed: false };
  const artifactsByRun: Record<string, ArtifactFixture> = {
    [COMPLETE_RUN_ID]: completeFixture["artifacts"] as ArtifactFixture,
    [DEBATE_RUN_ID]: debateFixture["artifacts"] as ArtifactFixture,
    [REVIEW_RUN_ID]: reviewFixture["artifacts"] as ArtifactFixture,
  };

  const mismatchEnvelope = JSON.parse(JSON.stringify(completeFixture["envelope"])) as Json;
  mismatchEnvelope["schema_version"] = MISMATCH_VERSION;
  ((mismatchEnvelope["run"] as Json))["run_id"] = MISMATCH_RUN_ID;

  const handler = async (req: IncomingMessage, res: ServerResponse) => {
    const url = new URL(req.url ?? "/", "http://fixture");
    const parts = url.pathname.split("/").filter((p) => p !== "");

    if (req.method === "OPTIONS") {
      res.writeHead(204, CORS_HEADERS);
      res.end();
      return;
    }

    if (req.method === "GET" && url.pathname === "/runs") {
      const reviewBrief = state.reviewed ? reviewFixture["brief_after"] : reviewFixture["brief_before"];
      sendJson(res, 200, {
        schema_version: "1",
        runs: [completeFixture["brief"], debateFixture["brief"], reviewBrief],
      });
      return;
    }

    if (parts[0] === "runs" && parts.length >= 2) {
      const runId = parts[1]!;

      if (req.method === "GET" && parts.length === 2) {
        if (runId === COMPLETE_RUN_ID) return sendJson(res, 200, completeFixture["envelope"]);
        if (runId === DEBATE_RUN_ID) return sendJson(res, 200, debateFixture["envelope"]);
        if (runId === REVIEW_RUN_ID) {
          return sendJson(res, 200, state.reviewed ? reviewFixture["revised"] : reviewFixture["awaiting"]);
        }
        if (runId === MISMATCH_RUN_ID) return sendJson(res, 200, mismatchEnvelope);
        if (runId === MISMATCH_GONE_ID) {
          return sendJson(res, 404, { schema_version: MISMATCH_VERSION, error: "run not found" });
        }
        return notFound(res, `run '${runId}'`);
      }

      if (req.method === "GET" && parts[2] === "pending-review") {
        if (runId !== REVIEW_RUN_ID) return notFound(res, "pending review");
        if (state.reviewed) {
          return sendJson(res, reviewFixture["pending_after_status"] as number,
            reviewFixture["pending_after_response"]);
        }
        return sendJson(res, 200, reviewFixture["pending"]);
      }

      if (req.method === "POST" && parts[2] === "review") {
        await readBody(req);
        if (runId === REVIEW_RUN_ID && !state.reviewed) {
          state.reviewed = true;
          return sendJson(res, 200, reviewFixture["revise_response"]);
        }
        return sendJson(res, reviewFixture["conflict_status"] as number,
          reviewFixture["conflict_response"]);
      }

      if (req.method === "GET" && parts[2] === "artifacts" && parts.length === 4) {
        const artifact = artifactsByRun[runId]?.[parts[3]!];
        if (artifact === undefined) return notFound(res, `artifact '${parts[3]}'`);
        res.writeHead(200, { "content-type": artifact.content_type, ...CORS_HEADERS });
        res.end(artifact.body);
        return;
      }
    }

    notFound(res, url.pathname);
  };

  return new Promise((resolve) => {
    const server: Server = createServer((req, res) => {
      void handler(req, res).catch(() => {
        sendJson(res, 500, { schema_version: "1", error: "fixture server error" });
      });
    });
    server.listen(0, "127.0.0.1", () => {
      const address = server.address();
      const port = typeof address === "object" && address !== null ? address.port : 0;
      resolve({
        url: `http://127.0.0.1:${port}`,
        state,
        close: () => new Promise((done) => server.close(() => done())),
      });
    });
  });
}
