import { ApiClient } from "./api.js";
import { App } from "./app.js";

const root = document.getElementById("app");
if (root === null) throw new Error("missing #app mount point");

// Same-origin by default; set window.REVIEW_API_BASE before this script runs
// to point the dashboard at a remote orchestrator.
declare global {
  interface Window {
    REVIEW_API_BASE?: string;
    REVIEW_API_TOKEN?: string;
  }
}

const client = new ApiClient(window.REVIEW_API_BASE ?? "", window.REVIEW_API_TOKEN ?? null);
new App(root, client).start();
