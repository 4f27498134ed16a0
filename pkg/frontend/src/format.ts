// Tiny display helpers. The one hard rule lives in numText: numeric values
// from the API are stringified verbatim, never recomputed or rounded here.

export function numText(value: number): string {
  return String(value);
}

export function timestampText(epochSeconds: number): string {
  return new Date(epochSeconds * 1000).toISOString().replace("T", " ").slice(0, 19);
}

export function pluralize(count: number, noun: string): string {
  return `${count} ${noun}${count === 1 ? "" : "s"}`;
}

export function stageTitle(name: string): string {
  return name.replace(/_/g, " ");
}
