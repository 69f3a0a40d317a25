import type { Snapshot } from "./types.js";

function isMarker(value: Record<string, Snapshot>, key: string): boolean {
  return key in value;
}

// Compact one-line rendering of a recorded value for chips and rows.
// Long values get an ellipsis; the inspector shows the full structure.
export function formatValue(value: Snapshot, budget = 60): string {
  const text = render(value);
  if (text.length <= budget) return text;
  return text.slice(0, budget - 1) + "…";
}

function render(value: Snapshot): string {
  if (value === null) return "null";
  if (typeof value === "number" || typeof value === "boolean") return String(value);
  if (typeof value === "string") return JSON.stringify(value);
  if (Array.isArray(value)) {
    return `[${value.map(render).join(", ")}]`;
  }
  const obj = value as Record<string, Snapshot>;
  if (isMarker(obj, "$fn")) return `fn ${obj["$fn"]}`;
  if (isMarker(obj, "$float")) return String(obj["$float"]);
  if (isMarker(obj, "$cycle")) return "(cycle)";
  if (isMarker(obj, "$error")) {
    const err = obj["$error"] as Record<string, Snapshot>;
    return `error ${err["kind"]}`;
  }
  const keys = Object.keys(obj);
  if (keys.length === 1 && keys[0] === "$truncated") return "(truncated)";
  const parts = keys.map((k) => (k === "$truncated" ? "…" : `${k}: ${render(obj[k])}`));
  return `{${parts.join(", ")}}`;
}
