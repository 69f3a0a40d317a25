import type { Snapshot } from "./types.js";

// Collapsible tree over one recorded value. Containers render as
// <details> so nesting folds natively; the top level starts open.

export function renderSnapshotTree(value: Snapshot, open = true): HTMLElement {
  if (value !== null && typeof value === "object") {
    if (Array.isArray(value)) return renderContainer(`[${value.length}]`, listEntries(value), open);
    const obj = value as Record<string, Snapshot>;
    const marker = renderMarker(obj);
    if (marker) return marker;
    const keys = Object.keys(obj);
    return renderContainer(
      `{${keys.length}}`,
      keys.map((k) => [k, obj[k]] as const),
      open,
    );
  }
  const leaf = document.createElement("span");
  leaf.className = "snap-leaf";
  leaf.textContent = typeof value === "string" ? JSON.stringify(value) : String(value);
  return leaf;
}

function listEntries(items: Snapshot[]): ReadonlyArray<readonly [string, Snapshot]> {
  return items.map((item, i) => [String(i), item] as const);
}

function renderContainer(
  summaryText: string,
  entries: ReadonlyArray<readonly [string, Snapshot]>,
  open: boolean,
): HTMLElement {
  const details = document.createElement("details");
  details.className = "snap-node";
  if (open) details.open = true;

  const summary = document.createElement("summary");
  summary.textContent = summaryText;
  details.appendChild(summary);

  for (const [key, child] of entries) {
    const row = document.createElement("div");
    row.className = "snap-entry";
    const label = document.createElement("span");
    label.className = "snap-key";
    label.textContent = `${key}: `;
    row.appendChild(label);
    row.appendChild(renderSnapshotTree(child, false));
    details.appendChild(row);
  }
  return details;
}

function renderMarker(obj: Record<string, Snapshot>): HTMLElement | null {
  const leaf = (cls: string, text: string) => {
    const el = document.createElement("span");
    el.className = `snap-leaf ${cls}`;
    el.textContent = text;
    return el;
  };
  if ("$fn" in obj) return leaf("snap-fn", `fn ${obj["$fn"]}`);
  if ("$float" in obj) return leaf("snap-float", String(obj["$float"]));
  if ("$cycle" in obj) return leaf("snap-cycle", "(cycle)");
  if ("$error" in obj) {
    const err = obj["$error"] as Record<string, Snapshot>;
    return leaf("snap-error", `error ${err["kind"]}: ${err["message"]}`);
  }
  const keys = Object.keys(obj);
  if (keys.length === 1 && keys[0] === "$truncated") return leaf("snap-truncated", "(truncated)");
  return null;
}

export interface InspectorOptions {
  title: string;
  onClose?: () => void;
}

export function renderInspector(value: Snapshot, options: InspectorOptions): HTMLElement {
  const panel = document.createElement("div");
  panel.className = "inspector";

  const header = document.createElement("div");
  header.className = "inspector-header";

  const title = document.createElement("span");
  title.className = "inspector-title";
  title.textContent = options.title;
  header.appendChild(title);

  const close = document.createElement("button");
  close.type = "button";
  close.className = "close";
  close.textContent = "×";
  close.addEventListener("click", () => {
    panel.remove();
    options.onClose?.();
  });
  header.appendChild(close);
  panel.appendChild(header);

  const body = document.createElement("div");
  body.className = "inspector-body";
  body.appendChild(renderSnapshotTree(value));
  panel.appendChild(body);
  return panel;
}
