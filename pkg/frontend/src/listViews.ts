import { formatValue } from "./format.js";
import { methodKey } from "./types.js";
import type { MethodRef, ProbeLogPayload, ProceduresPayload } from "./types.js";

export interface ProceduresViewOptions {
  onJumpToMethod?: (method: MethodRef) => void;
}

// Every procedure the run entered, with its invocation count. Clicking
// a row jumps to the first invocation in the tree.
export function renderProcedures(
  payload: ProceduresPayload,
  options: ProceduresViewOptions = {},
): HTMLElement {
  const view = document.createElement("div");
  view.className = "procedures-view";
  for (const row of payload.procedures) {
    const el = document.createElement("div");
    el.className = "procedure-row";
    el.dataset.method = methodKey(row.method);

    const name = document.createElement("span");
    name.className = "row-label";
    name.textContent = methodKey(row.method);
    el.appendChild(name);

    const count = document.createElement("span");
    count.className = "hit-count";
    count.textContent = `×${row.count}`;
    el.appendChild(count);

    el.addEventListener("click", () => options.onJumpToMethod?.(row.method));
    view.appendChild(el);
  }
  return view;
}

export interface ProbeLogViewOptions {
  onSelectHit?: (seq: number) => void;
  onHoverHit?: (seq: number | null) => void;
}

// Chronological list of every probe hit in the run.
export function renderProbeLog(
  payload: ProbeLogPayload,
  options: ProbeLogViewOptions = {},
): HTMLElement {
  const view = document.createElement("div");
  view.className = "probe-log-view";
  for (const entry of payload.entries) {
    const el = document.createElement("div");
    el.className = "log-row";
    el.dataset.seq = String(entry.seq);

    const probe = document.createElement("span");
    probe.className = "probe-id";
    probe.textContent = entry.probe;
    el.appendChild(probe);

    if (entry.excerpt !== undefined) {
      const excerpt = document.createElement("span");
      excerpt.className = "probe-excerpt";
      excerpt.textContent = `[${entry.excerpt}]`;
      el.appendChild(excerpt);
    }

    const value = document.createElement("span");
    value.className = "value-text";
    value.textContent = `= ${formatValue(entry.value)}`;
    el.appendChild(value);

    el.addEventListener("click", () => options.onSelectHit?.(entry.seq));
    el.addEventListener("mouseenter", () => options.onHoverHit?.(entry.seq));
    el.addEventListener("mouseleave", () => options.onHoverHit?.(null));
    view.appendChild(el);
  }
  return view;
}

export function markHovered(view: HTMLElement, seq: number | null): void {
  for (const el of view.querySelectorAll(".log-row.hovered")) el.classList.remove("hovered");
  if (seq === null) return;
  const row = view.querySelector(`.log-row[data-seq="${seq}"]`);
  if (row) row.classList.add("hovered");
}
