import { colorSwatch } from "./palette.js";
import { formatValue } from "./format.js";
import { methodKey } from "./types.js";
import type { DetailedPathsPayload, SummarizedPathsPayload } from "./types.js";

export interface PathsViewOptions {
  onSelectSeq?: (seq: number) => void;
}

// Summarized paths: one row per distinct call path, icon colored by the
// path's index, methods spelled root-first. The common-ancestor prefix
// (shared by every path) is tinted green to show where they diverge.
export function renderSummarizedPaths(
  payload: SummarizedPathsPayload,
  options: PathsViewOptions = {},
): HTMLElement {
  const view = document.createElement("div");
  view.className = "paths-view summarized";

  for (const path of payload.paths) {
    const row = document.createElement("div");
    row.className = "path-row";
    row.dataset.colorIndex = String(path.color_index);
    row.dataset.seqs = path.member_seqs.join(",");

    row.appendChild(colorSwatch(path.color_index, "path-icon"));

    const chain = document.createElement("span");
    chain.className = "path-chain";
    path.methods.forEach((method, i) => {
      if (i > 0) {
        const sep = document.createElement("span");
        sep.className = "path-sep";
        sep.textContent = " › ";
        chain.appendChild(sep);
      }
      const step = document.createElement("span");
      step.className = "path-step";
      if (i < payload.common_ancestor_depth) step.classList.add("common");
      step.textContent = methodKey(method);
      chain.appendChild(step);
    });
    row.appendChild(chain);

    const count = document.createElement("span");
    count.className = "hit-count";
    count.textContent = `×${path.hit_count}`;
    row.appendChild(count);

    row.addEventListener("click", () => options.onSelectSeq?.(path.first_seq));
    view.appendChild(row);
  }

  if (payload.paths.length === 0) {
    const empty = document.createElement("div");
    empty.className = "empty";
    empty.textContent = "no paths reach this target";
    view.appendChild(empty);
  }
  return view;
}

// Detailed paths: every individual route through the call tree, frame
// ids included, ending at the probe hit or invocation it reached.
export function renderDetailedPaths(
  payload: DetailedPathsPayload,
  options: PathsViewOptions = {},
): HTMLElement {
  const view = document.createElement("div");
  view.className = "paths-view detailed";

  for (const path of payload.paths) {
    const row = document.createElement("div");
    row.className = "path-row";
    row.dataset.seq = String(path.terminal_seq);

    const chain = document.createElement("span");
    chain.className = "path-chain";
    path.frames.forEach((entry, i) => {
      if (i > 0) {
        const sep = document.createElement("span");
        sep.className = "path-sep";
        sep.textContent = " › ";
        chain.appendChild(sep);
      }
      const step = document.createElement("span");
      step.className = "path-step";
      step.textContent = `${methodKey(entry.method)}[${entry.frame}]`;
      chain.appendChild(step);
    });
    row.appendChild(chain);

    const terminal = document.createElement("span");
    terminal.className = "path-terminal";
    if (path.kind === "probe") {
      terminal.textContent = `= ${formatValue(path.value, 30)}`;
    } else if (path.exit_kind === "exception") {
      row.classList.add("exception");
      terminal.textContent = `!! ${formatValue(path.value, 30)}`;
    } else {
      terminal.textContent = `→ ${formatValue(path.value, 30)}`;
    }
    row.appendChild(terminal);

    row.addEventListener("click", () => options.onSelectSeq?.(path.terminal_seq));
    view.appendChild(row);
  }

  if (payload.paths.length === 0) {
    const empty = document.createElement("div");
    empty.className = "empty";
    empty.textContent = "no paths reach this target";
    view.appendChild(empty);
  }
  return view;
}
