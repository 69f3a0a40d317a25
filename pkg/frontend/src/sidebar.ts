import { VIEW_KINDS, type ViewKind } from "./state.js";
import { methodKey } from "./types.js";
import type { AnnotationsPayload, ExamplesPayload, ProceduresPayload } from "./types.js";

export interface ExamplesPaneHandlers {
  onSelectExample?: (id: string) => void;
  onToggleActive?: (id: string, active: boolean) => void;
  onRerun?: (id: string) => void;
}

// Active examples pane: one row per example with its activation toggle,
// latest run status, and a rerun button. Broken modules are listed
// below so a parse error is never silent.
export function renderExamplesPane(
  payload: ExamplesPayload,
  selected: string | null,
  handlers: ExamplesPaneHandlers = {},
): HTMLElement {
  const pane = document.createElement("div");
  pane.className = "examples-pane";

  for (const example of payload.examples) {
    const row = document.createElement("div");
    row.className = "example-row";
    row.dataset.exampleId = example.id;
    if (example.id === selected) row.classList.add("selected");
    if (!example.active) row.classList.add("inactive");

    const toggle = document.createElement("input");
    toggle.type = "checkbox";
    toggle.className = "active-toggle";
    toggle.checked = example.active;
    toggle.addEventListener("click", (ev) => {
      ev.stopPropagation();
      handlers.onToggleActive?.(example.id, toggle.checked);
    });
    row.appendChild(toggle);

    const label = document.createElement("span");
    label.className = "row-label";
    label.textContent = example.id;
    row.appendChild(label);

    const status = document.createElement("span");
    status.className = "status";
    if (example.run) {
      status.textContent = example.run.stale ? `${example.run.status} (stale)` : example.run.status;
      status.classList.add(example.run.status);
      if (example.run.stale) status.classList.add("stale");
    } else {
      status.textContent = "—";
    }
    row.appendChild(status);

    const rerun = document.createElement("button");
    rerun.type = "button";
    rerun.className = "rerun";
    rerun.textContent = "run";
    rerun.addEventListener("click", (ev) => {
      ev.stopPropagation();
      handlers.onRerun?.(example.id);
    });
    row.appendChild(rerun);

    row.addEventListener("click", () => handlers.onSelectExample?.(example.id));
    pane.appendChild(row);
  }

  for (const [module, message] of Object.entries(payload.broken)) {
    const row = document.createElement("div");
    row.className = "broken-row";
    row.textContent = `${module}: ${message}`;
    pane.appendChild(row);
  }
  return pane;
}

export function renderViewSelector(
  current: ViewKind,
  onSelect: (view: ViewKind) => void,
): HTMLElement {
  const bar = document.createElement("div");
  bar.className = "view-selector";
  for (const view of VIEW_KINDS) {
    const tab = document.createElement("button");
    tab.type = "button";
    tab.className = "view-tab";
    tab.dataset.view = view;
    tab.textContent = view;
    if (view === current) tab.classList.add("selected");
    tab.addEventListener("click", () => onSelect(view));
    bar.appendChild(tab);
  }
  return bar;
}

// Target picker for the path views: probes first (with their source
// excerpt), then procedures. Values use the API's target syntax.
export function renderTargetSelect(
  annotations: AnnotationsPayload | null,
  procedures: ProceduresPayload | null,
  current: string | null,
  onSelect: (target: string | null) => void,
): HTMLSelectElement {
  const select = document.createElement("select");
  select.className = "target-select";

  const placeholder = document.createElement("option");
  placeholder.value = "";
  placeholder.textContent = "choose a target";
  select.appendChild(placeholder);

  if (annotations && annotations.annotations.length > 0) {
    const group = document.createElement("optgroup");
    group.label = "probes";
    for (const row of annotations.annotations) {
      const option = document.createElement("option");
      option.value = `probe:${row.probe}`;
      option.textContent =
        row.excerpt !== undefined ? `${row.probe} [${row.excerpt}]` : row.probe;
      group.appendChild(option);
    }
    select.appendChild(group);
  }

  if (procedures && procedures.procedures.length > 0) {
    const group = document.createElement("optgroup");
    group.label = "procedures";
    for (const row of procedures.procedures) {
      const option = document.createElement("option");
      option.value = `method:${methodKey(row.method)}`;
      option.textContent = methodKey(row.method);
      group.appendChild(option);
    }
    select.appendChild(group);
  }

  select.value = current ?? "";
  select.addEventListener("change", () => onSelect(select.value === "" ? null : select.value));
  return select;
}

export function renderFilterInput(
  query: string,
  onChange: (query: string) => void,
): HTMLInputElement {
  const input = document.createElement("input");
  input.type = "text";
  input.className = "filter-input";
  input.placeholder = "filter: method, probe id, or excerpt";
  input.value = query;
  input.addEventListener("input", () => onChange(input.value));
  return input;
}
