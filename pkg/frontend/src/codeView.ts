import { colorSwatch } from "./palette.js";
import { formatValue } from "./format.js";
import type { ProbeValueEntry, SourcePayload, SuccessionPayload } from "./types.js";

export const VALUE_PAGE_SIZE = 50;

export interface CodeViewOptions {
  source: SourcePayload;
  valuesByProbe: Record<string, ProbeValueEntry[]>;
  pageSize?: number;
  getSuccession?: (seq: number) => Promise<SuccessionPayload>;
  onSelectHit?: (seq: number) => void;
  onInspectValue?: (probeId: string, entry: ProbeValueEntry) => void;
  onHoverHit?: (seq: number | null) => void;
}

// The code pane is read-only: each source line gets a gutter number and
// its text, and lines holding a probe get a widget appended that shows
// the recorded values in seq order, one chip per value, with the chip's
// bar colored by the value's path color index.
export function renderCodeView(options: CodeViewOptions): HTMLElement {
  const view = document.createElement("div");
  view.className = "code-view";
  view.dataset.module = options.source.module;

  const byLine = new Map<number, SourcePayload["probes"]>();
  for (const probe of options.source.probes) {
    const list = byLine.get(probe.line) ?? [];
    list.push(probe);
    byLine.set(probe.line, list);
  }
  for (const list of byLine.values()) list.sort((a, b) => a.col - b.col);

  const lines = options.source.text.split("\n");
  lines.forEach((text, i) => {
    const lineNo = i + 1;
    const row = document.createElement("div");
    row.className = "code-line";
    row.dataset.line = String(lineNo);

    const gutter = document.createElement("span");
    gutter.className = "line-no";
    gutter.textContent = String(lineNo);
    row.appendChild(gutter);

    const code = document.createElement("span");
    code.className = "line-text";
    code.textContent = text;
    row.appendChild(code);

    for (const probe of byLine.get(lineNo) ?? []) {
      row.appendChild(
        renderProbeWidget(probe.probe, options.valuesByProbe[probe.probe] ?? [], options),
      );
    }
    view.appendChild(row);
  });
  return view;
}

function renderProbeWidget(
  probeId: string,
  values: ProbeValueEntry[],
  options: CodeViewOptions,
): HTMLElement {
  const widget = document.createElement("span");
  widget.className = "probe-widget";
  widget.dataset.probe = probeId;

  if (values.length === 0) {
    const badge = document.createElement("span");
    badge.className = "badge no-hits";
    badge.textContent = "no hits";
    widget.appendChild(badge);
    return widget;
  }

  const pageSize = options.pageSize ?? VALUE_PAGE_SIZE;
  let shown = 0;

  const showPage = () => {
    const next = values.slice(shown, shown + pageSize);
    for (const entry of next) {
      widget.insertBefore(renderValueChip(probeId, entry, options), more);
    }
    shown += next.length;
    if (shown >= values.length) {
      more.remove();
    } else {
      more.textContent = `show more (${values.length - shown})`;
    }
  };

  const more = document.createElement("button");
  more.type = "button";
  more.className = "show-more";
  more.addEventListener("click", showPage);
  widget.appendChild(more);
  showPage();
  return widget;
}

let hoverTicket = 0;

function renderValueChip(
  probeId: string,
  entry: ProbeValueEntry,
  options: CodeViewOptions,
): HTMLElement {
  const chip = document.createElement("span");
  chip.className = "probe-value";
  chip.dataset.seq = String(entry.seq);
  if (entry.path_color_index !== null) {
    chip.dataset.colorIndex = String(entry.path_color_index);
    chip.appendChild(colorSwatch(entry.path_color_index, "value-bar"));
  }

  const text = document.createElement("span");
  text.className = "value-text";
  text.textContent = formatValue(entry.value);
  chip.appendChild(text);

  chip.addEventListener("click", () => options.onSelectHit?.(entry.seq));
  chip.addEventListener("contextmenu", (ev) => {
    ev.preventDefault();
    options.onSelectHit?.(entry.seq);
  });
  chip.addEventListener("dblclick", () => options.onInspectValue?.(probeId, entry));

  chip.addEventListener("mouseenter", () => {
    chip.classList.add("hovered");
    options.onHoverHit?.(entry.seq);
    const provider = options.getSuccession;
    if (!provider) return;
    hoverTicket += 1;
    const ticket = hoverTicket;
    provider(entry.seq).then(
      (succession) => {
        if (ticket !== hoverTicket || !chip.classList.contains("hovered")) return;
        attachArrows(chip, succession, options);
      },
      () => {},
    );
  });
  chip.addEventListener("mouseleave", () => {
    chip.classList.remove("hovered");
    options.onHoverHit?.(null);
    for (const arrow of chip.querySelectorAll(".succ-arrow")) arrow.remove();
  });
  return chip;
}

// Succession arrows point at the previous and next value this probe's
// method produced, which may live under a different invocation.
function attachArrows(
  chip: HTMLElement,
  succession: SuccessionPayload,
  options: CodeViewOptions,
): void {
  for (const arrow of chip.querySelectorAll(".succ-arrow")) arrow.remove();
  const make = (cls: "prev" | "next", seq: number, label: string) => {
    const arrow = document.createElement("button");
    arrow.type = "button";
    arrow.className = `succ-arrow ${cls}`;
    arrow.dataset.targetSeq = String(seq);
    arrow.textContent = label;
    arrow.addEventListener("click", (ev) => {
      ev.stopPropagation();
      options.onSelectHit?.(seq);
    });
    return arrow;
  };
  if (succession.prev) chip.prepend(make("prev", succession.prev.seq, "←"));
  if (succession.next) chip.appendChild(make("next", succession.next.seq, "→"));
}

export function markSelection(view: HTMLElement, seq: number | null): void {
  for (const el of view.querySelectorAll(".probe-value.selected")) el.classList.remove("selected");
  if (seq === null) return;
  const chip = view.querySelector(`.probe-value[data-seq="${seq}"]`);
  if (chip) chip.classList.add("selected");
}

export function scrollToLine(view: HTMLElement, line: number): void {
  const row = view.querySelector<HTMLElement>(`.code-line[data-line="${line}"]`);
  if (!row) return;
  row.scrollIntoView({ block: "center" });
  row.classList.add("flash");
  setTimeout(() => row.classList.remove("flash"), 600);
}
