import { afterEach, describe, expect, it, vi } from "vitest";

import { markSelection, renderCodeView } from "../src/codeView.js";
import type { ProbeValueEntry, SourcePayload } from "../src/types.js";
import { loadFixture, mount, tick, unmountAll } from "./helpers.js";

afterEach(unmountAll);

const PLAIN_SOURCE: SourcePayload = {
  module: "m.cc",
  text: "fn g(x){ return @{ x * 2 }; }\nfn f(a){ return g(a); }",
  probes: [
    {
      probe: "m.cc:1:17",
      line: 1,
      col: 17,
      end_line: 1,
      end_col: 27,
      excerpt: "x * 2",
      method: { module: "m.cc", name: "g" },
    },
  ],
  functions: [
    { name: "g", line: 1, col: 1 },
    { name: "f", line: 2, col: 1 },
  ],
  examples: [],
};

function entries(n: number): ProbeValueEntry[] {
  return Array.from({ length: n }, (_, i) => ({
    value: i,
    seq: i + 1,
    path_color_index: 0,
  }));
}

describe("code layout", () => {
  it("renders every source line read-only with its gutter number", () => {
    const view = mount(renderCodeView({ source: PLAIN_SOURCE, valuesByProbe: {} }));
    const lines = Array.from(view.querySelectorAll(".code-line"));
    expect(lines.length).toBe(2);
    expect(lines[0].querySelector(".line-no")!.textContent).toBe("1");
    expect(lines[0].querySelector(".line-text")!.textContent).toBe(
      "fn g(x){ return @{ x * 2 }; }",
    );
    expect(view.querySelector("input, textarea, [contenteditable]")).toBeNull();
  });

  it("anchors the probe widget to the probe's line", () => {
    const view = mount(renderCodeView({ source: PLAIN_SOURCE, valuesByProbe: {} }));
    const widget = view.querySelector<HTMLElement>(".probe-widget")!;
    expect(widget.closest(".code-line")!.getAttribute("data-line")).toBe("1");
    expect(widget.dataset.probe).toBe("m.cc:1:17");
  });

  it("shows a badge when a probe recorded no hits", () => {
    const view = mount(renderCodeView({ source: PLAIN_SOURCE, valuesByProbe: {} }));
    expect(view.querySelector(".badge.no-hits")!.textContent).toBe("no hits");
    expect(view.querySelector(".probe-value")).toBeNull();
  });
});

describe("value chips", () => {
  it("lists values in seq order", () => {
    const fixture = loadFixture("f2");
    const view = mount(
      renderCodeView({
        source: fixture.source,
        valuesByProbe: { [fixture.probe_id]: fixture.values.values },
      }),
    );
    const seqs = Array.from(view.querySelectorAll<HTMLElement>(".probe-value")).map((chip) =>
      Number(chip.dataset.seq),
    );
    expect(seqs).toEqual(fixture.values.values.map((v) => v.seq));
    expect([...seqs].sort((a, b) => a - b)).toEqual(seqs);
  });

  it("pages long value lists 50 at a time", () => {
    const view = mount(
      renderCodeView({
        source: PLAIN_SOURCE,
        valuesByProbe: { "m.cc:1:17": entries(120) },
      }),
    );
    const shown = () => view.querySelectorAll(".probe-value").length;
    const more = () => view.querySelector<HTMLElement>(".show-more");

    expect(shown()).toBe(50);
    expect(more()!.textContent).toBe("show more (70)");
    more()!.click();
    expect(shown()).toBe(100);
    expect(more()!.textContent).toBe("show more (20)");
    more()!.click();
    expect(shown()).toBe(120);
    expect(more()).toBeNull();
  });

  it("selects a hit on click and on context menu", () => {
    const fixture = loadFixture("f2");
    const onSelectHit = vi.fn();
    const view = mount(
      renderCodeView({
        source: fixture.source,
        valuesByProbe: { [fixture.probe_id]: fixture.values.values },
        onSelectHit,
      }),
    );
    const chip = view.querySelector<HTMLElement>('.probe-value[data-seq="9"]')!;
    chip.click();
    expect(onSelectHit).toHaveBeenLastCalledWith(9);
    chip.dispatchEvent(new MouseEvent("contextmenu", { bubbles: true, cancelable: true }));
    expect(onSelectHit).toHaveBeenLastCalledWith(9);
    expect(onSelectHit).toHaveBeenCalledTimes(2);
  });

  it("opens the inspector callback on double click", () => {
    const fixture = loadFixture("f2");
    const onInspectValue = vi.fn();
    const view = mount(
      renderCodeView({
        source: fixture.source,
        valuesByProbe: { [fixture.probe_id]: fixture.values.values },
        onInspectValue,
      }),
    );
    view
      .querySelector<HTMLElement>('.probe-value[data-seq="4"]')!
      .dispatchEvent(new MouseEvent("dblclick", { bubbles: true }));
    expect(onInspectValue).toHaveBeenCalledWith(
      fixture.probe_id,
      expect.objectContaining({ seq: 4, value: 6 }),
    );
  });

  it("marks and clears the selected chip", () => {
    const fixture = loadFixture("f2");
    const view = mount(
      renderCodeView({
        source: fixture.source,
        valuesByProbe: { [fixture.probe_id]: fixture.values.values },
      }),
    );
    markSelection(view, 9);
    expect(view.querySelector<HTMLElement>(".probe-value.selected")!.dataset.seq).toBe("9");
    markSelection(view, 13);
    const selected = view.querySelectorAll<HTMLElement>(".probe-value.selected");
    expect(selected.length).toBe(1);
    expect(selected[0].dataset.seq).toBe("13");
    markSelection(view, null);
    expect(view.querySelector(".probe-value.selected")).toBeNull();
  });
});

describe("succession arrows", () => {
  it("shows prev and next arrows while hovering a value", async () => {
    const fixture = loadFixture("f2");
    const onSelectHit = vi.fn();
    const view = mount(
      renderCodeView({
        source: fixture.source,
        valuesByProbe: { [fixture.probe_id]: fixture.values.values },
        getSuccession: (seq) => Promise.resolve(fixture.succession[String(seq)]),
        onSelectHit,
      }),
    );
    const chip = view.querySelector<HTMLElement>('.probe-value[data-seq="9"]')!;
    chip.dispatchEvent(new Event("mouseenter"));
    await tick();

    const prev = chip.querySelector<HTMLElement>(".succ-arrow.prev")!;
    const next = chip.querySelector<HTMLElement>(".succ-arrow.next")!;
    expect(prev.dataset.targetSeq).toBe("4");
    expect(next.dataset.targetSeq).toBe("13");

    next.click();
    expect(onSelectHit).toHaveBeenCalledWith(13);

    chip.dispatchEvent(new Event("mouseleave"));
    expect(chip.querySelector(".succ-arrow")).toBeNull();
  });

  it("omits the prev arrow on the first value of the method", async () => {
    const fixture = loadFixture("f2");
    const view = mount(
      renderCodeView({
        source: fixture.source,
        valuesByProbe: { [fixture.probe_id]: fixture.values.values },
        getSuccession: (seq) => Promise.resolve(fixture.succession[String(seq)]),
      }),
    );
    const chip = view.querySelector<HTMLElement>('.probe-value[data-seq="4"]')!;
    chip.dispatchEvent(new Event("mouseenter"));
    await tick();
    expect(chip.querySelector(".succ-arrow.prev")).toBeNull();
    expect(chip.querySelector<HTMLElement>(".succ-arrow.next")!.dataset.targetSeq).toBe("9");
  });

  it("drops a succession reply that lands after the pointer left", async () => {
    const fixture = loadFixture("f2");
    let release: (() => void) | null = null;
    const view = mount(
      renderCodeView({
        source: fixture.source,
        valuesByProbe: { [fixture.probe_id]: fixture.values.values },
        getSuccession: (seq) =>
          new Promise((resolve) => {
            release = () => resolve(fixture.succession[String(seq)]);
          }),
      }),
    );
    const chip = view.querySelector<HTMLElement>('.probe-value[data-seq="9"]')!;
    chip.dispatchEvent(new Event("mouseenter"));
    chip.dispatchEvent(new Event("mouseleave"));
    release!();
    await tick();
    expect(chip.querySelector(".succ-arrow")).toBeNull();
  });
});
