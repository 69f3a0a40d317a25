import { afterEach, describe, expect, it, vi } from "vitest";

import { renderDetailedPaths, renderSummarizedPaths } from "../src/pathsView.js";
import type { DetailedPathsPayload } from "../src/types.js";
import { loadFixture, mount, unmountAll } from "./helpers.js";

afterEach(unmountAll);

describe("summarized paths", () => {
  it("renders one row per path with the server's color index", () => {
    const fixture = loadFixture("f2");
    const view = mount(renderSummarizedPaths(fixture.summarized));
    const rows = Array.from(view.querySelectorAll<HTMLElement>(".path-row"));
    expect(rows.length).toBe(fixture.summarized.paths.length);
    rows.forEach((row, i) => {
      expect(row.dataset.colorIndex).toBe(String(fixture.summarized.paths[i].color_index));
      expect(row.querySelector(".hit-count")!.textContent).toBe(
        `×${fixture.summarized.paths[i].hit_count}`,
      );
    });
  });

  it("tints exactly the common-ancestor prefix green", () => {
    for (const name of ["f2", "f3"] as const) {
      const fixture = loadFixture(name);
      const view = mount(renderSummarizedPaths(fixture.summarized));
      for (const row of view.querySelectorAll<HTMLElement>(".path-row")) {
        const steps = Array.from(row.querySelectorAll<HTMLElement>(".path-step"));
        const common = steps.filter((s) => s.classList.contains("common"));
        expect(common.length).toBe(fixture.summarized.common_ancestor_depth);
        // the prefix is a prefix: the first N steps, not any N steps
        steps.forEach((step, i) => {
          expect(step.classList.contains("common")).toBe(
            i < fixture.summarized.common_ancestor_depth,
          );
        });
      }
    }
  });

  it("spells the method chain root-first", () => {
    const fixture = loadFixture("f2");
    const view = mount(renderSummarizedPaths(fixture.summarized));
    const first = view.querySelector(".path-row")!;
    const labels = Array.from(first.querySelectorAll(".path-step")).map((s) => s.textContent);
    expect(labels).toEqual(fixture.summarized.paths[0].methods.map((m) => `${m.module}/${m.name}`));
    expect(labels[0]).toBe("m.cc/#ex1");
  });

  it("jumps to the path's first hit on click", () => {
    const fixture = loadFixture("f2");
    const onSelectSeq = vi.fn();
    const view = mount(renderSummarizedPaths(fixture.summarized, { onSelectSeq }));
    view.querySelectorAll<HTMLElement>(".path-row")[1].click();
    expect(onSelectSeq).toHaveBeenCalledWith(fixture.summarized.paths[1].first_seq);
  });
});

describe("detailed paths", () => {
  it("shows each route with frame ids and the terminal value", () => {
    const fixture = loadFixture("f1");
    const view = mount(renderDetailedPaths(fixture.detailed));
    const rows = Array.from(view.querySelectorAll<HTMLElement>(".path-row"));
    expect(rows.length).toBe(fixture.detailed.paths.length);

    const first = rows[0];
    const steps = Array.from(first.querySelectorAll(".path-step")).map((s) => s.textContent);
    expect(steps).toEqual(
      fixture.detailed.paths[0].frames.map((f) => `${f.method.module}/${f.method.name}[${f.frame}]`),
    );
    expect(first.querySelector(".path-terminal")!.textContent).toBe("= 6");
  });

  it("flags a path whose terminal invocation threw", () => {
    const payload: DetailedPathsPayload = {
      run_id: "r1",
      target: "method:m.cc/f",
      mode: "detailed",
      paths: [
        {
          frames: [
            { frame: 0, method: { module: "m.cc", name: "#e" } },
            { frame: 1, method: { module: "m.cc", name: "f" } },
          ],
          terminal_seq: 2,
          kind: "call",
          exit_kind: "exception",
          value: { code: 3 },
        },
      ],
    };
    const view = mount(renderDetailedPaths(payload));
    const row = view.querySelector<HTMLElement>(".path-row")!;
    expect(row.classList.contains("exception")).toBe(true);
    expect(row.querySelector(".path-terminal")!.textContent).toBe("!! {code: 3}");
  });

  it("selects the terminal node on click", () => {
    const fixture = loadFixture("f1");
    const onSelectSeq = vi.fn();
    const view = mount(renderDetailedPaths(fixture.detailed, { onSelectSeq }));
    view.querySelector<HTMLElement>(".path-row")!.click();
    expect(onSelectSeq).toHaveBeenCalledWith(fixture.detailed.paths[0].terminal_seq);
  });

  it("says so when no path reaches the target", () => {
    const view = mount(
      renderDetailedPaths({ run_id: "r1", target: "probe:x", mode: "detailed", paths: [] }),
    );
    expect(view.querySelector(".empty")!.textContent).toBe("no paths reach this target");
  });
});
