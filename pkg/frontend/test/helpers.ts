import { readFileSync } from "node:fs";
import { resolve } from "node:path";

import type {
  AnnotationsPayload,
  CalleesPayload,
  DetailedPathsPayload,
  ExamplesPayload,
  ProbeLogPayload,
  ProbeValuesPayload,
  ProceduresPayload,
  SourcePayload,
  SuccessionPayload,
  SummarizedPathsPayload,
  TreePayload,
} from "../src/types.js";

// One fixture = every payload the server produced for one example run,
// captured verbatim by scripts/capture_fixtures.py.
export interface Fixture {
  example_id: string;
  probe_id: string;
  examples: ExamplesPayload;
  source: SourcePayload;
  tree: TreePayload;
  tree_filter_g: TreePayload;
  summarized: SummarizedPathsPayload;
  detailed: DetailedPathsPayload;
  values: ProbeValuesPayload;
  probe_log: ProbeLogPayload;
  procedures: ProceduresPayload;
  annotations: AnnotationsPayload;
  succession: Record<string, SuccessionPayload>;
  callees_root: CalleesPayload;
}

export const FIXTURE_NAMES = ["f1", "f2", "f3"] as const;

export function loadFixture(name: string): Fixture {
  const path = resolve(process.cwd(), "test", "fixtures", `${name}.json`);
  return JSON.parse(readFileSync(path, "utf-8")) as Fixture;
}

export function clone<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}

// Let queued microtasks (awaited fetches, promise callbacks) run.
export function tick(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

export function mount(el: HTMLElement): HTMLElement {
  document.body.appendChild(el);
  return el;
}

export function unmountAll(): void {
  document.body.textContent = "";
}
